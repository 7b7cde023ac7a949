//! Helpers for the acceptance run: verdict lines and comparison metrics.
//!
//! The run itself lives in `tests/acceptance.rs` and is started with
//! `cargo test -p acceptance --test acceptance`. Each criterion prints one
//! `PASS` or `FAIL` line followed by indented detail lines.

use std::fmt::Write as _;
use std::time::Instant;

/// Relative deviation `|got − want| / |want|`.
pub fn relative_deviation(got: f64, want: f64) -> f64 {
    (got - want).abs() / want.abs()
}

/// Number of significant digits to which `got` agrees with `reference`,
/// `−log₁₀(|got − reference| / |reference|)`; `+∞` for identical values.
pub fn significant_digits(got: f64, reference: f64) -> f64 {
    let rel = relative_deviation(got, reference);
    if rel == 0.0 {
        f64::INFINITY
    } else {
        -rel.log10()
    }
}

/// Outcome of one criterion: a verdict, a headline and detail lines.
#[derive(Debug)]
pub struct Criterion {
    number: usize,
    title: String,
    pass: bool,
    details: Vec<String>,
    started: Instant,
}

impl Criterion {
    /// Starts criterion `number`; it passes until a check fails.
    pub fn new(number: usize, title: impl Into<String>) -> Self {
        Self {
            number,
            title: title.into(),
            pass: true,
            details: Vec::new(),
            started: Instant::now(),
        }
    }

    /// Records one check with its description.
    pub fn check(&mut self, ok: bool, detail: impl Into<String>) -> bool {
        let detail = detail.into();
        self.details.push(format!("{} {detail}", if ok { "ok  " } else { "MISS" }));
        self.pass &= ok;
        ok
    }

    /// Records an explanatory note that does not affect the verdict.
    pub fn note(&mut self, text: impl Into<String>) {
        self.details.push(format!("note {}", text.into()));
    }

    /// Whether every check so far passed.
    pub fn passed(&self) -> bool {
        self.pass
    }

    /// The verdict line followed by the indented details.
    pub fn render(&self) -> String {
        let mut out = format!(
            "{} criterion {:>2}: {} ({:.1} s)\n",
            if self.pass { "PASS" } else { "FAIL" },
            self.number,
            self.title,
            self.started.elapsed().as_secs_f64()
        );
        for d in &self.details {
            let _ = writeln!(out, "      {d}");
        }
        out
    }
}
