//! Parameter grids for time-step scans.

use crate::AnalysisError;

/// `n` logarithmically equispaced values from `lo` to `hi` (both included).
pub fn log_space(lo: f64, hi: f64, n: usize) -> Vec<f64> {
    match n {
        0 => Vec::new(),
        1 => vec![hi],
        _ => {
            let (a, b) = (lo.ln(), hi.ln());
            (0..n)
                .map(|k| match k {
                    0 => lo,
                    k if k + 1 == n => hi,
                    k => (a + (b - a) * k as f64 / (n - 1) as f64).exp(),
                })
                .collect()
        }
    }
}

/// The `(ε, θ, Δt)` values visited by [`crate::dt_bound_scan`].
#[derive(Debug, Clone, PartialEq)]
pub struct ScanGrid {
    /// Initial values `ε` of the second component, increasing, in `(0, 1)`.
    pub eps_values: Vec<f64>,
    /// System parameters `θ`, increasing, in `(0, 1)`.
    pub theta_values: Vec<f64>,
    /// Time steps, increasing and positive.
    pub dt_values: Vec<f64>,
}

impl Default for ScanGrid {
    /// `ε, θ ∈ [10⁻⁸, ½]` with 25 points each (θ mirrored to `1 − θ`) and
    /// `Δt = 2^{k/16}`, `k = −96, …, 96`.
    fn default() -> Self {
        Self::new(1e-8, 25, 1e-8, 25, 2f64.powi(-6), 2f64.powi(6), 16).expect("default grid is valid")
    }
}

impl ScanGrid {
    /// Builds a grid from ranges.
    ///
    /// `ε` takes `eps_points` log-spaced values in `[eps_min, ½]`; `θ` takes
    /// `theta_points` log-spaced values in `[theta_min, ½]` together with their
    /// mirrors `1 − θ` (the value `½` appears once); `Δt` runs over
    /// `dt_min · 2^{k/per_octave}` up to `dt_max`.
    pub fn new(
        eps_min: f64,
        eps_points: usize,
        theta_min: f64,
        theta_points: usize,
        dt_min: f64,
        dt_max: f64,
        dt_per_octave: usize,
    ) -> Result<Self, AnalysisError> {
        if !(eps_min > 0.0 && eps_min <= 0.5) || !(theta_min > 0.0 && theta_min <= 0.5) {
            return Err(AnalysisError::InvalidInput(format!(
                "eps-min and theta-min must lie in (0, 0.5], got {eps_min} and {theta_min}"
            )));
        }
        if eps_points == 0 || theta_points == 0 || dt_per_octave == 0 {
            return Err(AnalysisError::InvalidInput("grid point counts must be positive".into()));
        }
        if !(dt_min > 0.0 && dt_max >= dt_min && dt_max.is_finite()) {
            return Err(AnalysisError::InvalidInput(format!(
                "need 0 < dt-min ≤ dt-max, got {dt_min} and {dt_max}"
            )));
        }
        let eps_values = log_space(eps_min, 0.5, eps_points);
        let half = log_space(theta_min, 0.5, theta_points);
        let mut theta_values = half.clone();
        theta_values.extend(half.iter().rev().filter(|&&t| t < 0.5).map(|t| 1.0 - t));
        let octaves = (dt_max / dt_min).log2();
        let steps = (octaves * dt_per_octave as f64 + 1e-9).floor() as i64;
        let dt_values = (0..=steps)
            .map(|k| dt_min * 2f64.powf(k as f64 / dt_per_octave as f64))
            .collect();
        let grid = Self {
            eps_values,
            theta_values,
            dt_values,
        };
        grid.validate()?;
        Ok(grid)
    }

    /// Checks that every list is strictly increasing and within range.
    pub fn validate(&self) -> Result<(), AnalysisError> {
        let increasing = |v: &[f64]| v.windows(2).all(|w| w[0] < w[1]);
        let unit = |v: &[f64]| v.iter().all(|&x| x > 0.0 && x < 1.0);
        if self.eps_values.is_empty() || self.theta_values.is_empty() || self.dt_values.is_empty() {
            return Err(AnalysisError::InvalidInput("scan grid has an empty axis".into()));
        }
        if !increasing(&self.eps_values) || !unit(&self.eps_values) {
            return Err(AnalysisError::InvalidInput("eps values must increase within (0, 1)".into()));
        }
        if !increasing(&self.theta_values) || !unit(&self.theta_values) {
            return Err(AnalysisError::InvalidInput("theta values must increase within (0, 1)".into()));
        }
        if !increasing(&self.dt_values) || !self.dt_values.iter().all(|&d| d > 0.0 && d.is_finite()) {
            return Err(AnalysisError::InvalidInput("dt values must be positive and increasing".into()));
        }
        Ok(())
    }

    /// Number of `(ε, θ)` systems per time step.
    pub fn systems_per_dt(&self) -> usize {
        self.eps_values.len() * self.theta_values.len()
    }
}
