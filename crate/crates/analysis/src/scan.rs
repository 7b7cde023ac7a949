//! Grid scan for the largest oscillation-free time step.

use std::fmt;

use rayon::prelude::*;

use crate::{oscillation_measure, AnalysisError, OneStepMethod, ScanGrid};

/// Measures at or below this value count as oscillation-free (five ulps at 1).
pub const SCAN_TOLERANCE: f64 = 5.0 * f64::EPSILON;

/// Worst oscillation over all `(ε, θ)` for one time step.
#[derive(Debug, Clone, PartialEq)]
pub struct DtRecord {
    /// Time step.
    pub dt: f64,
    /// Largest oscillation measure (`+∞` if a step failed).
    pub worst_measure: f64,
    /// `ε` at which the worst measure occurred (first in grid order on ties).
    pub worst_eps: f64,
    /// `θ` at which the worst measure occurred.
    pub worst_theta: f64,
    /// Number of `(ε, θ)` systems whose step failed numerically.
    pub failures: usize,
    /// Worst measure over `ε` for each `θ` of the grid, in grid order.
    pub worst_by_theta: Vec<f64>,
}

impl DtRecord {
    /// Whether this time step is oscillation-free on the whole grid.
    pub fn passes(&self, tolerance: f64) -> bool {
        self.worst_measure <= tolerance
    }
}

/// The largest grid step below which every step is oscillation-free.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum DtBound {
    /// Even the smallest grid step oscillates.
    BelowGrid,
    /// All grid steps up to and including this one pass; the next one fails.
    Finite(f64),
    /// Every grid step passes.
    Unbounded,
}

impl DtBound {
    /// The bound as a number: `0` below the grid and `+∞` when unbounded.
    pub fn value(&self) -> f64 {
        match self {
            DtBound::BelowGrid => 0.0,
            DtBound::Finite(v) => *v,
            DtBound::Unbounded => f64::INFINITY,
        }
    }

    /// Longest passing prefix of a sequence of pass/fail flags over increasing steps.
    pub fn from_prefix<I: IntoIterator<Item = (f64, bool)>>(steps: I) -> Self {
        let mut last = None;
        for (dt, ok) in steps {
            if !ok {
                return match last {
                    None => DtBound::BelowGrid,
                    Some(v) => DtBound::Finite(v),
                };
            }
            last = Some(dt);
        }
        match last {
            None => DtBound::BelowGrid,
            Some(_) => DtBound::Unbounded,
        }
    }
}

impl fmt::Display for DtBound {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            DtBound::BelowGrid => f.write_str("below-grid"),
            DtBound::Finite(v) => write!(f, "{v:.16e}"),
            DtBound::Unbounded => f.write_str("inf"),
        }
    }
}

/// Outcome of [`dt_bound_scan`].
#[derive(Debug, Clone, PartialEq)]
pub struct ScanResult {
    /// Canonical name of the scanned method.
    pub method: String,
    /// One record per grid time step, in increasing `Δt`.
    pub records: Vec<DtRecord>,
    /// The `θ` values of the grid (index set of [`DtRecord::worst_by_theta`]).
    pub theta_values: Vec<f64>,
    /// Largest oscillation-free prefix of the time-step grid.
    pub dt_bound: DtBound,
    /// Pass/fail tolerance on the measure.
    pub tolerance: f64,
}

impl ScanResult {
    /// The bound restricted to systems with a single `θ` (index into `theta_values`).
    pub fn bound_for_theta(&self, theta_index: usize) -> DtBound {
        DtBound::from_prefix(
            self.records
                .iter()
                .map(|r| (r.dt, r.worst_by_theta[theta_index] <= self.tolerance)),
        )
    }
}

/// Scans every `(ε, θ, Δt)` of `grid`, taking one step of the linear exchange
/// problem from `(1 − ε, ε)` and measuring the oscillation of the first
/// component with respect to its steady value `1 − θ`.
///
/// Time steps are processed in parallel; the result does not depend on the
/// number of worker threads. Steps that fail numerically count as oscillating.
pub fn dt_bound_scan(method: &OneStepMethod, grid: &ScanGrid) -> Result<ScanResult, AnalysisError> {
    grid.validate()?;
    let records: Vec<DtRecord> = grid
        .dt_values
        .par_iter()
        .map(|&dt| scan_one_dt(method, grid, dt))
        .collect();
    let dt_bound = DtBound::from_prefix(records.iter().map(|r| (r.dt, r.passes(SCAN_TOLERANCE))));
    Ok(ScanResult {
        method: method.to_string(),
        records,
        theta_values: grid.theta_values.clone(),
        dt_bound,
        tolerance: SCAN_TOLERANCE,
    })
}

fn scan_one_dt(method: &OneStepMethod, grid: &ScanGrid, dt: f64) -> DtRecord {
    let mut rec = DtRecord {
        dt,
        worst_measure: 0.0,
        worst_eps: grid.eps_values[0],
        worst_theta: grid.theta_values[0],
        failures: 0,
        worst_by_theta: vec![0.0; grid.theta_values.len()],
    };
    for (ti, &theta) in grid.theta_values.iter().enumerate() {
        for &eps in &grid.eps_values {
            let m = match method.linear_step(theta, eps, dt) {
                Ok(u) if u[0].is_finite() => oscillation_measure(1.0 - eps, u[0], 1.0 - theta),
                _ => {
                    rec.failures += 1;
                    f64::INFINITY
                }
            };
            if m > rec.worst_by_theta[ti] {
                rec.worst_by_theta[ti] = m;
            }
            if m > rec.worst_measure {
                rec.worst_measure = m;
                rec.worst_eps = eps;
                rec.worst_theta = theta;
            }
        }
    }
    rec
}
