//! First-step direction check.

use rayon::prelude::*;

use crate::{AnalysisError, OneStepMethod, ScanGrid};

/// Outcome of [`direction_scan`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DirectionSummary {
    /// Number of `(θ, ε, Δt)` points checked (points with `ε = θ` included).
    pub points: usize,
    /// Number of points where the first step moves away from the steady state.
    pub failures: usize,
    /// The first failing point `(θ, ε, Δt)` in grid order (`Δt`, then `θ`, then `ε`).
    pub first_failure: Option<(f64, f64, f64)>,
}

impl DirectionSummary {
    /// True when every point moves towards the steady state.
    pub fn all_correct(&self) -> bool {
        self.failures == 0
    }
}

/// Runs [`direction_check`] on every point of `grid`.
///
/// Time steps are processed in parallel; the summary does not depend on the
/// number of worker threads. A step that fails numerically is an error.
pub fn direction_scan(method: &OneStepMethod, grid: &ScanGrid) -> Result<DirectionSummary, AnalysisError> {
    grid.validate()?;
    let per_dt: Vec<(usize, Option<(f64, f64, f64)>)> = grid
        .dt_values
        .par_iter()
        .map(|&dt| {
            let mut failures = 0;
            let mut first = None;
            for &theta in &grid.theta_values {
                for &eps in &grid.eps_values {
                    if !direction_check(method, eps, theta, dt)? {
                        failures += 1;
                        first.get_or_insert((theta, eps, dt));
                    }
                }
            }
            Ok((failures, first))
        })
        .collect::<Result<_, AnalysisError>>()?;
    Ok(DirectionSummary {
        points: grid.dt_values.len() * grid.systems_per_dt(),
        failures: per_dt.iter().map(|p| p.0).sum(),
        first_failure: per_dt.iter().find_map(|p| p.1),
    })
}

/// Whether one step from `(1 − ε, ε)` moves towards the steady state `(1 − θ, θ)`.
///
/// For `ε < θ` the second component must grow and the first shrink
/// (`u₂¹ > ε`, `u₁¹ < 1 − ε`); for `ε > θ` the inequalities are reversed; at
/// `ε = θ` the initial state is the steady state and the check is vacuous.
pub fn direction_check(method: &OneStepMethod, eps: f64, theta: f64, dt: f64) -> Result<bool, AnalysisError> {
    if eps == theta {
        return Ok(true);
    }
    let u = method.linear_step(theta, eps, dt)?;
    Ok(if eps < theta {
        u[1] > eps && u[0] < 1.0 - eps
    } else {
        u[1] < eps && u[0] > 1.0 - eps
    })
}
