//! Steady-state overshoot on the scalar nonlinear problem.

use problems::{scalar_nonlinear, ScalarProblemSpec};
use schemes::Scheme;

use crate::AnalysisError;

/// Overshoot of one CFL run.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CflRecord {
    /// CFL number.
    pub cfl: f64,
    /// Time step `CFL / C(k)`.
    pub dt: f64,
    /// Number of steps taken (the last one shortened to land on the final time).
    pub steps: usize,
    /// Largest undershoot `(u∞ − uⁿ)⁺` along the trajectory.
    pub measure: f64,
    /// Undershoot after the first step alone.
    pub first_step_measure: f64,
}

/// Integrates `u' = −k|u|u + 1` from `1.1 u∞` to `t = 0.15` for each CFL number
/// and records how far the solution drops below the steady state `u∞`.
pub fn scalar_cfl_scan(scheme: &Scheme, k: f64, cfls: &[f64]) -> Result<Vec<CflRecord>, AnalysisError> {
    let spec = ScalarProblemSpec::new(k)?;
    let pb = scalar_nonlinear(spec);
    let us = spec.steady_state();
    let t_end = ScalarProblemSpec::T_END;
    cfls.iter()
        .map(|&cfl| {
            if !(cfl > 0.0 && cfl.is_finite()) {
                return Err(AnalysisError::InvalidInput(format!("CFL must be positive, got {cfl}")));
            }
            let dt = spec.dt_for_cfl(cfl);
            let steps = ((t_end / dt) - 1e-12).ceil().max(1.0) as usize;
            let mut u = pb.initial.clone();
            let mut t = 0.0;
            let mut measure = 0.0_f64;
            let mut first = 0.0;
            for n in 0..steps {
                let h = dt.min(t_end - t);
                u = scheme.advance(&pb.system, &u, h)?;
                t = if n + 1 == steps { t_end } else { t + h };
                let m = (us - u[0]).max(0.0);
                if n == 0 {
                    first = m;
                }
                measure = measure.max(m);
            }
            Ok(CflRecord {
                cfl,
                dt,
                steps,
                measure,
                first_step_measure: first,
            })
        })
        .collect()
}
