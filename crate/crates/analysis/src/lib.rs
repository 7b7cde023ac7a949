//! Diagnostics for positivity-preserving integrators.
//!
//! Everything here is built on the linear exchange problem
//! `u₁ ⇄ u₂` with parameter `θ` and initial value `(1 − ε, ε)`:
//!
//! * [`oscillation_measure`] quantifies how far one step moves in the wrong
//!   direction or past the steady state;
//! * [`dt_bound_scan`] finds the largest time step on a grid for which one
//!   step is oscillation-free for every `(ε, θ)` of a [`ScanGrid`];
//! * [`convergence_study`] estimates the observed order of accuracy;
//! * [`vanishing_ic_probe`] detects the collapse to first order when a
//!   component starts at (almost) zero;
//! * [`direction_check`] tests whether the first step moves towards the
//!   steady state, and [`direction_scan`] repeats it over a whole grid;
//! * [`scalar_cfl_scan`] measures steady-state overshoot on the scalar
//!   nonlinear problem.

mod convergence;
mod direction;
mod grid;
mod measure;
mod method;
mod polynomial;
mod probe;
mod scalar;
mod scan;

pub use convergence::{convergence_study, least_squares_slope, OrderEstimate, ERROR_FLOOR};
pub use direction::{direction_check, direction_scan, DirectionSummary};
pub use grid::{log_space, ScanGrid};
pub use measure::oscillation_measure;
pub use method::OneStepMethod;
pub use polynomial::{mprk22_overshoot_polynomial, mprk22_overshoot_root, mprk22_first_step_u2};
pub use probe::{vanishing_ic_probe, IcClass, ProbeResult, PROBE_DT, PROBE_EPS, PROBE_THRESHOLD};
pub use scalar::{scalar_cfl_scan, CflRecord};
pub use scan::{dt_bound_scan, DtBound, DtRecord, ScanResult, SCAN_TOLERANCE};

use schemes::SchemeError;

/// Errors raised by the diagnostics.
#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum AnalysisError {
    /// An input (grid, step list, parameter) is invalid.
    #[error("invalid input: {0}")]
    InvalidInput(String),
    /// The integrator failed.
    #[error(transparent)]
    Scheme(#[from] SchemeError),
    /// A problem could not be constructed.
    #[error(transparent)]
    Problem(#[from] problems::ProblemError),
}
