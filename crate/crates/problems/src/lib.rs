//! Benchmark production–destruction systems.
//!
//! * [`linear2x2`]: the two-species exchange `u₁ ⇄ u₂` with rates `θ` and
//!   `1 − θ`, its exact solution and the diagonalised component `v₁`;
//! * [`scalar_nonlinear`]: `u' = −k|u|u + 1` with a diagonal destruction and a
//!   constant rest term;
//! * [`robertson`]: the stiff three-species Robertson kinetics;
//! * [`hires`]: the nine-species "high irradiance response" kinetics;
//! * [`uniform_time_grid`] and [`exponential_time_grid`].
//!
//! [`ProblemSpec`] is a parseable, printable selector used by the command line.

mod grid;
mod hires;
mod linear;
mod robertson;
mod scalar;
mod spec;

pub use grid::{exponential_time_grid, exponential_time_grid_with, uniform_time_grid, DEFAULT_FIRST_STEP_FRACTION};
pub use hires::{hires, HiresSpec};
pub use linear::{linear2x2, v1_component, GeneralLinearSpec, LinearSystemSpec};
pub use robertson::{robertson, RobertsonSpec};
pub use scalar::{scalar_nonlinear, ScalarProblemSpec};
pub use spec::{ProblemSpec, PROBLEM_NAMES};

use pds_core::PdsSystem;

/// Errors raised while constructing a problem.
#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum ProblemError {
    /// A parameter is outside its admissible range.
    #[error("{problem}: {reason}")]
    InvalidParameter {
        /// Problem name.
        problem: &'static str,
        /// Human-readable explanation.
        reason: String,
    },
    /// A textual problem selector could not be parsed.
    #[error("cannot parse problem '{input}': {reason}")]
    Parse {
        /// Offending text.
        input: String,
        /// Explanation, listing valid choices where applicable.
        reason: String,
    },
}

/// A system together with its initial condition and reference data.
#[derive(Debug, Clone)]
pub struct Problem {
    /// The production–destruction(–rest) system.
    pub system: PdsSystem,
    /// Initial state at `t = 0`.
    pub initial: Vec<f64>,
    /// Default final time.
    pub t_end: f64,
    /// Steady state, when one is known in closed form.
    pub steady_state: Option<Vec<f64>>,
}
