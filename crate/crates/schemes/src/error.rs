//! Error type shared by every scheme.

use pds_core::PdsError;
use smallsolve::SolveError;

/// Failures raised while constructing or stepping a scheme.
#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum SchemeError {
    /// A scheme parameter is outside its admissible range.
    #[error("invalid parameter for {scheme}: {reason}")]
    InvalidParameter {
        /// Scheme family.
        scheme: &'static str,
        /// Human-readable explanation.
        reason: String,
    },
    /// The MPRK(4,3) Butcher tableau is undefined for these parameters.
    #[error("MPRK(4,3) tableau is singular for alpha={alpha}, beta={beta}: {reason}")]
    TableauSingular {
        /// First parameter.
        alpha: f64,
        /// Second parameter.
        beta: f64,
        /// Which denominator vanishes.
        reason: &'static str,
    },
    /// The MPRKSO(2,2) Patankar exponent is undefined (`αβ = 1`).
    #[error("MPRKSO(2,2) exponent gamma is undefined for alpha={alpha}, beta={beta} (alpha*beta = 1)")]
    GammaSingular {
        /// First parameter.
        alpha: f64,
        /// Second parameter.
        beta: f64,
    },
    /// Two quadrature nodes coincide, so Lagrange interpolation is undefined.
    #[error("duplicate nodes at positions {first} and {second} (value {value})")]
    DuplicateNodes {
        /// Index of the first node.
        first: usize,
        /// Index of the repeated node.
        second: usize,
        /// Shared value.
        value: f64,
    },
    /// Newton's method for Gauss–Lobatto nodes did not converge.
    #[error("Newton iteration did not converge after {iterations} iterations")]
    ConvergenceFailure {
        /// Iterations performed.
        iterations: usize,
    },
    /// The input state has a non-positive or non-finite component.
    #[error("state component {index} is {value:e}; modified Patankar schemes need strictly positive input")]
    NonPositiveInput {
        /// Offending component.
        index: usize,
        /// Its value.
        value: f64,
    },
    /// A stage or the update produced NaN or infinity.
    #[error("non-finite value produced in {stage}")]
    NonFinite {
        /// Stage that failed.
        stage: &'static str,
    },
    /// The update left the positive cone.
    ///
    /// Only possible when a negative Patankar weight multiplies a diagonal
    /// destruction term `d_ii`: the index swap that normally keeps the stage
    /// matrix an M-matrix cannot move a diagonal entry.
    #[error("update component {index} is {value:e}; positivity is not guaranteed for diagonal terms with negative weights")]
    PositivityLost {
        /// Offending component.
        index: usize,
        /// Its value.
        value: f64,
    },
    /// The linear system of a stage could not be solved.
    #[error("linear solve failed: {0}")]
    Solve(#[from] SolveError),
    /// The system callbacks are inconsistent with the state.
    #[error(transparent)]
    System(#[from] PdsError),
    /// A scheme or tableau name could not be parsed.
    #[error("cannot parse '{input}': {reason}")]
    Parse {
        /// Text that failed to parse.
        input: String,
        /// Explanation, including the list of valid names where relevant.
        reason: String,
    },
}
