//! Small dense linear algebra for modified Patankar schemes.
//!
//! Every implicit stage of a modified Patankar method reduces to one linear
//! system whose size equals the number of species. Those systems are tiny
//! (2–9 unknowns in the bundled problems), so this crate provides a flat
//! row-major [`DenseMatrix`], Gaussian elimination with partial pivoting
//! ([`lu_solve`]), an [`m_matrix_certificate`] that checks the sign pattern
//! guaranteeing a non-negative inverse, and [`m_matrix_solve_in_place`], a
//! subtraction-free elimination for column diagonally dominant M-matrices
//! that keeps solutions positive and mass-conserving to round-off.

mod lu;
mod matrix;
mod mmatrix;

pub use lu::{determinant, lu_solve, lu_solve_in_place, LuFactors, SINGULARITY_RATIO};
pub use matrix::DenseMatrix;
pub use mmatrix::{m_matrix_certificate, m_matrix_solve_in_place, MMatrixCertificate};

/// Errors raised by the dense solver.
#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum SolveError {
    /// A pivot fell below `1e-30` times the largest entry of its column.
    #[error("singular matrix: pivot {pivot:e} in column {column} is below {threshold:e}")]
    SingularMatrix {
        /// Elimination column where the pivot vanished.
        column: usize,
        /// Magnitude of the best available pivot.
        pivot: f64,
        /// Singularity threshold that was applied.
        threshold: f64,
    },
    /// Operand sizes are inconsistent.
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch {
        /// Expected length.
        expected: usize,
        /// Length actually supplied.
        found: usize,
    },
    /// The matrix is not a column diagonally dominant M-matrix (sign or excess violation).
    #[error("not a column-dominant M-matrix: entry ({row}, {column}) has the wrong sign")]
    NotMMatrix {
        /// Row of the offending entry.
        row: usize,
        /// Column of the offending entry.
        column: usize,
    },
    /// The matrix or the solution contains NaN or infinity.
    #[error("non-finite value in matrix or solution")]
    NonFinite,
}
