//! Production–destruction(–rest) systems.
//!
//! A production–destruction–rest system (PDRS) is an ODE `u' = f(u)` whose
//! right-hand side is split as
//!
//! ```text
//! f_i(u) = r_i(u) + Σ_j ( p_ij(u) − d_ij(u) )
//! ```
//!
//! with non-negative production `p_ij` (mass flowing from species `j` into
//! `i`), destruction `d_ij` (mass flowing out of `i` into `j`) and a rest term
//! `r_i` that is neither. The system is *conservative* when `p_ij = d_ji` and
//! `r ≡ 0`; then `Σ_i u_i` is an invariant.
//!
//! [`PdsSystem`] bundles the three callbacks. Callbacks write into
//! caller-provided buffers so that integrators can evaluate them in tight loops
//! without allocating.
//!
//! ```
//! use pds_core::{PdsSystem, State};
//!
//! // u1 → u2 with unit rate.
//! let sys = PdsSystem::new(
//!     "decay",
//!     2,
//!     |u, p| { p.fill(0.0); p[(1, 0)] = u[0]; },
//!     |u, d| { d.fill(0.0); d[(0, 1)] = u[0]; },
//! )
//! .conservative(true);
//! let f = sys.evaluate_rhs(&State::new(0.0, vec![1.0, 0.0])).unwrap();
//! assert_eq!(f, vec![-1.0, 1.0]);
//! ```

use std::fmt;
use std::sync::Arc;

pub use smallsolve::DenseMatrix;

/// Callback filling a `dim × dim` production or destruction matrix for state `u`.
pub type MatrixFn = dyn Fn(&[f64], &mut DenseMatrix) + Send + Sync;
/// Callback filling the length-`dim` rest vector for state `u`.
pub type VectorFn = dyn Fn(&[f64], &mut [f64]) + Send + Sync;

/// Errors raised while evaluating or validating a system.
#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum PdsError {
    /// A state or buffer does not match the system dimension.
    #[error("dimension mismatch: system has {expected} components, got {found}")]
    DimensionMismatch {
        /// System dimension.
        expected: usize,
        /// Length actually supplied.
        found: usize,
    },
    /// `p_ij ≠ d_ji` beyond the tolerance at some sample state.
    #[error("not conservative at sample {sample}: p[{i}][{j}] = {p:e} but d[{j}][{i}] = {d:e}")]
    NotConservative {
        /// Index of the offending sample state.
        sample: usize,
        /// Row of the production entry.
        i: usize,
        /// Column of the production entry.
        j: usize,
        /// `p_ij`.
        p: f64,
        /// `d_ji`.
        d: f64,
    },
    /// A conservative system must have a vanishing rest term.
    #[error("not conservative at sample {sample}: rest term r[{i}] = {r:e} is non-zero")]
    NonZeroRest {
        /// Index of the offending sample state.
        sample: usize,
        /// Component with the non-zero rest.
        i: usize,
        /// Value of the rest term.
        r: f64,
    },
}

/// A point of a trajectory: time and the state vector.
#[derive(Debug, Clone, PartialEq)]
pub struct State {
    /// Time.
    pub t: f64,
    /// Concentrations, one per species.
    pub u: Vec<f64>,
}

impl State {
    /// A state at time `t`.
    pub fn new(t: f64, u: Vec<f64>) -> Self {
        Self { t, u }
    }

    /// Number of components.
    pub fn dim(&self) -> usize {
        self.u.len()
    }
}

/// Production, destruction and rest terms evaluated at one state.
#[derive(Debug, Clone, PartialEq)]
pub struct PdEval {
    /// Production matrix `p_ij`.
    pub p: DenseMatrix,
    /// Destruction matrix `d_ij`.
    pub d: DenseMatrix,
    /// Rest vector `r_i`.
    pub r: Vec<f64>,
}

impl PdEval {
    /// Zeroed buffers for a system of dimension `n`.
    pub fn zeros(n: usize) -> Self {
        Self {
            p: DenseMatrix::zeros(n),
            d: DenseMatrix::zeros(n),
            r: vec![0.0; n],
        }
    }

    /// Dimension of the evaluated system.
    pub fn dim(&self) -> usize {
        self.r.len()
    }

    /// `Σ_j p_ij`.
    pub fn production_sum(&self, i: usize) -> f64 {
        self.p.row(i).iter().sum()
    }

    /// `Σ_j d_ij`.
    pub fn destruction_sum(&self, i: usize) -> f64 {
        self.d.row(i).iter().sum()
    }

    /// The right-hand side `f_i = r_i + Σ_j (p_ij − d_ij)`.
    pub fn rhs(&self) -> Vec<f64> {
        (0..self.dim())
            .map(|i| {
                let pd: f64 = self
                    .p
                    .row(i)
                    .iter()
                    .zip(self.d.row(i))
                    .map(|(p, d)| p - d)
                    .sum();
                self.r[i] + pd
            })
            .collect()
    }
}

/// A production–destruction(–rest) system.
///
/// Cloning is cheap: the callbacks are reference counted.
#[derive(Clone)]
pub struct PdsSystem {
    name: String,
    dim: usize,
    production: Arc<MatrixFn>,
    destruction: Arc<MatrixFn>,
    rest: Option<Arc<VectorFn>>,
    conservative: bool,
}

impl fmt::Debug for PdsSystem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("PdsSystem")
            .field("name", &self.name)
            .field("dim", &self.dim)
            .field("has_rest", &self.rest.is_some())
            .field("conservative", &self.conservative)
            .finish()
    }
}

impl PdsSystem {
    /// A system without rest term, not declared conservative.
    ///
    /// The callbacks receive zero-filled buffers of the right size and must
    /// only write entries; every entry they do not touch stays zero.
    pub fn new<P, D>(name: impl Into<String>, dim: usize, production: P, destruction: D) -> Self
    where
        P: Fn(&[f64], &mut DenseMatrix) + Send + Sync + 'static,
        D: Fn(&[f64], &mut DenseMatrix) + Send + Sync + 'static,
    {
        Self {
            name: name.into(),
            dim,
            production: Arc::new(production),
            destruction: Arc::new(destruction),
            rest: None,
            conservative: false,
        }
    }

    /// Adds a rest term `r(u)`.
    pub fn with_rest<R>(mut self, rest: R) -> Self
    where
        R: Fn(&[f64], &mut [f64]) + Send + Sync + 'static,
    {
        self.rest = Some(Arc::new(rest));
        self
    }

    /// Declares whether the system is conservative (`p = dᵀ`, `r = 0`).
    ///
    /// The declaration is not checked here; see [`PdsSystem::check_conservative`].
    pub fn conservative(mut self, conservative: bool) -> Self {
        self.conservative = conservative;
        self
    }

    /// Short identifier used in logs and CSV headers.
    pub fn name(&self) -> &str {
        &self.name
    }

    /// Number of species.
    pub fn dim(&self) -> usize {
        self.dim
    }

    /// Whether the system was declared conservative.
    pub fn is_conservative(&self) -> bool {
        self.conservative
    }

    /// Whether a rest term is present.
    pub fn has_rest(&self) -> bool {
        self.rest.is_some()
    }

    fn check_len(&self, found: usize) -> Result<(), PdsError> {
        if found != self.dim {
            return Err(PdsError::DimensionMismatch {
                expected: self.dim,
                found,
            });
        }
        Ok(())
    }

    /// Evaluates `p`, `d` and `r` at `u` into `out`, reusing its buffers.
    pub fn evaluate_into(&self, u: &[f64], out: &mut PdEval) -> Result<(), PdsError> {
        self.check_len(u.len())?;
        self.check_len(out.dim())?;
        self.check_len(out.p.dim())?;
        self.check_len(out.d.dim())?;
        out.p.fill(0.0);
        out.d.fill(0.0);
        out.r.fill(0.0);
        (self.production)(u, &mut out.p);
        (self.destruction)(u, &mut out.d);
        if let Some(rest) = &self.rest {
            rest(u, &mut out.r);
        }
        Ok(())
    }

    /// Evaluates `p`, `d` and `r` at `u`.
    pub fn evaluate(&self, u: &[f64]) -> Result<PdEval, PdsError> {
        let mut out = PdEval::zeros(self.dim);
        self.evaluate_into(u, &mut out)?;
        Ok(out)
    }

    /// The right-hand side `f_i = r_i + Σ_j (p_ij − d_ij)` at state `s`.
    pub fn evaluate_rhs(&self, s: &State) -> Result<Vec<f64>, PdsError> {
        Ok(self.evaluate(&s.u)?.rhs())
    }

    /// Checks `|p_ij − d_ji| ≤ tol · max(|p_ij|, |d_ji|)` and `r = 0` at every sample.
    ///
    /// Use `tol = 0` for systems with closed-form terms (exact equality is
    /// expected) and a small tolerance such as `1e-12` for user systems whose
    /// two matrices are computed along different code paths.
    pub fn check_conservative(&self, samples: &[Vec<f64>], tol: f64) -> Result<(), PdsError> {
        let mut eval = PdEval::zeros(self.dim);
        for (k, u) in samples.iter().enumerate() {
            self.evaluate_into(u, &mut eval)?;
            for i in 0..self.dim {
                if eval.r[i] != 0.0 {
                    return Err(PdsError::NonZeroRest {
                        sample: k,
                        i,
                        r: eval.r[i],
                    });
                }
                for j in 0..self.dim {
                    let p = eval.p[(i, j)];
                    let d = eval.d[(j, i)];
                    if (p - d).abs() > tol * p.abs().max(d.abs()) {
                        return Err(PdsError::NotConservative { sample: k, i, j, p, d });
                    }
                }
            }
        }
        Ok(())
    }
}

/// Total mass `Σ_i u_i`.
pub fn total_mass(u: &[f64]) -> f64 {
    u.iter().sum()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn exchange() -> PdsSystem {
        PdsSystem::new(
            "exchange",
            2,
            |u, p| {
                p[(0, 1)] = 2.0 * u[1];
                p[(1, 0)] = u[0];
            },
            |u, d| {
                d[(1, 0)] = 2.0 * u[1];
                d[(0, 1)] = u[0];
            },
        )
        .conservative(true)
    }

    #[test]
    fn rhs_is_production_minus_destruction() {
        let f = exchange().evaluate_rhs(&State::new(0.0, vec![3.0, 1.0])).unwrap();
        assert_eq!(f, vec![2.0 - 3.0, 3.0 - 2.0]);
    }

    #[test]
    fn dimension_mismatch_is_structural_error() {
        let err = exchange().evaluate_rhs(&State::new(0.0, vec![1.0])).unwrap_err();
        assert_eq!(err, PdsError::DimensionMismatch { expected: 2, found: 1 });
    }

    #[test]
    fn conservative_check_passes_and_fails() {
        let samples = vec![vec![1.0, 2.0], vec![0.5, 1e-8]];
        exchange().check_conservative(&samples, 0.0).unwrap();
        let broken = PdsSystem::new(
            "broken",
            2,
            |u, p| p[(1, 0)] = u[0],
            |u, d| d[(0, 1)] = 1.5 * u[0],
        );
        assert!(matches!(
            broken.check_conservative(&samples, 1e-12),
            Err(PdsError::NotConservative { i: 1, j: 0, .. })
        ));
        let with_rest = exchange().with_rest(|_, r| r[0] = 1.0);
        assert!(matches!(
            with_rest.check_conservative(&samples, 0.0),
            Err(PdsError::NonZeroRest { i: 0, .. })
        ));
    }

    #[test]
    fn evaluate_into_resets_buffers() {
        let sys = exchange();
        let mut eval = PdEval::zeros(2);
        eval.p.fill(7.0);
        eval.r.fill(7.0);
        sys.evaluate_into(&[1.0, 1.0], &mut eval).unwrap();
        assert_eq!(eval.p[(0, 0)], 0.0);
        assert_eq!(eval.r, vec![0.0, 0.0]);
        assert_eq!(eval.production_sum(0), 2.0);
        assert_eq!(eval.destruction_sum(1), 2.0);
    }
}
