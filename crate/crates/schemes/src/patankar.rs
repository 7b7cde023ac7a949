//! Assembly and solution of one modified Patankar stage.
//!
//! Every implicit stage of the schemes in this crate has the form
//!
//! ```text
//! y_i = b_i + Δt ρ_i + Δt Σ_l w_l Σ_j ( p^l_ij · y_γ/σ_γ − d^l_ij · y_γ'/σ_γ' )
//! ```
//!
//! where `b` is an explicit base (a convex combination of earlier stages),
//! `ρ` the weighted rest terms, `p^l`, `d^l` production/destruction matrices
//! evaluated at earlier stages and `σ` a positive denominator vector. For a
//! non-negative weight the production term carries the unknown of the donor
//! (`γ = j`) and the destruction term that of the receiver (`γ' = i`). For a
//! negative weight the roles are swapped (`γ = i`, `γ' = j`), which turns the
//! term into a production of `|w| d_ij` and a destruction of `|w| p_ij`. After
//! this re-labelling all weights are non-negative, so the system matrix
//!
//! ```text
//! A_ii = 1 + Δt/σ_i (Σ_j D_ij − P_ii),   A_ij = −Δt P_ij/σ_j  (i ≠ j)
//! ```
//!
//! has a positive diagonal and non-positive off-diagonal and, for conservative
//! systems, unit column sums: it is an M-matrix, so `y > 0` whenever `b + Δt ρ > 0`.
//!
//! The solver works with the column-scaled matrix `B = A · diag(σ)` and the
//! Patankar ratios `z = y/σ`, then returns `y = σ ⊙ z`. `B` has no reciprocal
//! of `σ`, so its entries stay finite when a component has all but vanished
//! (for example an initial value of `10⁻¹⁸⁰` in stiff kinetics).
//!
//! Whenever every column excess `σ_j + Δt (Σ_k D_jk − Σ_i P_ij)` of `B` is
//! non-negative (always the case for conservative systems, where it is exactly
//! `σ_j`) the stage is solved with the subtraction-free elimination
//! [`m_matrix_solve_in_place`]. Its result is positive and, for conservative
//! systems, conserves mass to a few ulp even when the weighted rates are huge,
//! as in stiff kinetics or high-order deferred correction with large negative
//! weights. Other matrices fall back to LU with partial pivoting.

use pds_core::{DenseMatrix, PdEval};
use smallsolve::{lu_solve_in_place, m_matrix_solve_in_place};

use crate::SchemeError;

/// Weighted production/destruction/rest accumulator for one stage.
#[derive(Debug, Clone)]
pub struct StageSystem {
    base: Vec<f64>,
    rest: Vec<f64>,
    prod: DenseMatrix,
    dest: DenseMatrix,
    matrix: DenseMatrix,
    excess: Vec<f64>,
    conservative: bool,
}

impl StageSystem {
    /// Empty accumulator for `n` species.
    pub fn new(n: usize) -> Self {
        Self {
            base: vec![0.0; n],
            rest: vec![0.0; n],
            prod: DenseMatrix::zeros(n),
            dest: DenseMatrix::zeros(n),
            matrix: DenseMatrix::zeros(n),
            excess: vec![0.0; n],
            conservative: false,
        }
    }

    /// Declares that the production/destruction terms satisfy `p_ij = d_ji`,
    /// so every column of the stage matrix sums to exactly one.
    pub fn conservative(mut self, conservative: bool) -> Self {
        self.conservative = conservative;
        self
    }

    /// Clears all terms and sets the explicit base `b`.
    pub fn reset(&mut self, base: &[f64]) {
        self.base.copy_from_slice(base);
        self.rest.fill(0.0);
        self.prod.fill(0.0);
        self.dest.fill(0.0);
    }

    /// Clears all terms and sets the base to the linear combination `Σ c_k v_k`.
    pub fn reset_combination(&mut self, terms: &[(f64, &[f64])]) {
        self.base.fill(0.0);
        for (c, v) in terms {
            for (b, x) in self.base.iter_mut().zip(v.iter()) {
                *b += c * x;
            }
        }
        self.rest.fill(0.0);
        self.prod.fill(0.0);
        self.dest.fill(0.0);
    }

    /// Adds `w · (p, d, r)` evaluated at one earlier stage.
    pub fn add(&mut self, w: f64, eval: &PdEval) {
        self.add_split(w, w, eval);
    }

    /// Adds production/destruction with weight `w` and the rest term with weight `w_rest`.
    pub fn add_split(&mut self, w: f64, w_rest: f64, eval: &PdEval) {
        if w_rest != 0.0 {
            for (acc, r) in self.rest.iter_mut().zip(&eval.r) {
                *acc += w_rest * r;
            }
        }
        if w > 0.0 {
            self.prod.axpy(w, &eval.p);
            self.dest.axpy(w, &eval.d);
        } else if w < 0.0 {
            // Swapped Patankar weights: p acts as destruction, d as production.
            self.prod.axpy(-w, &eval.d);
            self.dest.axpy(-w, &eval.p);
        }
    }

    /// The explicit right-hand side `b + Δt ρ`.
    pub fn rhs(&self, dt: f64) -> Vec<f64> {
        self.base
            .iter()
            .zip(&self.rest)
            .map(|(b, r)| b + dt * r)
            .collect()
    }

    /// Assembles the stage matrix for step `dt` and reciprocal denominators `inv_sigma`.
    pub fn assemble(&mut self, dt: f64, inv_sigma: &[f64]) -> &DenseMatrix {
        let n = self.base.len();
        for i in 0..n {
            let dsum: f64 = self.dest.row(i).iter().sum();
            for j in 0..n {
                self.matrix[(i, j)] = if i == j {
                    1.0 + dt * inv_sigma[i] * (dsum - self.prod[(i, i)])
                } else {
                    -dt * self.prod[(i, j)] * inv_sigma[j]
                };
            }
        }
        &self.matrix
    }

    /// Assembles `B = A · diag(σ)`, whose unknown is the Patankar ratio `z = y/σ`.
    ///
    /// `B_ii = σ_i + Δt (Σ_j D_ij − P_ii)`, `B_ij = −Δt P_ij`. No reciprocal of
    /// `σ` appears, so the entries stay finite even when a component (and
    /// hence its denominator) has all but vanished.
    fn assemble_scaled(&mut self, dt: f64, sigma: &[f64]) {
        let n = self.base.len();
        for i in 0..n {
            let dsum: f64 = self.dest.row(i).iter().sum();
            for j in 0..n {
                self.matrix[(i, j)] = if i == j {
                    sigma[i] + dt * (dsum - self.prod[(i, i)])
                } else {
                    -dt * self.prod[(i, j)]
                };
            }
        }
    }

    /// Fills the column sums of the scaled stage matrix; false if one is negative.
    fn column_excess(&mut self, dt: f64, sigma: &[f64]) -> bool {
        let n = self.base.len();
        if self.conservative {
            self.excess.copy_from_slice(sigma);
            return true;
        }
        for j in 0..n {
            let dsum: f64 = self.dest.row(j).iter().sum();
            let psum: f64 = (0..n).map(|i| self.prod[(i, j)]).sum();
            self.excess[j] = sigma[j] + dt * (dsum - psum);
        }
        self.excess.iter().all(|e| *e >= 0.0 && e.is_finite())
    }

    /// Solves the stage for step `dt` and reciprocal denominators `inv_sigma`, writing into `out`.
    pub fn solve_into(&mut self, dt: f64, inv_sigma: &[f64], out: &mut [f64]) -> Result<(), SchemeError> {
        let sigma: Vec<f64> = inv_sigma.iter().map(|&v| (1.0 / v).min(f64::MAX)).collect();
        self.assemble_scaled(dt, &sigma);
        let finite = self.matrix.as_slice().iter().all(|v| v.is_finite());
        for ((o, b), r) in out.iter_mut().zip(&self.base).zip(&self.rest) {
            *o = b + dt * r;
        }
        let dominant = self.column_excess(dt, &sigma);
        let structural = dominant && out.iter().all(|v| *v >= 0.0);
        let solved = if structural {
            m_matrix_solve_in_place(&mut self.matrix, &self.excess, out)
        } else {
            lu_solve_in_place(&mut self.matrix, out)
        };
        match solved {
            Ok(()) => {
                // Without the structural guarantee a stage may leave the
                // positive cone; later denominators would then be clamped and
                // the step would return a meaningless (if positive) value.
                if !structural {
                    if let Some(index) = out.iter().position(|v| !(*v > 0.0)) {
                        return Err(SchemeError::PositivityLost {
                            index,
                            value: out[index] * sigma[index],
                        });
                    }
                }
                for (o, s) in out.iter_mut().zip(&sigma) {
                    *o *= s;
                }
                Ok(())
            }
            Err(_) if !finite => Err(SchemeError::NonFinite { stage: "stage matrix" }),
            Err(e) => Err(e.into()),
        }
    }

    /// Solves the stage and returns the new stage vector.
    pub fn solve(&mut self, dt: f64, inv_sigma: &[f64]) -> Result<Vec<f64>, SchemeError> {
        let mut out = vec![0.0; self.base.len()];
        self.solve_into(dt, inv_sigma, &mut out)?;
        Ok(out)
    }
}

/// `1/x` with `x` clamped below at the smallest positive normal number.
#[inline]
pub fn inv_clamped(x: f64) -> f64 {
    1.0 / x.max(f64::MIN_POSITIVE)
}

/// Reciprocals `1/max(x_i, f64::MIN_POSITIVE)`.
pub fn inv_all(x: &[f64]) -> Vec<f64> {
    x.iter().map(|&v| inv_clamped(v)).collect()
}

/// Reciprocal of the weighted geometric mean `a^e · b^(1−e)`.
///
/// Computed in log space so that large exponents cannot overflow before the
/// product is formed; bases are clamped below at `f64::MIN_POSITIVE` and the
/// result is clamped to `[0, f64::MAX]`. Exponents 0 and 1 are evaluated
/// exactly.
#[inline]
pub fn inv_geometric(a: f64, b: f64, e: f64) -> f64 {
    if e == 1.0 {
        return inv_clamped(a);
    }
    if e == 0.0 {
        return inv_clamped(b);
    }
    let la = a.max(f64::MIN_POSITIVE).ln();
    let lb = b.max(f64::MIN_POSITIVE).ln();
    (-(e * la + (1.0 - e) * lb)).exp().min(f64::MAX)
}

/// Component-wise [`inv_geometric`].
pub fn inv_geometric_all(a: &[f64], b: &[f64], e: f64) -> Vec<f64> {
    a.iter().zip(b).map(|(&x, &y)| inv_geometric(x, y, e)).collect()
}

/// Fails unless every component is finite and strictly positive.
pub fn check_positive(u: &[f64]) -> Result<(), SchemeError> {
    match u.iter().position(|v| !(*v > 0.0) || !v.is_finite()) {
        Some(index) => Err(SchemeError::NonPositiveInput {
            index,
            value: u[index],
        }),
        None => Ok(()),
    }
}

/// Fails unless every component is finite.
pub fn check_finite(u: &[f64], stage: &'static str) -> Result<(), SchemeError> {
    if u.iter().all(|v| v.is_finite()) {
        Ok(())
    } else {
        Err(SchemeError::NonFinite { stage })
    }
}
