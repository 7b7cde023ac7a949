//! Classical implicit Runge–Kutta tableaus and their positivity thresholds.
//!
//! A linear one-step method applied to `u' = L u` with the linear test
//! system (eigenvalues `0` and `−1`) produces `u¹ = u* + R(−Δt)(u⁰ − u*)`,
//! so it is positive and non-overshooting exactly when the stability function
//! `R(z) = 1 + z bᵀ (I − zA)⁻¹ 𝟙` satisfies `R(−Δt) > 0`.

use std::fmt;
use std::str::FromStr;

use smallsolve::{determinant, lu_solve_in_place, DenseMatrix};

use crate::SchemeError;

/// Default upper end of the threshold search.
pub const DEFAULT_DT_MAX: f64 = 64.0;
/// Number of log-spaced samples taken before bisecting.
pub const THRESHOLD_SAMPLES: usize = 1024;
/// Relative width, in units of 10⁻³, at which the search for a touching zero stops.
pub const THRESHOLD_REL_TOL: f64 = 1e-9;
/// Local minima of `R(−Δt)` at or below this value count as touching zeros.
pub const TOUCH_TOL: f64 = 1e-12;

/// A Butcher tableau `(A, b, c)`.
#[derive(Debug, Clone, PartialEq)]
pub struct ButcherTableau {
    name: String,
    a: Vec<Vec<f64>>,
    b: Vec<f64>,
    c: Vec<f64>,
}

impl ButcherTableau {
    /// A tableau from its coefficients; `a` must be `s × s`, `b` and `c` of length `s`.
    pub fn new(name: impl Into<String>, a: Vec<Vec<f64>>, b: Vec<f64>, c: Vec<f64>) -> Result<Self, SchemeError> {
        let s = b.len();
        let name = name.into();
        if c.len() != s || a.len() != s || a.iter().any(|row| row.len() != s) {
            return Err(SchemeError::InvalidParameter {
                scheme: "tableau",
                reason: format!("{name}: A must be {s}×{s} and c of length {s}"),
            });
        }
        Ok(Self { name, a, b, c })
    }

    /// Registry name.
    pub fn name(&self) -> &str {
        &self.name
    }

    /// Number of stages.
    pub fn stages(&self) -> usize {
        self.b.len()
    }

    /// Coefficient matrix `A`.
    pub fn a(&self) -> &[Vec<f64>] {
        &self.a
    }

    /// Weights `b`.
    pub fn b(&self) -> &[f64] {
        &self.b
    }

    /// Abscissae `c`.
    pub fn c(&self) -> &[f64] {
        &self.c
    }

    /// Largest `|c_i − Σ_j A_ij|`.
    pub fn row_sum_defect(&self) -> f64 {
        self.a
            .iter()
            .zip(&self.c)
            .map(|(row, ci)| (ci - row.iter().sum::<f64>()).abs())
            .fold(0.0, f64::max)
    }

    /// Numerator and denominator of `R(z) = det(I − zA + z𝟙bᵀ) / det(I − zA)`.
    pub fn stability_parts(&self, z: f64) -> (f64, f64) {
        let s = self.stages();
        let mut den = DenseMatrix::identity(s);
        let mut num = DenseMatrix::identity(s);
        for i in 0..s {
            for j in 0..s {
                den[(i, j)] -= z * self.a[i][j];
                num[(i, j)] += z * (self.b[j] - self.a[i][j]);
            }
        }
        (determinant(&num), determinant(&den))
    }

    /// Stability function `R(z)` on the real axis (`±∞` or NaN at poles).
    pub fn stability_function(&self, z: f64) -> f64 {
        let (n, d) = self.stability_parts(z);
        n / d
    }

    /// `R(z) = 1 + z bᵀ (I − zA)⁻¹ 𝟙` via one dense solve.
    ///
    /// Unlike [`stability_function`](Self::stability_function) this fails with
    /// a singular-matrix error at poles of `R` instead of returning `±∞`.
    pub fn stability_value(&self, z: f64) -> Result<f64, SchemeError> {
        let s = self.stages();
        let mut m = DenseMatrix::identity(s);
        for i in 0..s {
            for j in 0..s {
                m[(i, j)] -= z * self.a[i][j];
            }
        }
        let mut x = vec![1.0; s];
        lu_solve_in_place(&mut m, &mut x)?;
        Ok(1.0 + z * self.b.iter().zip(&x).map(|(b, x)| b * x).sum::<f64>())
    }

    /// One step of the method applied to the linear system `u' = L u`.
    ///
    /// Solves the `s·n` stage equations `k_i = L (u + Δt Σ_j A_ij k_j)` directly.
    pub fn linear_step(&self, l: &DenseMatrix, u: &[f64], dt: f64) -> Result<Vec<f64>, SchemeError> {
        let n = l.dim();
        let s = self.stages();
        let lu = l.mul_vec(u)?;
        let mut m = DenseMatrix::identity(s * n);
        let mut rhs = vec![0.0; s * n];
        for i in 0..s {
            for j in 0..s {
                let a = dt * self.a[i][j];
                if a != 0.0 {
                    for p in 0..n {
                        for q in 0..n {
                            m[(i * n + p, j * n + q)] -= a * l[(p, q)];
                        }
                    }
                }
            }
            rhs[i * n..(i + 1) * n].copy_from_slice(&lu);
        }
        lu_solve_in_place(&mut m, &mut rhs)?;
        let mut out = u.to_vec();
        for i in 0..s {
            for p in 0..n {
                out[p] += dt * self.b[i] * rhs[i * n + p];
            }
        }
        Ok(out)
    }
}

/// How the positivity threshold was found.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ThresholdKind {
    /// `R(−Δt)` changes sign through a zero of the numerator.
    SignChange,
    /// `R(−Δt)` changes sign through a pole.
    Pole,
    /// `R(−Δt)` touches zero without changing sign (double root).
    Touch,
}

/// Result of [`rk_positivity_threshold`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Threshold {
    /// `R(−Δt) > 0` for every sampled `Δt ≤ dt_max`.
    Unbounded,
    /// Smallest `Δt` with `R(−Δt) ≤ 0` (or a pole).
    Finite {
        /// Threshold time step.
        dt: f64,
        /// Mechanism.
        kind: ThresholdKind,
    },
}

impl Threshold {
    /// The threshold as a number, `+∞` when unbounded.
    pub fn value(&self) -> f64 {
        match self {
            Threshold::Unbounded => f64::INFINITY,
            Threshold::Finite { dt, .. } => *dt,
        }
    }
}

impl fmt::Display for Threshold {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Threshold::Unbounded => f.write_str("inf"),
            Threshold::Finite { dt, .. } => write!(f, "{dt:.16e}"),
        }
    }
}

fn sign_of(t: &ButcherTableau, x: f64) -> (f64, f64, bool) {
    let (n, d) = t.stability_parts(-x);
    (n, d, n * d > 0.0)
}

/// Smallest `Δt ∈ (0, dt_max]` with `R(−Δt) ≤ 0`, found by log-spaced sampling and bisection.
///
/// Sign changes through poles count as thresholds; so do double roots where
/// `R(−Δt)` touches zero, which a pure sign scan would miss. Returns
/// [`Threshold::Unbounded`] when `R(−Δt) > 0` on the whole range.
pub fn rk_positivity_threshold(tableau: &ButcherTableau, dt_max: f64) -> Threshold {
    let lo = 1e-6_f64.min(dt_max * 1e-3);
    let ratio = (dt_max / lo).ln() / (THRESHOLD_SAMPLES - 1) as f64;
    let xs: Vec<f64> = (0..THRESHOLD_SAMPLES)
        .map(|k| {
            if k + 1 == THRESHOLD_SAMPLES {
                dt_max
            } else {
                lo * (ratio * k as f64).exp()
            }
        })
        .collect();
    let values: Vec<f64> = xs.iter().map(|&x| tableau.stability_function(-x)).collect();
    for k in 0..xs.len() {
        let (_, _, positive) = sign_of(tableau, xs[k]);
        if !positive {
            if k == 0 {
                return Threshold::Finite {
                    dt: xs[0],
                    kind: ThresholdKind::SignChange,
                };
            }
            let (mut a, mut b) = (xs[k - 1], xs[k]);
            let (n_a, d_a, _) = sign_of(tableau, a);
            // Bisect down to adjacent floating-point numbers.
            loop {
                let mid = 0.5 * (a + b);
                if mid <= a || mid >= b {
                    break;
                }
                if sign_of(tableau, mid).2 {
                    a = mid;
                } else {
                    b = mid;
                }
            }
            let (n_b, d_b, _) = sign_of(tableau, b);
            let kind = if d_a * d_b <= 0.0 && n_a * n_b > 0.0 {
                ThresholdKind::Pole
            } else {
                ThresholdKind::SignChange
            };
            // Check whether a touching zero precedes the sign change.
            if let Some(t) = touching_zero(tableau, &xs[..k], &values[..k]) {
                return t;
            }
            return Threshold::Finite { dt: b, kind };
        }
    }
    touching_zero(tableau, &xs, &values).unwrap_or(Threshold::Unbounded)
}

fn touching_zero(tableau: &ButcherTableau, xs: &[f64], values: &[f64]) -> Option<Threshold> {
    let r = |x: f64| tableau.stability_function(-x);
    for k in 1..xs.len().saturating_sub(1) {
        if values[k] <= values[k - 1] && values[k] <= values[k + 1] {
            // Golden-section search for the local minimum.
            let g = (5f64.sqrt() - 1.0) / 2.0;
            let (mut a, mut b) = (xs[k - 1], xs[k + 1]);
            let mut c = b - g * (b - a);
            let mut d = a + g * (b - a);
            while (b - a) > 1e-3 * THRESHOLD_REL_TOL * b {
                if r(c) < r(d) {
                    b = d;
                } else {
                    a = c;
                }
                c = b - g * (b - a);
                d = a + g * (b - a);
            }
            let x = 0.5 * (a + b);
            if r(x) <= TOUCH_TOL {
                return Some(Threshold::Finite {
                    dt: x,
                    kind: ThresholdKind::Touch,
                });
            }
        }
    }
    None
}

/// Names of every registered tableau, in registry order.
pub const TABLEAU_NAMES: &[&str] = &[
    "implicit_euler",
    "implicit_midpoint",
    "trapezoid",
    "trbdf2",
    "radau_ia3",
    "radau_ia5",
    "radau_iia3",
    "radau_iia5",
    "lobatto_iiia2",
    "lobatto_iiia4",
    "lobatto_iiib2",
    "lobatto_iiib4",
    "lobatto_iiic2",
    "lobatto_iiic4",
    "gauss_legendre4",
    "gauss_legendre6",
    "qin_zhang_dirk2",
    "kraaijevanger_spijker_dirk2",
];

/// Looks up a registered tableau by name.
pub fn tableau(name: &str) -> Result<ButcherTableau, SchemeError> {
    let s6 = 6f64.sqrt();
    let s3 = 3f64.sqrt();
    let s15 = 15f64.sqrt();
    let (a, b, c): (Vec<Vec<f64>>, Vec<f64>, Vec<f64>) = match name {
        "implicit_euler" => (vec![vec![1.0]], vec![1.0], vec![1.0]),
        "implicit_midpoint" => (vec![vec![0.5]], vec![1.0], vec![0.5]),
        "trapezoid" | "lobatto_iiia2" => (
            vec![vec![0.0, 0.0], vec![0.5, 0.5]],
            vec![0.5, 0.5],
            vec![0.0, 1.0],
        ),
        "trbdf2" => {
            let gamma = 2.0 - 2f64.sqrt();
            let d = gamma / 2.0;
            let w = 2f64.sqrt() / 4.0;
            (
                vec![vec![0.0, 0.0, 0.0], vec![d, d, 0.0], vec![w, w, d]],
                vec![w, w, d],
                vec![0.0, gamma, 1.0],
            )
        }
        "radau_ia3" => (
            vec![vec![0.25, -0.25], vec![0.25, 5.0 / 12.0]],
            vec![0.25, 0.75],
            vec![0.0, 2.0 / 3.0],
        ),
        "radau_ia5" => (
            vec![
                vec![1.0 / 9.0, (-1.0 - s6) / 18.0, (-1.0 + s6) / 18.0],
                vec![1.0 / 9.0, (88.0 + 7.0 * s6) / 360.0, (88.0 - 43.0 * s6) / 360.0],
                vec![1.0 / 9.0, (88.0 + 43.0 * s6) / 360.0, (88.0 - 7.0 * s6) / 360.0],
            ],
            vec![1.0 / 9.0, (16.0 + s6) / 36.0, (16.0 - s6) / 36.0],
            vec![0.0, (6.0 - s6) / 10.0, (6.0 + s6) / 10.0],
        ),
        "radau_iia3" => (
            vec![vec![5.0 / 12.0, -1.0 / 12.0], vec![0.75, 0.25]],
            vec![0.75, 0.25],
            vec![1.0 / 3.0, 1.0],
        ),
        "radau_iia5" => (
            vec![
                vec![(88.0 - 7.0 * s6) / 360.0, (296.0 - 169.0 * s6) / 1800.0, (-2.0 + 3.0 * s6) / 225.0],
                vec![(296.0 + 169.0 * s6) / 1800.0, (88.0 + 7.0 * s6) / 360.0, (-2.0 - 3.0 * s6) / 225.0],
                vec![(16.0 - s6) / 36.0, (16.0 + s6) / 36.0, 1.0 / 9.0],
            ],
            vec![(16.0 - s6) / 36.0, (16.0 + s6) / 36.0, 1.0 / 9.0],
            vec![(4.0 - s6) / 10.0, (4.0 + s6) / 10.0, 1.0],
        ),
        "lobatto_iiia4" => (
            vec![
                vec![0.0, 0.0, 0.0],
                vec![5.0 / 24.0, 1.0 / 3.0, -1.0 / 24.0],
                vec![1.0 / 6.0, 2.0 / 3.0, 1.0 / 6.0],
            ],
            vec![1.0 / 6.0, 2.0 / 3.0, 1.0 / 6.0],
            vec![0.0, 0.5, 1.0],
        ),
        "lobatto_iiib2" => (
            vec![vec![0.5, 0.0], vec![0.5, 0.0]],
            vec![0.5, 0.5],
            vec![0.0, 1.0],
        ),
        "lobatto_iiib4" => (
            vec![
                vec![1.0 / 6.0, -1.0 / 6.0, 0.0],
                vec![1.0 / 6.0, 1.0 / 3.0, 0.0],
                vec![1.0 / 6.0, 5.0 / 6.0, 0.0],
            ],
            vec![1.0 / 6.0, 2.0 / 3.0, 1.0 / 6.0],
            vec![0.0, 0.5, 1.0],
        ),
        "lobatto_iiic2" => (
            vec![vec![0.5, -0.5], vec![0.5, 0.5]],
            vec![0.5, 0.5],
            vec![0.0, 1.0],
        ),
        "lobatto_iiic4" => (
            vec![
                vec![1.0 / 6.0, -1.0 / 3.0, 1.0 / 6.0],
                vec![1.0 / 6.0, 5.0 / 12.0, -1.0 / 12.0],
                vec![1.0 / 6.0, 2.0 / 3.0, 1.0 / 6.0],
            ],
            vec![1.0 / 6.0, 2.0 / 3.0, 1.0 / 6.0],
            vec![0.0, 0.5, 1.0],
        ),
        "gauss_legendre4" => (
            vec![vec![0.25, 0.25 - s3 / 6.0], vec![0.25 + s3 / 6.0, 0.25]],
            vec![0.5, 0.5],
            vec![0.5 - s3 / 6.0, 0.5 + s3 / 6.0],
        ),
        "gauss_legendre6" => (
            vec![
                vec![5.0 / 36.0, 2.0 / 9.0 - s15 / 15.0, 5.0 / 36.0 - s15 / 30.0],
                vec![5.0 / 36.0 + s15 / 24.0, 2.0 / 9.0, 5.0 / 36.0 - s15 / 24.0],
                vec![5.0 / 36.0 + s15 / 30.0, 2.0 / 9.0 + s15 / 15.0, 5.0 / 36.0],
            ],
            vec![5.0 / 18.0, 4.0 / 9.0, 5.0 / 18.0],
            vec![0.5 - s15 / 10.0, 0.5, 0.5 + s15 / 10.0],
        ),
        "qin_zhang_dirk2" => (
            vec![vec![0.25, 0.0], vec![0.5, 0.25]],
            vec![0.5, 0.5],
            vec![0.25, 0.75],
        ),
        "kraaijevanger_spijker_dirk2" => (
            vec![vec![0.5, 0.0], vec![-0.5, 2.0]],
            vec![-0.5, 1.5],
            vec![0.5, 1.5],
        ),
        _ => {
            return Err(SchemeError::Parse {
                input: name.to_string(),
                reason: format!("unknown tableau; valid tableaus: {}", TABLEAU_NAMES.join(", ")),
            })
        }
    };
    ButcherTableau::new(name, a, b, c)
}

/// Every registered tableau.
pub fn all_tableaus() -> Vec<ButcherTableau> {
    TABLEAU_NAMES
        .iter()
        .map(|n| tableau(n).expect("registered tableau"))
        .collect()
}

impl FromStr for ButcherTableau {
    type Err = SchemeError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        tableau(&s.trim().to_ascii_lowercase())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    /// Order of a tableau via the classical conditions up to order 4.
    fn satisfies_order(t: &ButcherTableau, p: usize) -> bool {
        let (a, b, c) = (t.a(), t.b(), t.c());
        let s = t.stages();
        let tol = 1e-13;
        let sum = |f: &dyn Fn(usize) -> f64| (0..s).map(f).sum::<f64>();
        let ac: Vec<f64> = (0..s).map(|i| (0..s).map(|j| a[i][j] * c[j]).sum()).collect();
        let mut ok = (sum(&|i| b[i]) - 1.0).abs() < tol;
        if p >= 2 {
            ok &= (sum(&|i| b[i] * c[i]) - 0.5).abs() < tol;
        }
        if p >= 3 {
            ok &= (sum(&|i| b[i] * c[i] * c[i]) - 1.0 / 3.0).abs() < tol;
            ok &= (sum(&|i| b[i] * ac[i]) - 1.0 / 6.0).abs() < tol;
        }
        if p >= 4 {
            ok &= (sum(&|i| b[i] * c[i].powi(3)) - 0.25).abs() < tol;
            ok &= (sum(&|i| b[i] * c[i] * ac[i]) - 0.125).abs() < tol;
        }
        ok
    }

    #[test]
    fn registry_is_consistent() {
        // The Kraaijevanger–Spijker method has two stages but classical order one.
        let expected_order = [1, 2, 2, 2, 3, 5, 3, 5, 2, 4, 2, 4, 2, 4, 4, 6, 2, 1];
        for (t, p) in all_tableaus().iter().zip(expected_order) {
            // Lobatto IIIB with two stages is the classical exception to c = A1.
            if t.name() != "lobatto_iiib2" {
                assert!(t.row_sum_defect() < 1e-15, "{} violates c = A1", t.name());
            }
            assert!(satisfies_order(t, p.min(4)), "{} fails order {p}", t.name());
        }
    }

    #[test]
    fn stability_function_of_implicit_euler() {
        let t = tableau("implicit_euler").unwrap();
        for z in [-3.0, -0.5, 0.0, 0.7] {
            assert_relative_eq!(t.stability_function(z), 1.0 / (1.0 - z), epsilon = 1e-15);
        }
    }

    #[test]
    fn solve_based_stability_value() {
        let euler = tableau("implicit_euler").unwrap();
        assert_relative_eq!(euler.stability_value(-1.0).unwrap(), 0.5, epsilon = 1e-15);
        assert!(matches!(euler.stability_value(1.0), Err(SchemeError::Solve(_))));
        let trap = tableau("trapezoid").unwrap();
        assert!(trap.stability_value(-2.0).unwrap().abs() < 1e-15);
        for t in all_tableaus() {
            assert_eq!(t.stability_value(0.0).unwrap(), 1.0, "{}", t.name());
            for z in [-0.3, -2.5, -7.0] {
                assert_relative_eq!(
                    t.stability_value(z).unwrap(),
                    t.stability_function(z),
                    epsilon = 1e-12,
                    max_relative = 1e-10
                );
            }
        }
    }

    #[test]
    fn unknown_tableau_lists_names() {
        let e = tableau("rk4").unwrap_err().to_string();
        assert!(e.contains("radau_iia5"), "{e}");
    }

    #[test]
    fn linear_step_reproduces_stability_function() {
        let l = DenseMatrix::from_rows(&[[-0.5, 0.5], [0.5, -0.5]]).unwrap();
        for t in all_tableaus() {
            for dt in [0.3, 1.7, 5.0] {
                let u = t.linear_step(&l, &[0.9, 0.1], dt).unwrap();
                // Eigenvalues 0 and −1: v = u1 − u2 evolves with R(−dt).
                let expected = 0.8 * t.stability_function(-dt);
                assert_relative_eq!(u[0] - u[1], expected, epsilon = 1e-12, max_relative = 1e-12);
                assert_relative_eq!(u[0] + u[1], 1.0, epsilon = 1e-14);
            }
        }
    }
}
