//! LU factorisation with partial (row) pivoting.

use crate::{DenseMatrix, SolveError};

/// Pivots smaller than this multiple of the largest entry of their original
/// column are treated as exact zeros.
///
/// The test is column-relative rather than relative to `‖A‖∞` because
/// Patankar matrices carry a factor `1/σ_j` in column `j`: with denominators
/// spanning hundreds of orders of magnitude a global threshold would reject
/// perfectly regular M-matrices.
pub const SINGULARITY_RATIO: f64 = 1e-30;

/// Column scales `max_i |a_ik|`, kept on the stack for small systems.
struct ColumnScales {
    inline: [f64; 16],
    heap: Vec<f64>,
}

impl ColumnScales {
    fn new(a: &DenseMatrix) -> Result<Self, SolveError> {
        let n = a.dim();
        let mut cs = Self {
            inline: [0.0; 16],
            heap: if n > 16 { vec![0.0; n] } else { Vec::new() },
        };
        let data = a.as_slice();
        let out = cs.as_mut_slice(n);
        for i in 0..n {
            for (k, o) in out.iter_mut().enumerate() {
                let v = data[i * n + k];
                if !v.is_finite() {
                    return Err(SolveError::NonFinite);
                }
                *o = o.max(v.abs());
            }
        }
        Ok(cs)
    }

    fn as_mut_slice(&mut self, n: usize) -> &mut [f64] {
        if n > 16 {
            &mut self.heap
        } else {
            &mut self.inline[..n]
        }
    }

    fn threshold(&self, k: usize) -> f64 {
        let scale = if self.heap.is_empty() { self.inline[k] } else { self.heap[k] };
        SINGULARITY_RATIO * scale
    }
}

/// `P A = L U` with unit-diagonal `L`, both packed into one matrix.
#[derive(Debug, Clone)]
pub struct LuFactors {
    lu: DenseMatrix,
    perm: Vec<usize>,
}

impl LuFactors {
    /// Factorises `a`, failing with [`SolveError::SingularMatrix`] when a pivot
    /// falls below `1e-30` times the largest entry of its column.
    pub fn new(a: &DenseMatrix) -> Result<Self, SolveError> {
        let mut lu = a.clone();
        let mut perm = Vec::new();
        factor_in_place(&mut lu, &mut perm)?;
        Ok(Self { lu, perm })
    }

    /// Solves `A x = b` using the stored factors.
    pub fn solve(&self, b: &[f64]) -> Result<Vec<f64>, SolveError> {
        let mut x = b.to_vec();
        self.solve_in_place(&mut x)?;
        Ok(x)
    }

    /// Solves `A x = b`, overwriting `b` with `x`.
    pub fn solve_in_place(&self, b: &mut [f64]) -> Result<(), SolveError> {
        substitute(&self.lu, &self.perm, b)
    }
}

/// Solves the square system `A x = b` by Gaussian elimination with partial pivoting.
///
/// Fails with [`SolveError::SingularMatrix`] when a pivot has magnitude below
/// `1e-30` times the largest entry of its original column and with [`SolveError::NonFinite`] when the solution overflows.
pub fn lu_solve(a: &DenseMatrix, b: &[f64]) -> Result<Vec<f64>, SolveError> {
    let mut x = b.to_vec();
    lu_solve_in_place(&mut a.clone(), &mut x)?;
    Ok(x)
}

/// In-place variant of [`lu_solve`]: `a` is overwritten by its eliminated
/// upper triangle and `b` by the solution. Performs no heap allocation, which
/// matters because every Patankar stage calls it.
pub fn lu_solve_in_place(a: &mut DenseMatrix, b: &mut [f64]) -> Result<(), SolveError> {
    let n = a.dim();
    if b.len() != n {
        return Err(SolveError::DimensionMismatch {
            expected: n,
            found: b.len(),
        });
    }
    let scales = ColumnScales::new(a)?;
    let data = a.as_mut_slice();
    for k in 0..n {
        let mut p = k;
        let mut best = data[k * n + k].abs();
        for i in k + 1..n {
            let v = data[i * n + k].abs();
            if v > best {
                best = v;
                p = i;
            }
        }
        let threshold = scales.threshold(k);
        if best <= threshold || best == 0.0 {
            return Err(SolveError::SingularMatrix {
                column: k,
                pivot: best,
                threshold,
            });
        }
        if p != k {
            for j in k..n {
                data.swap(k * n + j, p * n + j);
            }
            b.swap(k, p);
        }
        let pivot = data[k * n + k];
        for i in k + 1..n {
            let factor = data[i * n + k] / pivot;
            if factor != 0.0 {
                for j in k + 1..n {
                    data[i * n + j] -= factor * data[k * n + j];
                }
                b[i] -= factor * b[k];
            }
        }
    }
    for i in (0..n).rev() {
        let mut s = b[i];
        for j in i + 1..n {
            s -= data[i * n + j] * b[j];
        }
        b[i] = s / data[i * n + i];
    }
    if b.iter().any(|v| !v.is_finite()) {
        return Err(SolveError::NonFinite);
    }
    Ok(())
}

/// Determinant by Gaussian elimination with partial pivoting.
///
/// Unlike the solvers this never fails: a singular matrix yields `0`.
pub fn determinant(a: &DenseMatrix) -> f64 {
    let n = a.dim();
    let mut m = a.clone();
    let data = m.as_mut_slice();
    let mut det = 1.0;
    for k in 0..n {
        let mut p = k;
        for i in k + 1..n {
            if data[i * n + k].abs() > data[p * n + k].abs() {
                p = i;
            }
        }
        let pivot = data[p * n + k];
        if pivot == 0.0 {
            return 0.0;
        }
        if p != k {
            for j in 0..n {
                data.swap(k * n + j, p * n + j);
            }
            det = -det;
        }
        det *= pivot;
        for i in k + 1..n {
            let factor = data[i * n + k] / pivot;
            for j in k + 1..n {
                data[i * n + j] -= factor * data[k * n + j];
            }
        }
    }
    det
}

fn factor_in_place(a: &mut DenseMatrix, perm: &mut Vec<usize>) -> Result<(), SolveError> {
    let n = a.dim();
    let scales = ColumnScales::new(a)?;
    perm.clear();
    perm.extend(0..n);
    let data = a.as_mut_slice();
    for k in 0..n {
        let mut p = k;
        let mut best = data[k * n + k].abs();
        for i in k + 1..n {
            let v = data[i * n + k].abs();
            if v > best {
                best = v;
                p = i;
            }
        }
        let threshold = scales.threshold(k);
        if best <= threshold || best == 0.0 {
            return Err(SolveError::SingularMatrix {
                column: k,
                pivot: best,
                threshold,
            });
        }
        if p != k {
            for j in 0..n {
                data.swap(k * n + j, p * n + j);
            }
            perm.swap(k, p);
        }
        let pivot = data[k * n + k];
        for i in k + 1..n {
            let factor = data[i * n + k] / pivot;
            data[i * n + k] = factor;
            if factor != 0.0 {
                for j in k + 1..n {
                    data[i * n + j] -= factor * data[k * n + j];
                }
            }
        }
    }
    Ok(())
}

fn substitute(lu: &DenseMatrix, perm: &[usize], b: &mut [f64]) -> Result<(), SolveError> {
    let n = lu.dim();
    if b.len() != n {
        return Err(SolveError::DimensionMismatch {
            expected: n,
            found: b.len(),
        });
    }
    let data = lu.as_slice();
    // Apply the row permutation: y = P b.
    let mut permuted = [0.0_f64; 32];
    let mut heap;
    let y: &mut [f64] = if n <= permuted.len() {
        &mut permuted[..n]
    } else {
        heap = vec![0.0; n];
        &mut heap
    };
    for (yi, &pi) in y.iter_mut().zip(perm) {
        *yi = b[pi];
    }
    for i in 0..n {
        let mut s = y[i];
        for j in 0..i {
            s -= data[i * n + j] * y[j];
        }
        y[i] = s;
    }
    for i in (0..n).rev() {
        let mut s = y[i];
        for j in i + 1..n {
            s -= data[i * n + j] * y[j];
        }
        y[i] = s / data[i * n + i];
    }
    if y.iter().any(|v| !v.is_finite()) {
        return Err(SolveError::NonFinite);
    }
    b.copy_from_slice(y);
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;
    use proptest::prelude::*;

    #[test]
    fn symmetric_two_by_two() {
        let a = DenseMatrix::from_rows(&[[2.0, -1.0], [-1.0, 2.0]]).unwrap();
        let x = lu_solve(&a, &[1.0, 1.0]).unwrap();
        assert_relative_eq!(x[0], 1.0, epsilon = 1e-15);
        assert_relative_eq!(x[1], 1.0, epsilon = 1e-15);
    }

    #[test]
    fn lower_triangular_two_by_two() {
        let a = DenseMatrix::from_rows(&[[2.0, 0.0], [-1.0, 1.0]]).unwrap();
        let x = lu_solve(&a, &[1.5, 0.0]).unwrap();
        assert_relative_eq!(x[0], 0.75, epsilon = 1e-15);
        assert_relative_eq!(x[1], 0.75, epsilon = 1e-15);
    }

    #[test]
    fn pivoting_handles_zero_leading_entry() {
        let a = DenseMatrix::from_rows(&[[0.0, 1.0], [1.0, 0.0]]).unwrap();
        assert_eq!(lu_solve(&a, &[3.0, 4.0]).unwrap(), vec![4.0, 3.0]);
    }

    #[test]
    fn singular_matrix_is_reported() {
        let a = DenseMatrix::from_rows(&[[1.0, 2.0], [2.0, 4.0]]).unwrap();
        assert!(matches!(
            lu_solve(&a, &[1.0, 1.0]),
            Err(SolveError::SingularMatrix { column: 1, .. })
        ));
        let z = DenseMatrix::zeros(3);
        assert!(matches!(lu_solve(&z, &[0.0; 3]), Err(SolveError::SingularMatrix { .. })));
    }

    #[test]
    fn rhs_length_is_checked() {
        let a = DenseMatrix::identity(3);
        assert!(matches!(
            lu_solve(&a, &[1.0, 2.0]),
            Err(SolveError::DimensionMismatch { expected: 3, found: 2 })
        ));
    }

    #[test]
    fn determinant_matches_closed_forms() {
        let a = DenseMatrix::from_rows(&[[2.0, -1.0], [-1.0, 2.0]]).unwrap();
        assert_relative_eq!(determinant(&a), 3.0, epsilon = 1e-15);
        let p = DenseMatrix::from_rows(&[[0.0, 1.0], [1.0, 0.0]]).unwrap();
        assert_eq!(determinant(&p), -1.0);
        let s = DenseMatrix::from_rows(&[[1.0, 2.0], [2.0, 4.0]]).unwrap();
        assert_eq!(determinant(&s), 0.0);
    }

    #[test]
    fn factors_can_be_reused() {
        let a = DenseMatrix::from_rows(&[[4.0, 1.0, 0.0], [1.0, 4.0, 1.0], [0.0, 1.0, 4.0]]).unwrap();
        let f = LuFactors::new(&a).unwrap();
        for b in [[1.0, 0.0, 0.0], [0.0, 1.0, 0.0], [1.0, 2.0, 3.0]] {
            let x = f.solve(&b).unwrap();
            let r = a.mul_vec(&x).unwrap();
            for (ri, bi) in r.iter().zip(b) {
                assert_relative_eq!(*ri, bi, epsilon = 1e-14);
            }
        }
    }

    proptest! {
        /// Residual of the computed solution is at round-off level for
        /// diagonally dominant random systems.
        #[test]
        fn residual_is_small(
            n in 1usize..10,
            seed in proptest::collection::vec(-1.0f64..1.0, 100),
            rhs in proptest::collection::vec(-10.0f64..10.0, 10),
        ) {
            let mut a = DenseMatrix::zeros(n);
            for i in 0..n {
                for j in 0..n {
                    a[(i, j)] = seed[i * 10 + j];
                }
                a[(i, i)] += n as f64 + 1.0;
            }
            let b = &rhs[..n];
            let x = lu_solve(&a, b).unwrap();
            let r = a.mul_vec(&x).unwrap();
            for (ri, bi) in r.iter().zip(b) {
                prop_assert!((ri - bi).abs() <= 1e-12 * (1.0 + bi.abs()));
            }
        }
    }
}
