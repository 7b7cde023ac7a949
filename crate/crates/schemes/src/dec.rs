//! Deferred-correction integration weights.

use crate::nodes::gauss_legendre;
use crate::SchemeError;

/// Lagrange basis polynomial `ℓ_r(x)` on `nodes`, evaluated in product form.
pub fn lagrange_basis(nodes: &[f64], r: usize, x: f64) -> f64 {
    nodes
        .iter()
        .enumerate()
        .filter(|&(k, _)| k != r)
        .map(|(_, &xk)| (x - xk) / (nodes[r] - xk))
        .product()
}

/// Correction weights `θ[m][r] = ∫_{β₀}^{β_m} ℓ_r(s) ds` for nodes `β₀ < … < β_M`.
///
/// Row `m` integrates the interpolant of the node values from the first node
/// to node `m`; row 0 is identically zero. Integration is done with a
/// Gauss–Legendre rule of sufficient degree, which is exact for the
/// degree-`M` Lagrange polynomials up to round-off.
pub fn dec_weights(nodes: &[f64]) -> Result<Vec<Vec<f64>>, SchemeError> {
    for (i, a) in nodes.iter().enumerate() {
        if !a.is_finite() {
            return Err(SchemeError::InvalidParameter {
                scheme: "mpdec",
                reason: format!("node {i} is not finite"),
            });
        }
        for (j, b) in nodes.iter().enumerate().skip(i + 1) {
            if a == b {
                return Err(SchemeError::DuplicateNodes {
                    first: i,
                    second: j,
                    value: *a,
                });
            }
        }
    }
    let n = nodes.len();
    if n == 0 {
        return Ok(Vec::new());
    }
    if n == 2 {
        // Trapezoidal rule in closed form, so that the first-order method is
        // bit-for-bit the modified Patankar–Euler step.
        let h = 0.5 * (nodes[1] - nodes[0]);
        return Ok(vec![vec![0.0, 0.0], vec![h, h]]);
    }
    let degree = n - 1;
    let (gx, gw) = gauss_legendre(degree / 2 + 2)?;
    let start = nodes[0];
    let mut theta = vec![vec![0.0; n]; n];
    for (m, row) in theta.iter_mut().enumerate().skip(1) {
        let half = 0.5 * (nodes[m] - start);
        let mid = 0.5 * (nodes[m] + start);
        for (r, w) in row.iter_mut().enumerate() {
            *w = half
                * gx.iter()
                    .zip(&gw)
                    .map(|(&x, &wq)| wq * lagrange_basis(nodes, r, mid + half * x))
                    .sum::<f64>();
        }
    }
    Ok(theta)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::nodes::{equispaced_nodes, gauss_lobatto_nodes};
    use approx::assert_abs_diff_eq;

    #[test]
    fn trapezoid_and_simpson_rows() {
        let t = dec_weights(&[0.0, 1.0]).unwrap();
        assert_eq!(t[0], vec![0.0, 0.0]);
        assert_eq!(t[1], vec![0.5, 0.5]);
        let s = dec_weights(&[0.0, 0.5, 1.0]).unwrap();
        for (a, b) in s[1].iter().zip([5.0 / 24.0, 1.0 / 3.0, -1.0 / 24.0]) {
            assert_abs_diff_eq!(*a, b, epsilon = 1e-15);
        }
        for (a, b) in s[2].iter().zip([1.0 / 6.0, 2.0 / 3.0, 1.0 / 6.0]) {
            assert_abs_diff_eq!(*a, b, epsilon = 1e-15);
        }
    }

    #[test]
    fn duplicate_nodes_are_rejected() {
        assert!(matches!(
            dec_weights(&[0.0, 0.5, 0.5, 1.0]),
            Err(SchemeError::DuplicateNodes { first: 1, second: 2, .. })
        ));
    }

    #[test]
    fn rows_integrate_monomials_exactly() {
        for m in 1..=15 {
            for nodes in [equispaced_nodes(m), gauss_lobatto_nodes(m).unwrap()] {
                let theta = dec_weights(&nodes).unwrap();
                for (row, &b) in theta.iter().zip(&nodes) {
                    for k in 0..=m {
                        let q: f64 = row.iter().zip(&nodes).map(|(w, x)| w * x.powi(k as i32)).sum();
                        let exact = b.powi(k as i32 + 1) / (k as f64 + 1.0);
                        assert_abs_diff_eq!(q, exact, epsilon = 1e-12);
                    }
                }
            }
        }
    }
}
