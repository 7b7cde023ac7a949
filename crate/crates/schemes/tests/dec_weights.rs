//! Deferred-correction weights against exact rational integration.

use num::{BigInt, BigRational, One, ToPrimitive, Zero};
use schemes::dec::dec_weights;
use schemes::nodes::{equispaced_nodes, gauss_lobatto_nodes};
use schemes::MAX_DEC_ORDER;

type Q = BigRational;

fn q(n: i64, d: i64) -> Q {
    Q::new(BigInt::from(n), BigInt::from(d))
}

/// Coefficients (lowest degree first) of the Lagrange basis polynomial `ℓ_r`.
fn lagrange_coefficients(nodes: &[Q], r: usize) -> Vec<Q> {
    let mut poly = vec![Q::one()];
    for (k, xk) in nodes.iter().enumerate() {
        if k == r {
            continue;
        }
        let scale = Q::one() / (&nodes[r] - xk);
        let mut next = vec![Q::zero(); poly.len() + 1];
        for (i, c) in poly.iter().enumerate() {
            next[i + 1] += c * &scale;
            next[i] -= c * xk * &scale;
        }
        poly = next;
    }
    poly
}

fn integrate_to(poly: &[Q], x: &Q) -> Q {
    let mut acc = Q::zero();
    let mut power = x.clone();
    for (i, c) in poly.iter().enumerate() {
        acc += c * &power / Q::from_integer(BigInt::from(i + 1));
        power *= x;
    }
    acc
}

#[test]
fn equispaced_weights_match_exact_rational_integrals() {
    for m in 1..MAX_DEC_ORDER {
        let exact_nodes: Vec<Q> = (0..=m as i64).map(|k| q(k, m as i64)).collect();
        let theta = dec_weights(&equispaced_nodes(m)).unwrap();
        for r in 0..=m {
            let poly = lagrange_coefficients(&exact_nodes, r);
            for (row, node) in theta.iter().zip(&exact_nodes) {
                let exact = integrate_to(&poly, node).to_f64().unwrap();
                let got = row[r];
                assert!(
                    (got - exact).abs() <= 1e-12 * exact.abs().max(1.0),
                    "M={m} r={r}: {got} vs {exact}"
                );
            }
        }
    }
}

#[test]
fn quadrature_exactness_for_every_order_and_family() {
    for order in 1..=MAX_DEC_ORDER {
        let m = order.saturating_sub(1).max(1);
        for nodes in [equispaced_nodes(m), gauss_lobatto_nodes(m).unwrap()] {
            let theta = dec_weights(&nodes).unwrap();
            for (row, &b) in theta.iter().zip(&nodes) {
                for k in 0..=m {
                    let quad: f64 = row.iter().zip(&nodes).map(|(w, x)| w * x.powi(k as i32)).sum();
                    let exact = b.powi(k as i32 + 1) / (k as f64 + 1.0);
                    assert!((quad - exact).abs() <= 1e-10, "order {order} degree {k}: {quad} vs {exact}");
                }
            }
        }
    }
}

#[test]
fn lobatto_nodes_closed_forms_and_symmetry() {
    assert_eq!(gauss_lobatto_nodes(1).unwrap(), vec![0.0, 1.0]);
    let three = gauss_lobatto_nodes(2).unwrap();
    assert!((three[1] - 0.5).abs() < 1e-15);
    let four = gauss_lobatto_nodes(3).unwrap();
    let s = 1.0 / 5f64.sqrt();
    for (a, b) in four.iter().zip([0.0, 0.5 * (1.0 - s), 0.5 * (1.0 + s), 1.0]) {
        assert!((a - b).abs() < 1e-15, "{four:?}");
    }
    for m in 1..MAX_DEC_ORDER {
        let x = gauss_lobatto_nodes(m).unwrap();
        for (a, b) in x.iter().zip(x.iter().rev()) {
            assert!((a + b - 1.0).abs() < 1e-14, "M={m}: {x:?}");
        }
        assert!(x.windows(2).all(|w| w[0] < w[1]));
    }
}
