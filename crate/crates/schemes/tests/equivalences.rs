//! Scheme identities on the linear exchange problem.

mod common;

use common::scheme;
use problems::{linear2x2, LinearSystemSpec};
use schemes::lookup_tableau;
use smallsolve::DenseMatrix;

const DTS: [f64; 4] = [0.5, 1.0, 2.0, 4.0];
const CASES: [(f64, f64); 5] = [(0.5, 0.01), (0.3, 0.1), (0.9, 1e-8), (1e-4, 0.4), (0.999, 1e-300)];

fn assert_close(a: &[f64], b: &[f64], rel: f64, what: &str) {
    for (x, y) in a.iter().zip(b) {
        assert!((x - y).abs() <= rel * y.abs().max(f64::MIN_POSITIVE), "{what}: {a:?} vs {b:?}");
    }
}

#[test]
fn first_order_deferred_correction_is_patankar_euler_bitwise() {
    let mpe = scheme("mpe");
    for nodes in ["eq", "gl"] {
        let dec = scheme(&format!("mpdec:order=1,nodes={nodes}"));
        for (theta, eps) in CASES {
            let pb = linear2x2(LinearSystemSpec::new(theta, eps).unwrap());
            for dt in DTS {
                let a = dec.advance(&pb.system, &pb.initial, dt).unwrap();
                let b = mpe.advance(&pb.system, &pb.initial, dt).unwrap();
                assert_eq!(a, b, "theta={theta} eps={eps} dt={dt}");
            }
        }
    }
}

#[test]
fn second_order_deferred_correction_is_mprk22_with_unit_alpha() {
    let mprk = scheme("mprk22:alpha=1");
    for nodes in ["eq", "gl"] {
        let dec = scheme(&format!("mpdec:order=2,nodes={nodes}"));
        for (theta, eps) in CASES {
            let pb = linear2x2(LinearSystemSpec::new(theta, eps).unwrap());
            for dt in DTS {
                let a = dec.advance(&pb.system, &pb.initial, dt).unwrap();
                let b = mprk.advance(&pb.system, &pb.initial, dt).unwrap();
                assert_close(&a, &b, 1e-13, &format!("theta={theta} eps={eps} dt={dt}"));
            }
        }
    }
}

#[test]
fn patankar_euler_is_implicit_euler_on_linear_conservative_systems() {
    let mpe = scheme("mpe");
    let euler = lookup_tableau("implicit_euler").unwrap();
    for (theta, eps) in CASES {
        let spec = LinearSystemSpec::new(theta, eps).unwrap();
        let pb = linear2x2(spec);
        let l = DenseMatrix::from_rows(&spec.matrix()).unwrap();
        for dt in DTS {
            let a = mpe.advance(&pb.system, &pb.initial, dt).unwrap();
            let b = euler.linear_step(&l, &pb.initial, dt).unwrap();
            // Compare against the mass-scaled magnitude: the implicit Euler
            // solve is an unstructured LU and carries absolute round-off.
            for (x, y) in a.iter().zip(&b) {
                assert!((x - y).abs() <= 1e-13, "theta={theta} eps={eps} dt={dt}: {a:?} vs {b:?}");
            }
        }
    }
}
