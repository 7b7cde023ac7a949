//! One-step closed forms on the linear exchange problem.

mod common;

use common::scheme;
use problems::{linear2x2, LinearSystemSpec};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

#[test]
fn mprk22_vanishing_limit_matches_rational_function() {
    // For ε → 0 and θ = 1/2 one step of MPRK(2,2,1) gives
    // u₁ = (8 + 6Δt + Δt²)/(8 + 10Δt + 4Δt²).
    let s = scheme("mprk22:alpha=1");
    let pb = linear2x2(LinearSystemSpec::new(0.5, 1e-300).unwrap());
    for dt in [0.5, 1.0, 2.0] {
        let u = s.advance(&pb.system, &pb.initial, dt).unwrap();
        let expected = (8.0 + 6.0 * dt + dt * dt) / (8.0 + 10.0 * dt + 4.0 * dt * dt);
        assert!((u[0] - expected).abs() < 1e-12, "dt={dt}: {} vs {expected}", u[0]);
    }
    let u = s.advance(&pb.system, &pb.initial, 1.0).unwrap();
    assert!((u[0] - 15.0 / 22.0).abs() < 1e-15);
}

#[test]
fn patankar_euler_closed_form_on_random_systems() {
    // u₁¹(1 + Δt) = u₁⁰ + Δt(1 − θ), since u₂¹ = 1 − u₁¹.
    let s = scheme("mpe");
    let mut rng = ChaCha8Rng::seed_from_u64(20240611);
    for _ in 0..10 {
        let theta: f64 = rng.gen_range(0.0..1.0);
        let eps: f64 = 10f64.powf(rng.gen_range(-12.0..-0.31));
        let dt: f64 = 2f64.powf(rng.gen_range(-6.0..6.0));
        let pb = linear2x2(LinearSystemSpec::new(theta, eps).unwrap());
        let u = s.advance(&pb.system, &pb.initial, dt).unwrap();
        let expected = (pb.initial[0] + dt * (1.0 - theta)) / (1.0 + dt);
        assert!((u[0] - expected).abs() <= 4.0 * f64::EPSILON, "θ={theta} ε={eps} Δt={dt}");
    }
}

/// `log₂` of the ratio of one-step errors at `dt` and `dt/2`.
fn local_order(text: &str, theta: f64, eps: f64, dt: f64) -> f64 {
    let spec = LinearSystemSpec::new(theta, eps).unwrap();
    let pb = linear2x2(spec);
    let s = scheme(text);
    let err = |h: f64| {
        let u = s.advance(&pb.system, &pb.initial, h).unwrap();
        let ex = spec.exact(h);
        (u[0] - ex[0]).abs()
    };
    (err(dt) / err(dt / 2.0)).log2()
}

#[test]
fn third_order_shu_osher_scheme_has_fourth_order_local_error() {
    // A third-order method has local error O(Δt⁴); reading the wrong stage
    // into the last denominator drops this to O(Δt²).
    let p = local_order("mprkso43", 0.5, 0.3, 2f64.powi(-5));
    assert!((p - 4.0).abs() < 0.2, "local order {p}");
}

#[test]
fn local_orders_of_the_families() {
    for (text, expected) in [
        ("mpe", 2.0),
        ("mprk22:alpha=1", 3.0),
        ("mprk22:alpha=0.5", 3.0),
        ("mprk32", 3.0),
        ("mprk43:alpha=0.9,beta=0.6", 4.0),
        ("mpdec:order=4,nodes=gl", 5.0),
        ("sirk2", 3.0),
        ("sirk3", 3.0),
    ] {
        let p = local_order(text, 0.5, 0.3, 2f64.powi(-5));
        assert!((p - expected).abs() < 0.25, "{text}: local order {p}");
    }
}
