//! Closed forms for the first MPRK(2,2,1) step on the linear exchange problem.

/// Overshoot polynomial `p(Δt) = Δt³ − Δt² − 2(ε/θ + (1−ε)/(1−θ))Δt − 2ε(1−ε)/(θ(1−θ))`.
///
/// The first MPRK(2,2,1) step does not overshoot the steady state exactly when `p(Δt) < 0`.
pub fn mprk22_overshoot_polynomial(eps: f64, theta: f64, dt: f64) -> f64 {
    let b = 2.0 * (eps / theta + (1.0 - eps) / (1.0 - theta));
    let c = 2.0 * eps * (1.0 - eps) / (theta * (1.0 - theta));
    ((dt - 1.0) * dt - b) * dt - c
}

/// The unique positive root of [`mprk22_overshoot_polynomial`], found by bisection.
pub fn mprk22_overshoot_root(eps: f64, theta: f64) -> f64 {
    let p = |x: f64| mprk22_overshoot_polynomial(eps, theta, x);
    let mut hi = 2.0;
    while p(hi) < 0.0 {
        hi *= 2.0;
    }
    let mut lo = 0.0;
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if p(mid) < 0.0 {
            lo = mid;
        } else {
            hi = mid;
        }
        if hi - lo <= 4.0 * f64::EPSILON * hi {
            break;
        }
    }
    0.5 * (lo + hi)
}

/// Second component after one MPRK(2,2,1) step from `(1 − ε, ε)`, as a ratio of cubics in `Δt`.
pub fn mprk22_first_step_u2(eps: f64, theta: f64, dt: f64) -> f64 {
    let (e, t, h) = (eps, theta, dt);
    let (ne, nt) = (1.0 - e, 1.0 - t);
    let num = 2.0 * ne * e * e
        + 2.0 * h * e * (e * nt + 2.0 * ne * t)
        + h * h * (ne * e * t + 3.0 * e * nt * t + 2.0 * ne * t * t)
        + h * h * h * (ne * t * t + nt * t * t);
    let den = 2.0 * ne * e
        + h * (2.0 * ne * e + 2.0 * e * nt + 2.0 * ne * t)
        + h * h * (nt * (2.0 * e + t) + ne * (e + 2.0 * t))
        + h * h * h * (e * nt + ne * t);
    num / den
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn limit_root_tends_to_two() {
        // For ε → 0 the root tends to (1 + √(1 + 8/(1−θ)))/2.
        let theta: f64 = 1e-8;
        let limit = 0.5 * (1.0 + (1.0 + 8.0 / (1.0 - theta)).sqrt());
        let z = mprk22_overshoot_root(1e-16, theta);
        assert!((z - limit).abs() < 1e-7, "{z} vs {limit}");
        assert!(mprk22_overshoot_polynomial(1e-8, 1e-8, 2.0) <= 0.0);
        assert!(mprk22_overshoot_root(1e-8, 1e-8) > 2.0);
    }

    #[test]
    fn steady_initial_state_is_fixed() {
        for dt in [0.1, 1.0, 7.0] {
            assert!((mprk22_first_step_u2(0.3, 0.3, dt) - 0.3).abs() < 1e-15);
        }
    }
}
