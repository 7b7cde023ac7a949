use pds_core::{total_mass, PdsSystem, State};
use proptest::prelude::*;

/// A three-species cycle with nonlinear rates; conservative by construction.
fn cycle() -> PdsSystem {
    let rates = |u: &[f64]| [u[0] * u[1], 2.0 * u[1], 0.5 * u[2] * u[2]];
    PdsSystem::new(
        "cycle",
        3,
        move |u, p| {
            let k = rates(u);
            p[(1, 0)] = k[0];
            p[(2, 1)] = k[1];
            p[(0, 2)] = k[2];
        },
        move |u, d| {
            let k = rates(u);
            d[(0, 1)] = k[0];
            d[(1, 2)] = k[1];
            d[(2, 0)] = k[2];
        },
    )
    .conservative(true)
}

proptest! {
    /// For a conservative system the right-hand side sums to zero.
    #[test]
    fn rhs_of_conservative_system_has_zero_sum(u in proptest::collection::vec(1e-6f64..10.0, 3)) {
        let sys = cycle();
        sys.check_conservative(&[u.clone()], 0.0).unwrap();
        let f = sys.evaluate_rhs(&State::new(0.0, u.clone())).unwrap();
        let scale: f64 = f.iter().map(|x| x.abs()).sum::<f64>() + f64::MIN_POSITIVE;
        prop_assert!(total_mass(&f).abs() <= 4.0 * f64::EPSILON * scale);
    }
}
