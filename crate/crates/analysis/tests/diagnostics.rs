//! End-to-end behaviour of the diagnostics on known methods.

use analysis::{
    direction_check, direction_scan, dt_bound_scan, mprk22_first_step_u2, mprk22_overshoot_root, oscillation_measure,
    scalar_cfl_scan, vanishing_ic_probe, DtBound, IcClass, OneStepMethod, ScanGrid, SCAN_TOLERANCE,
};
use proptest::prelude::*;
use schemes::{lookup_tableau, rk_positivity_threshold, Scheme, SchemeSpec};

fn method(text: &str) -> OneStepMethod {
    text.parse().unwrap()
}

fn coarse_grid() -> ScanGrid {
    ScanGrid::new(1e-8, 7, 1e-8, 7, 2f64.powi(-6), 2f64.powi(6), 8).unwrap()
}

#[test]
fn scan_is_independent_of_the_thread_count() {
    let m = method("mprk22:alpha=1");
    let grid = coarse_grid();
    let run = |threads| {
        rayon::ThreadPoolBuilder::new()
            .num_threads(threads)
            .build()
            .unwrap()
            .install(|| dt_bound_scan(&m, &grid).unwrap())
    };
    assert_eq!(run(1), run(4));
}

#[test]
fn mprk22_scan_bound_brackets_the_polynomial_root() {
    let grid = coarse_grid();
    let scan = dt_bound_scan(&method("mprk22:alpha=1"), &grid).unwrap();
    let DtBound::Finite(bound) = scan.dt_bound else {
        panic!("expected a finite bound, got {:?}", scan.dt_bound)
    };
    // The first failing grid step must exceed the smallest overshoot root over
    // the grid, and the bound itself must not.
    let root = grid
        .eps_values
        .iter()
        .flat_map(|&e| grid.theta_values.iter().map(move |&t| (e, t)))
        .filter(|(e, t)| e < t)
        .map(|(e, t)| mprk22_overshoot_root(e, t))
        .fold(f64::INFINITY, f64::min);
    let next = grid.dt_values.iter().copied().find(|&d| d > bound).unwrap();
    assert!(bound <= root * (1.0 + 1e-12) && next > root, "{bound} {root} {next}");
}

#[test]
fn runge_kutta_scan_bound_matches_the_stability_threshold() {
    let grid = coarse_grid();
    for name in ["radau_iia3", "trbdf2", "implicit_midpoint", "lobatto_iiic4"] {
        let t = lookup_tableau(name).unwrap();
        let threshold = rk_positivity_threshold(&t, 1e3).value();
        let scan = dt_bound_scan(&OneStepMethod::RungeKutta(t), &grid).unwrap();
        let bound = scan.dt_bound.value();
        let next = grid.dt_values.iter().copied().find(|&d| d > bound).unwrap();
        // One grid cell: the bound is the last grid step at or below the threshold.
        assert!(bound <= threshold * (1.0 + 1e-9) && next > threshold * (1.0 - 1e-9), "{name}: {bound} vs {threshold}");
    }
    let radau5 = OneStepMethod::RungeKutta(lookup_tableau("radau_iia5").unwrap());
    assert_eq!(dt_bound_scan(&radau5, &grid).unwrap().dt_bound, DtBound::Unbounded);
}

#[test]
fn bound_per_theta_never_undercuts_the_global_bound() {
    let scan = dt_bound_scan(&method("mpdec:order=3,nodes=gl"), &coarse_grid()).unwrap();
    let global = scan.dt_bound.value();
    for i in 0..scan.theta_values.len() {
        assert!(scan.bound_for_theta(i).value() >= global);
    }
    assert!(scan.records.iter().all(|r| r.failures == 0));
}

#[test]
fn vanishing_probe_separates_collapsing_methods() {
    for (text, class) in [
        ("mpe", IcClass::NoCollapse),
        ("mprk22:alpha=1", IcClass::NoCollapse),
        ("mprk22:alpha=2", IcClass::FirstOrderCollapse),
        ("mprk43:alpha=5,beta=0.5", IcClass::FirstOrderCollapse),
        ("mpdec:order=9,nodes=eq", IcClass::FirstOrderCollapse),
        ("mpdec:order=8,nodes=gl", IcClass::NoCollapse),
    ] {
        let r = vanishing_ic_probe(&method(text)).unwrap();
        assert_eq!(r.class, class, "{text}: u1 = {}", r.u1);
        assert!(r.u1 > 0.0 && r.u2 > 0.0);
        assert!((r.u1 + r.u2 - 1.0).abs() < 1e-14, "{text} conserves mass");
    }
}

#[test]
fn equispaced_eighth_order_deferred_correction_moves_the_wrong_way() {
    let m = method("mpdec:order=8,nodes=eq");
    assert!(!direction_check(&m, 2e-6, 4e-4, 64.0).unwrap());
    assert!(direction_check(&m, 2e-6, 4e-4, 1.0).unwrap());
}

#[test]
fn low_order_schemes_always_move_towards_the_steady_state() {
    let grid = coarse_grid();
    for text in ["mpe", "mprk22:alpha=1", "mprk22:alpha=0.5"] {
        let s = direction_scan(&method(text), &grid).unwrap();
        assert!(s.all_correct(), "{text}: {s:?}");
        assert_eq!(s.points, grid.dt_values.len() * grid.systems_per_dt());
    }
}

#[test]
fn direction_scan_reports_the_first_failure_in_grid_order() {
    let grid = ScanGrid {
        eps_values: vec![2e-6, 1e-3],
        theta_values: vec![4e-4, 0.5],
        dt_values: vec![1.0, 64.0],
    };
    let s = direction_scan(&method("mpdec:order=8,nodes=eq"), &grid).unwrap();
    assert!(!s.all_correct());
    assert_eq!(s.first_failure, Some((4e-4, 2e-6, 64.0)));
}

#[test]
fn scalar_runs_land_on_the_final_time() {
    let scheme = Scheme::new(SchemeSpec::Mpe).unwrap();
    let records = scalar_cfl_scan(&scheme, 1e4, &[0.5, 5.0, 50.0]).unwrap();
    assert_eq!(records.len(), 3);
    for r in &records {
        assert!(r.measure >= r.first_step_measure && r.measure >= 0.0);
        assert!(r.steps as f64 * r.dt >= 0.15 * (1.0 - 1e-12));
    }
    assert!(records.windows(2).all(|w| w[1].dt > w[0].dt));
    assert!(scalar_cfl_scan(&scheme, 1e4, &[0.0]).is_err());
}

#[test]
fn small_cfl_runs_stay_above_the_steady_state() {
    for text in ["mpe", "mprk22:alpha=1", "mprk43:alpha=5,beta=0.5", "mprkso43", "mpdec:order=9,nodes=eq", "sirk3"] {
        let scheme = Scheme::new(text.parse::<SchemeSpec>().unwrap()).unwrap();
        for r in scalar_cfl_scan(&scheme, 1e4, &[2f64.powi(-6), 0.5]).unwrap() {
            assert!(r.measure <= 5.0 * f64::EPSILON * 0.011, "{text} at CFL {}: {}", r.cfl, r.measure);
        }
    }
}

#[test]
fn patankar_euler_undershoot_matches_its_closed_form() {
    // One Patankar–Euler step on u' = 1 − k u² from u₀ is (u₀ + Δt)/(1 + Δt k u₀),
    // which drops below u∞ = 1/√k once Δt k u₀ is large enough.
    let scheme = Scheme::new(SchemeSpec::Mpe).unwrap();
    let (k, u0) = (1e4, 0.011);
    for r in scalar_cfl_scan(&scheme, k, &[2.0, 5.0, 10.0]).unwrap() {
        assert!(r.steps > 1, "the first step has full length");
        let u1 = (u0 + r.dt) / (1.0 + r.dt * k * u0);
        let want = (0.01 - u1).max(0.0);
        assert!(want > 0.0);
        assert!((r.first_step_measure - want).abs() <= 1e-15, "CFL {}: {} vs {want}", r.cfl, r.first_step_measure);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn mprk22_step_matches_its_rational_closed_form(
        eps in 1e-6f64..0.999,
        theta in 1e-3f64..0.999,
        dt in 1e-3f64..50.0,
    ) {
        let u = method("mprk22:alpha=1").linear_step(theta, eps, dt).unwrap();
        let want = mprk22_first_step_u2(eps, theta, dt);
        prop_assert!((u[1] - want).abs() <= 1e-12 * want.max(1e-300) + 1e-15, "{} vs {}", u[1], want);
    }

    #[test]
    fn patankar_euler_never_oscillates(
        eps in 1e-12f64..0.999,
        theta in 1e-6f64..0.999,
        dt in 1e-3f64..1e3,
    ) {
        let u = method("mpe").linear_step(theta, eps, dt).unwrap();
        prop_assert!(oscillation_measure(1.0 - eps, u[0], 1.0 - theta) <= SCAN_TOLERANCE);
    }
}
