//! Exact solutions, sign structure and conservativity of the benchmark problems.

use problems::{
    exponential_time_grid_with, hires, linear2x2, robertson, scalar_nonlinear, v1_component, HiresSpec,
    LinearSystemSpec, ProblemSpec, RobertsonSpec, ScalarProblemSpec,
};
use proptest::prelude::*;
use schemes::{Scheme, SchemeSpec};

proptest! {
    #![proptest_config(ProptestConfig::with_cases(20))]

    #[test]
    fn linear_exact_solution_satisfies_the_ode(
        theta in 0.0f64..=1.0,
        eps in 1e-6f64..0.999,
        t in 0.01f64..10.0,
    ) {
        let spec = LinearSystemSpec::new(theta, eps).unwrap();
        let h = 1e-6;
        let (up, um, u) = (spec.exact(t + h), spec.exact(t - h), spec.exact(t));
        let m = spec.matrix();
        for i in 0..2 {
            let fd = (up[i] - um[i]) / (2.0 * h);
            let rhs = m[i][0] * u[0] + m[i][1] * u[1];
            prop_assert!((fd - rhs).abs() <= 1e-6 * rhs.abs().max(1e-3), "i={i}: {fd} vs {rhs}");
        }
    }

    #[test]
    fn slow_mode_decays_exactly_exponentially(theta in 0.0f64..=1.0, eps in 1e-6f64..0.999, t in 0.0f64..20.0) {
        let spec = LinearSystemSpec::new(theta, eps).unwrap();
        let v0 = v1_component(&spec.initial(), theta);
        let vt = v1_component(&spec.exact(t), theta);
        // v₁ is a difference of O(1) components, so allow round-off on that scale too.
        let tol = 1e-12 * v0.abs() + 4.0 * f64::EPSILON;
        prop_assert!((vt - v0 * (-t).exp()).abs() <= tol, "{vt} vs {}", v0 * (-t).exp());
    }

    #[test]
    fn kinetics_rates_are_nonnegative(u3 in prop::collection::vec(1e-30f64..10.0, 3), u9 in prop::collection::vec(1e-30f64..10.0, 9)) {
        for (pb, u) in [(robertson(RobertsonSpec::default()), &u3), (hires(HiresSpec::default()), &u9)] {
            let e = pb.system.evaluate(u).unwrap();
            let n = pb.system.dim();
            for i in 0..n {
                prop_assert!(e.r[i] >= 0.0);
                for j in 0..n {
                    prop_assert!(e.p[(i, j)] >= 0.0 && e.d[(i, j)] >= 0.0, "{} ({i},{j})", pb.system.name());
                }
            }
        }
    }

    #[test]
    fn exponential_grids_close_exactly(t1 in 1e-3f64..1e12, n in 1usize..500, f in 1e-9f64..0.5) {
        let g = exponential_time_grid_with(0.0, t1, n, f).unwrap();
        prop_assert_eq!(g.len(), n + 1);
        prop_assert!(g.windows(2).all(|w| w[1] > w[0]));
        let total: f64 = g.windows(2).map(|w| w[1] - w[0]).sum();
        prop_assert!((total - t1).abs() <= 1e-12 * t1);
    }
}

#[test]
fn conservative_problems_pass_the_exact_pairing_check() {
    let samples: Vec<Vec<f64>> = vec![vec![0.3, 0.7, 1e-9], vec![1.0, 2e-5, 0.5], vec![1e-12, 1.0, 3.0]];
    let linear = linear2x2(LinearSystemSpec::new(0.37, 0.2).unwrap());
    let two: Vec<Vec<f64>> = samples.iter().map(|s| s[..2].to_vec()).collect();
    assert!(linear.system.is_conservative());
    linear.system.check_conservative(&two, 0.0).unwrap();
    let rob = robertson(RobertsonSpec::default());
    assert!(rob.system.is_conservative());
    rob.system.check_conservative(&samples, 0.0).unwrap();
    assert!(!hires(HiresSpec::default()).system.is_conservative());
    assert!(!scalar_nonlinear(ScalarProblemSpec::new(1e4).unwrap()).system.is_conservative());
}

#[test]
fn patankar_euler_keeps_the_scalar_steady_state() {
    let spec = ScalarProblemSpec::new(1e4).unwrap();
    let pb = scalar_nonlinear(spec);
    let ustar = spec.steady_state();
    let mpe = Scheme::new(SchemeSpec::Mpe).unwrap();
    for cfl in [0.1, 1.0, 10.0] {
        let u = mpe.advance(&pb.system, &[ustar], spec.dt_for_cfl(cfl)).unwrap();
        assert!((u[0] - ustar).abs() <= 1e-12 * ustar, "{} vs {ustar}", u[0]);
    }
}

#[test]
fn every_named_problem_builds_with_positive_initial_data() {
    for name in problems::PROBLEM_NAMES {
        let spec: ProblemSpec = name.parse().unwrap();
        let pb = spec.build().unwrap();
        assert_eq!(pb.initial.len(), pb.system.dim());
        assert!(pb.initial.iter().all(|v| *v > 0.0), "{name}");
        assert!(pb.t_end > 0.0);
        pb.system.evaluate(&pb.initial).unwrap();
    }
}
