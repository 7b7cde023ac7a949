//! The scalar nonlinear relaxation `u' = −k|u|u + 1`.

use pds_core::PdsSystem;

use crate::{Problem, ProblemError};

/// Parameters of the scalar problem.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ScalarProblemSpec {
    /// Reaction coefficient `k > 0`.
    pub k: f64,
}

impl ScalarProblemSpec {
    /// Final time of the benchmark.
    pub const T_END: f64 = 0.15;

    /// Validated parameters.
    pub fn new(k: f64) -> Result<Self, ProblemError> {
        if !(k > 0.0 && k.is_finite()) {
            return Err(ProblemError::InvalidParameter {
                problem: "scalar",
                reason: format!("k must be positive and finite, got {k}"),
            });
        }
        Ok(Self { k })
    }

    /// Steady state `u∞ = √(1/k)`.
    pub fn steady_state(&self) -> f64 {
        (1.0 / self.k).sqrt()
    }

    /// Initial value `1.1 · u∞`.
    pub fn initial(&self) -> f64 {
        1.1 * self.steady_state()
    }

    /// Lipschitz constant `k|u₀| = 1.1 √k` on the solution range.
    pub fn lipschitz(&self) -> f64 {
        1.1 * self.k.sqrt()
    }

    /// Time step for a given CFL number, `Δt = CFL / C(k)`.
    pub fn dt_for_cfl(&self, cfl: f64) -> f64 {
        cfl / self.lipschitz()
    }
}

/// Builds `d₁₁ = k|u|u`, `p₁₁ = 0`, `r₁ = 1` (not conservative).
pub fn scalar_nonlinear(spec: ScalarProblemSpec) -> Problem {
    let k = spec.k;
    let system = PdsSystem::new("scalar", 1, |_, _| {}, move |u, d| d[(0, 0)] = k * u[0].abs() * u[0])
        .with_rest(|_, r| r[0] = 1.0)
        .conservative(false);
    Problem {
        system,
        initial: vec![spec.initial()],
        t_end: ScalarProblemSpec::T_END,
        steady_state: Some(vec![spec.steady_state()]),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use pds_core::State;

    #[test]
    fn reference_parameters() {
        let s = ScalarProblemSpec::new(1e4).unwrap();
        assert!((s.steady_state() - 0.01).abs() < 1e-17);
        assert!((s.initial() - 0.011).abs() < 1e-17);
        assert!((s.lipschitz() - 110.0).abs() < 1e-12);
        assert!((s.dt_for_cfl(1.0) - 1.0 / 110.0).abs() < 1e-16);
        assert!(ScalarProblemSpec::new(0.0).is_err());
    }

    #[test]
    fn steady_state_is_a_root() {
        let s = ScalarProblemSpec::new(1e4).unwrap();
        let pb = scalar_nonlinear(s);
        let f = pb.system.evaluate_rhs(&State::new(0.0, vec![s.steady_state()])).unwrap();
        assert!(f[0].abs() < 1e-14);
        assert!(!pb.system.is_conservative());
    }
}
