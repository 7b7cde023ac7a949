//! The linear two-species exchange problem.

use pds_core::PdsSystem;

use crate::{Problem, ProblemError};

/// Parameters of `u₁' = −θu₁ + (1−θ)u₂`, `u₂' = θu₁ − (1−θ)u₂` with `u(0) = (1−ε, ε)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LinearSystemSpec {
    /// Rate of `u₁ → u₂`; `1 − θ` is the rate of `u₂ → u₁`.
    pub theta: f64,
    /// Initial value of the second component.
    pub epsilon: f64,
}

impl LinearSystemSpec {
    /// Validated parameters: `0 ≤ θ ≤ 1`, `0 < ε < 1`.
    pub fn new(theta: f64, epsilon: f64) -> Result<Self, ProblemError> {
        if !(0.0..=1.0).contains(&theta) {
            return Err(ProblemError::InvalidParameter {
                problem: "linear2x2",
                reason: format!("theta must lie in [0, 1], got {theta}"),
            });
        }
        if !(epsilon > 0.0 && epsilon < 1.0) {
            return Err(ProblemError::InvalidParameter {
                problem: "linear2x2",
                reason: format!("eps must lie in (0, 1), got {epsilon}"),
            });
        }
        Ok(Self { theta, epsilon })
    }

    /// Initial state `(1 − ε, ε)`.
    pub fn initial(&self) -> Vec<f64> {
        vec![1.0 - self.epsilon, self.epsilon]
    }

    /// Steady state `(1 − θ, θ)`.
    pub fn steady_state(&self) -> Vec<f64> {
        vec![1.0 - self.theta, self.theta]
    }

    /// Exact solution `u(t) = u* + (θ − ε) e^{−t} (1, −1)`.
    ///
    /// Evaluated as the convex combination `e^{−t} u(0) + (1 − e^{−t}) u*`,
    /// which keeps tiny components such as `ε = 10⁻³⁰⁰` exact at `t = 0`.
    pub fn exact(&self, t: f64) -> Vec<f64> {
        let e = (-t).exp();
        let w = -(-t).exp_m1();
        vec![
            e * (1.0 - self.epsilon) + w * (1.0 - self.theta),
            e * self.epsilon + w * self.theta,
        ]
    }

    /// System matrix `[[−θ, 1−θ], [θ, −(1−θ)]]`.
    pub fn matrix(&self) -> [[f64; 2]; 2] {
        let th = self.theta;
        [[-th, 1.0 - th], [th, -(1.0 - th)]]
    }
}

/// The general exchange `u₁' = −a u₁ + b u₂`, `u₂' = a u₁ − b u₂`.
///
/// Rescaling time by `a + b` turns it into [`LinearSystemSpec`] with `θ = a/(a+b)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GeneralLinearSpec {
    /// Rate of `u₁ → u₂`.
    pub a: f64,
    /// Rate of `u₂ → u₁`.
    pub b: f64,
}

impl GeneralLinearSpec {
    /// Time scale `a + b` and the equivalent normalised system.
    pub fn normalise(&self, epsilon: f64) -> Result<(f64, LinearSystemSpec), ProblemError> {
        let s = self.a + self.b;
        if !(self.a >= 0.0 && self.b >= 0.0 && s > 0.0 && s.is_finite()) {
            return Err(ProblemError::InvalidParameter {
                problem: "linear2x2",
                reason: format!("rates must be non-negative with a positive sum, got a = {}, b = {}", self.a, self.b),
            });
        }
        Ok((s, LinearSystemSpec::new(self.a / s, epsilon)?))
    }
}

/// Builds the linear exchange system with `p₁₂ = d₂₁ = (1−θ)u₂`, `p₂₁ = d₁₂ = θu₁`.
pub fn linear2x2(spec: LinearSystemSpec) -> Problem {
    let th = spec.theta;
    let system = PdsSystem::new(
        "linear2x2",
        2,
        move |u, p| {
            p[(0, 1)] = (1.0 - th) * u[1];
            p[(1, 0)] = th * u[0];
        },
        move |u, d| {
            d[(1, 0)] = (1.0 - th) * u[1];
            d[(0, 1)] = th * u[0];
        },
    )
    .conservative(true);
    Problem {
        system,
        initial: spec.initial(),
        t_end: 1.0,
        steady_state: Some(spec.steady_state()),
    }
}

/// The decoupled component `v₁ = θu₁ − (1−θ)u₂`, which decays like `e^{−t}`.
pub fn v1_component(u: &[f64], theta: f64) -> f64 {
    theta * u[0] - (1.0 - theta) * u[1]
}

#[cfg(test)]
mod tests {
    use super::*;
    use pds_core::State;

    #[test]
    fn parameter_ranges() {
        assert!(LinearSystemSpec::new(1.2, 0.1).is_err());
        assert!(LinearSystemSpec::new(0.5, 0.0).is_err());
        assert!(LinearSystemSpec::new(0.0, 1e-300).is_ok());
    }

    #[test]
    fn steady_state_and_rhs() {
        let spec = LinearSystemSpec::new(0.5, 0.1).unwrap();
        let pb = linear2x2(spec);
        let f = pb.system.evaluate_rhs(&State::new(0.0, vec![0.5, 0.5])).unwrap();
        assert_eq!(f, vec![0.0, 0.0]);
        let f = pb.system.evaluate_rhs(&State::new(0.0, vec![1.0, 1e-300])).unwrap();
        assert!((f[0] + 0.5).abs() < 1e-15 && (f[1] - 0.5).abs() < 1e-15);
        let spec0 = LinearSystemSpec::new(0.0, 0.1).unwrap();
        assert_eq!(spec0.steady_state(), vec![1.0, 0.0]);
    }

    #[test]
    fn exact_solution_endpoints() {
        let spec = LinearSystemSpec::new(0.5, 1e-300).unwrap();
        assert_eq!(spec.exact(0.0), spec.initial());
        let u = spec.exact(1.0);
        assert!((u[0] - (0.5 + 0.5 * (-1f64).exp())).abs() < 1e-15);
        assert!((u[1] - (0.5 - 0.5 * (-1f64).exp())).abs() < 1e-15);
        let inf = spec.exact(800.0);
        assert_eq!(inf, spec.steady_state());
    }

    #[test]
    fn v1_examples() {
        assert_eq!(v1_component(&[0.75, 0.25], 0.25), 0.0);
        assert_eq!(v1_component(&[1.0, 0.0], 0.5), 0.5);
        assert_eq!(v1_component(&[0.5, 0.5], 0.25), -0.25);
    }

    #[test]
    fn general_rates_rescale() {
        let (s, spec) = GeneralLinearSpec { a: 3.0, b: 1.0 }.normalise(0.2).unwrap();
        assert_eq!(s, 4.0);
        assert_eq!(spec.theta, 0.75);
        assert!(GeneralLinearSpec { a: 0.0, b: 0.0 }.normalise(0.2).is_err());
    }
}
