//! The Robertson stiff chemical kinetics.

use pds_core::PdsSystem;

use crate::{Problem, ProblemError};

/// Rate constants and initial-value floor of the Robertson problem.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RobertsonSpec {
    /// Rate of `u₁ → u₂`.
    pub k1: f64,
    /// Rate of `2u₂ → u₂ + u₃`.
    pub k2: f64,
    /// Rate of `u₂ + u₃ → u₁ + u₃`.
    pub k3: f64,
    /// Value replacing the zero initial components.
    pub ic_epsilon: f64,
    /// Final time.
    pub t_end: f64,
}

impl Default for RobertsonSpec {
    fn default() -> Self {
        Self {
            k1: 0.04,
            k2: 3e7,
            k3: 1e4,
            ic_epsilon: 1e-180,
            t_end: 1e10,
        }
    }
}

impl RobertsonSpec {
    /// Default rates with a custom initial floor.
    pub fn with_epsilon(ic_epsilon: f64) -> Result<Self, ProblemError> {
        if !(ic_epsilon > 0.0 && ic_epsilon < 1.0) {
            return Err(ProblemError::InvalidParameter {
                problem: "robertson",
                reason: format!("eps must lie in (0, 1), got {ic_epsilon}"),
            });
        }
        Ok(Self {
            ic_epsilon,
            ..Self::default()
        })
    }
}

/// Builds the conservative Robertson system with `u(0) = (1, ε, ε)`.
///
/// Non-zero entries: `p₁₂ = d₂₁ = k₃u₂u₃`, `p₂₁ = d₁₂ = k₁u₁`, `p₃₂ = d₂₃ = k₂u₂²`.
pub fn robertson(spec: RobertsonSpec) -> Problem {
    let RobertsonSpec { k1, k2, k3, .. } = spec;
    let system = PdsSystem::new(
        "robertson",
        3,
        move |u, p| {
            p[(0, 1)] = k3 * u[1] * u[2];
            p[(1, 0)] = k1 * u[0];
            p[(2, 1)] = k2 * u[1] * u[1];
        },
        move |u, d| {
            d[(1, 0)] = k3 * u[1] * u[2];
            d[(0, 1)] = k1 * u[0];
            d[(1, 2)] = k2 * u[1] * u[1];
        },
    )
    .conservative(true);
    let e = spec.ic_epsilon;
    Problem {
        system,
        initial: vec![1.0, e, e],
        t_end: spec.t_end,
        steady_state: Some(vec![0.0, 0.0, 1.0]),
    }
}
