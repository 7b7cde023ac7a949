//! The nine-species "high irradiance response" kinetics.

use pds_core::PdsSystem;

use crate::{Problem, ProblemError};

/// Rate constants, source and initial floor of the HIRES problem.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct HiresSpec {
    /// `k₁`.
    pub k1: f64,
    /// `k₂`.
    pub k2: f64,
    /// `k₃`.
    pub k3: f64,
    /// `k₄`.
    pub k4: f64,
    /// `k₅`.
    pub k5: f64,
    /// `k₆`.
    pub k6: f64,
    /// `k₊`.
    pub kplus: f64,
    /// `k₋`.
    pub kminus: f64,
    /// `k*`.
    pub kstar: f64,
    /// Constant source `σ` of the first species.
    pub sigma: f64,
    /// Value replacing the zero initial components.
    pub ic_epsilon: f64,
    /// Final time.
    pub t_end: f64,
}

impl Default for HiresSpec {
    fn default() -> Self {
        Self {
            k1: 1.71,
            k2: 0.43,
            k3: 8.32,
            k4: 0.69,
            k5: 0.035,
            k6: 8.32,
            kplus: 280.0,
            kminus: 0.69,
            kstar: 0.69,
            sigma: 0.0007,
            ic_epsilon: 1e-35,
            t_end: 321.8122,
        }
    }
}

impl HiresSpec {
    /// Default constants with a custom initial floor.
    pub fn with_epsilon(ic_epsilon: f64) -> Result<Self, ProblemError> {
        if !(ic_epsilon > 0.0 && ic_epsilon < 1.0) {
            return Err(ProblemError::InvalidParameter {
                problem: "hires",
                reason: format!("eps must lie in (0, 1), got {ic_epsilon}"),
            });
        }
        Ok(Self {
            ic_epsilon,
            ..Self::default()
        })
    }
}

/// Builds HIRES as a production–destruction–rest system with `p = dᵀ` and `r₁ = σ`.
///
/// The seventh unknown is twice the seventh species of the classical
/// formulation, which makes every reaction an exchange of equal amounts;
/// the ninth species is a sink.
pub fn hires(spec: HiresSpec) -> Problem {
    let HiresSpec {
        k1,
        k2,
        k3,
        k4,
        k5,
        k6,
        kplus,
        kminus,
        kstar,
        sigma,
        ..
    } = spec;
    // (receiver, donor, rate(u)) with zero-based indices; p[i][j] = d[j][i] = rate.
    let edges = move |u: &[f64], mut set: Box<dyn FnMut(usize, usize, f64) + '_>| {
        set(1, 0, k1 * u[0]);
        set(0, 1, k2 * u[1]);
        set(3, 1, k3 * u[1]);
        set(3, 2, k1 * u[2]);
        set(0, 2, k6 * u[2]);
        set(2, 3, k2 * u[3]);
        set(5, 3, k4 * u[3]);
        set(5, 4, k1 * u[4]);
        set(2, 4, k5 * u[4]);
        set(4, 5, k2 * u[5]);
        set(4, 6, 0.5 * k2 * u[6]);
        set(5, 6, 0.5 * kminus * u[6]);
        set(8, 6, 0.5 * kstar * u[6]);
        set(6, 5, kplus * u[5] * u[7]);
        set(6, 7, kplus * u[5] * u[7]);
        set(7, 6, 0.5 * (kminus + kstar + k2) * u[6]);
    };
    let system = PdsSystem::new(
        "hires",
        9,
        move |u, p| edges(u, Box::new(|i, j, v| p[(i, j)] = v)),
        move |u, d| edges(u, Box::new(|i, j, v| d[(j, i)] = v)),
    )
    .with_rest(move |_, r| r[0] = sigma)
    .conservative(false);
    let e = spec.ic_epsilon;
    let mut initial = vec![e; 9];
    initial[0] = 1.0;
    initial[7] = 0.0057;
    Problem {
        system,
        initial,
        t_end: spec.t_end,
        steady_state: None,
    }
}
