//! Single-step integrators for production–destruction systems.

use pds_core::{PdEval, PdsSystem, State};

use crate::dec::dec_weights;
use crate::nodes::{equispaced_nodes, gauss_lobatto_nodes};
use crate::patankar::{
    check_finite, check_positive, inv_all, inv_clamped, inv_geometric_all, StageSystem,
};
use crate::spec::{mprk43_in_positive_region, Mprk43LowerBound, NodeFamily, SchemeSpec};
use crate::SchemeError;

/// Optimal coefficients of the third-order Shu–Osher MPRK(4,3) scheme.
pub mod mprkso43 {
    #![allow(missing_docs)]
    pub const N1: f64 = 2.569046025732011E-01;
    pub const N2: f64 = 7.430953974267989E-01;
    pub const A10: f64 = 1.0;
    pub const A20: f64 = 9.2600312554031827E-01;
    pub const A21: f64 = 7.3996874459681783E-02;
    pub const A30: f64 = 7.0439040373427619E-01;
    pub const A31: f64 = 2.0662904223744017E-10;
    pub const A32: f64 = 2.9560959605909481E-01;
    pub const B10: f64 = 4.7620819268131703E-01;
    pub const B20: f64 = 7.7545442722396801E-02;
    pub const B21: f64 = 5.9197500149679749E-01;
    pub const B30: f64 = 2.0044747790361456E-01;
    pub const B31: f64 = 6.8214380786704851E-10;
    pub const B32: f64 = 5.9121918658514827E-01;
    pub const ETA1: f64 = 3.777285888379173E-02;
    pub const ETA2: f64 = 1.0 / 3.0;
    pub const ETA3: f64 = 1.868649805549811E-01;
    pub const ETA4: f64 = 2.224876040351123;
    pub const Z: f64 = 6.288938077828750E-01;
    pub const S: f64 = 5.721964308755304;
}

/// Derived MPRK(4,3,α,β) coefficients.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Mprk43Coefficients {
    /// `a21 = α`.
    pub a21: f64,
    /// Third-stage weight on the first stage.
    pub a31: f64,
    /// Third-stage weight on the second stage.
    pub a32: f64,
    /// Final weights.
    pub b: [f64; 3],
    /// Exponent parameter of the third-stage denominator.
    pub p: f64,
    /// Exponent parameter of the auxiliary denominator (`q = a21`).
    pub q: f64,
    /// Auxiliary weights `β₁ = 1 − β₂`, `β₂ = 1/(2 a21)`.
    pub beta: [f64; 2],
}

impl Mprk43Coefficients {
    /// Butcher coefficients for `(α, β)`; the caller must have validated the spec.
    pub fn new(alpha: f64, beta: f64) -> Self {
        let den = alpha * (2.0 - 3.0 * alpha);
        let a31 = (3.0 * alpha * beta * (1.0 - alpha) - beta * beta) / den;
        let a32 = beta * (beta - alpha) / den;
        let b1 = 1.0 + (2.0 - 3.0 * (alpha + beta)) / (6.0 * alpha * beta);
        let b2 = (3.0 * beta - 2.0) / (6.0 * alpha * (beta - alpha));
        let b3 = (2.0 - 3.0 * alpha) / (6.0 * beta * (beta - alpha));
        let p = 3.0 * alpha * (a31 + a32) * b3;
        let beta2 = 1.0 / (2.0 * alpha);
        Self {
            a21: alpha,
            a31,
            a32,
            b: [b1, b2, b3],
            p,
            q: alpha,
            beta: [1.0 - beta2, beta2],
        }
    }
}

#[derive(Debug, Clone)]
enum Method {
    Mpe,
    Mprk22 { alpha: f64 },
    Mprk43(Mprk43Coefficients),
    Mprkso22 { alpha: f64, beta: f64, gamma: f64 },
    Mprkso43,
    Mpdec { theta: Vec<Vec<f64>>, corrections: usize },
    Mprk32,
    Sirk { three_stage: bool },
}

/// A constructed scheme, ready to step.
#[derive(Debug, Clone)]
pub struct Scheme {
    spec: SchemeSpec,
    method: Method,
    positive_weights: bool,
}

impl Scheme {
    /// Validates `spec` and precomputes its coefficients.
    pub fn new(spec: SchemeSpec) -> Result<Self, SchemeError> {
        let spec = spec.validate()?;
        let (method, positive_weights) = match spec {
            SchemeSpec::Mpe => (Method::Mpe, true),
            SchemeSpec::Mprk22 { alpha } => (Method::Mprk22 { alpha }, true),
            SchemeSpec::Mprk43 { alpha, beta } => {
                let c = Mprk43Coefficients::new(alpha, beta);
                let positive = mprk43_in_positive_region(alpha, beta, Mprk43LowerBound::Half);
                (Method::Mprk43(c), positive)
            }
            SchemeSpec::Mprkso22 { alpha, beta } => {
                let gamma = (1.0 - alpha * beta + alpha * beta * beta) / (beta * (1.0 - alpha * beta));
                let positive = (0.0..=1.0).contains(&alpha) && alpha * beta + 1.0 / (2.0 * beta) <= 1.0;
                (Method::Mprkso22 { alpha, beta, gamma }, positive)
            }
            SchemeSpec::Mprkso43 => (Method::Mprkso43, true),
            SchemeSpec::Mpdec { order, nodes } => {
                let intervals = order.saturating_sub(1).max(1);
                let beta = match nodes {
                    NodeFamily::Equispaced => equispaced_nodes(intervals),
                    NodeFamily::GaussLobatto => gauss_lobatto_nodes(intervals)?,
                };
                let theta = dec_weights(&beta)?;
                let positive = theta.iter().flatten().all(|w| *w >= 0.0);
                (
                    Method::Mpdec {
                        theta,
                        corrections: order,
                    },
                    positive,
                )
            }
            SchemeSpec::Mprk32 => (Method::Mprk32, true),
            SchemeSpec::Sirk2 => (Method::Sirk { three_stage: false }, true),
            SchemeSpec::Sirk3 => (Method::Sirk { three_stage: true }, true),
        };
        Ok(Self {
            spec,
            method,
            positive_weights,
        })
    }

    /// The validated spec.
    pub fn spec(&self) -> &SchemeSpec {
        &self.spec
    }

    /// Whether every Patankar weight of the scheme is non-negative.
    ///
    /// Negative weights are still handled (by swapping the Patankar indices)
    /// but are the usual cause of order reduction for vanishing states.
    pub fn has_nonnegative_weights(&self) -> bool {
        self.positive_weights
    }

    /// Deferred-correction weights `θ[m][r]`, if this is an mPDeC scheme.
    pub fn dec_theta(&self) -> Option<&[Vec<f64>]> {
        match &self.method {
            Method::Mpdec { theta, .. } => Some(theta),
            _ => None,
        }
    }

    /// MPRK(4,3) coefficients, if this is an MPRK(4,3) scheme.
    pub fn mprk43_coefficients(&self) -> Option<&Mprk43Coefficients> {
        match &self.method {
            Method::Mprk43(c) => Some(c),
            _ => None,
        }
    }

    /// Advances `state` by one step of size `dt`.
    pub fn step(&self, sys: &PdsSystem, state: &State, dt: f64) -> Result<State, SchemeError> {
        let u = self.advance(sys, &state.u, dt)?;
        Ok(State::new(state.t + dt, u))
    }

    /// Advances the bare state vector `u` by one step of size `dt`.
    ///
    /// The input must be strictly positive and match the system dimension.
    pub fn advance(&self, sys: &PdsSystem, u: &[f64], dt: f64) -> Result<Vec<f64>, SchemeError> {
        if u.len() != sys.dim() {
            return Err(pds_core::PdsError::DimensionMismatch {
                expected: sys.dim(),
                found: u.len(),
            }
            .into());
        }
        if !(dt > 0.0) || !dt.is_finite() {
            return Err(SchemeError::InvalidParameter {
                scheme: self.spec.family(),
                reason: format!("time step must be positive and finite, got {dt}"),
            });
        }
        check_positive(u)?;
        let out = match &self.method {
            Method::Mpe => mpe(sys, u, dt)?,
            Method::Mprk22 { alpha } => mprk22(sys, u, dt, *alpha)?,
            Method::Mprk43(c) => mprk43(sys, u, dt, c)?,
            Method::Mprkso22 { alpha, beta, gamma } => mprkso22(sys, u, dt, *alpha, *beta, *gamma)?,
            Method::Mprkso43 => mprkso43_step(sys, u, dt)?,
            Method::Mpdec { theta, corrections } => mpdec(sys, u, dt, theta, *corrections)?,
            Method::Mprk32 => mprk32(sys, u, dt)?,
            Method::Sirk { three_stage } => sirk(sys, u, dt, *three_stage)?,
        };
        check_finite(&out, "final update")?;
        if let Some(index) = out.iter().position(|v| !(*v > 0.0)) {
            return Err(SchemeError::PositivityLost {
                index,
                value: out[index],
            });
        }
        Ok(out)
    }
}

fn mpe(sys: &PdsSystem, u: &[f64], dt: f64) -> Result<Vec<f64>, SchemeError> {
    let e = sys.evaluate(u)?;
    let mut st = StageSystem::new(u.len()).conservative(sys.is_conservative());
    st.reset(u);
    st.add(1.0, &e);
    st.solve(dt, &inv_all(u))
}

fn mprk22(sys: &PdsSystem, u: &[f64], dt: f64, alpha: f64) -> Result<Vec<f64>, SchemeError> {
    let n = u.len();
    let e1 = sys.evaluate(u)?;
    let mut st = StageSystem::new(n).conservative(sys.is_conservative());
    st.reset(u);
    st.add(alpha, &e1);
    let inv_u = inv_all(u);
    let y2 = st.solve(dt, &inv_u)?;
    let e2 = sys.evaluate(&y2)?;
    st.reset(u);
    st.add((2.0 * alpha - 1.0) / (2.0 * alpha), &e1);
    st.add(1.0 / (2.0 * alpha), &e2);
    st.solve(dt, &inv_geometric_all(&y2, u, 1.0 / alpha))
}

fn mprk43(sys: &PdsSystem, u: &[f64], dt: f64, c: &Mprk43Coefficients) -> Result<Vec<f64>, SchemeError> {
    let n = u.len();
    let mut st = StageSystem::new(n).conservative(sys.is_conservative());
    let e1 = sys.evaluate(u)?;
    st.reset(u);
    st.add(c.a21, &e1);
    let y2 = st.solve(dt, &inv_all(u))?;
    let e2 = sys.evaluate(&y2)?;

    st.reset(u);
    st.add(c.a31, &e1);
    st.add(c.a32, &e2);
    let y3 = st.solve(dt, &inv_geometric_all(&y2, u, 1.0 / c.p))?;
    let e3 = sys.evaluate(&y3)?;

    // Auxiliary second-order approximation used as the final denominator.
    st.reset(u);
    st.add(c.beta[0], &e1);
    st.add(c.beta[1], &e2);
    let sigma = st.solve(dt, &inv_geometric_all(&y2, u, 1.0 / c.q))?;

    st.reset(u);
    st.add(c.b[0], &e1);
    st.add(c.b[1], &e2);
    st.add(c.b[2], &e3);
    st.solve(dt, &inv_all(&sigma))
}

fn mprkso22(
    sys: &PdsSystem,
    u: &[f64],
    dt: f64,
    alpha: f64,
    beta: f64,
    gamma: f64,
) -> Result<Vec<f64>, SchemeError> {
    let n = u.len();
    let e1 = sys.evaluate(u)?;
    let mut st = StageSystem::new(n).conservative(sys.is_conservative());
    st.reset(u);
    st.add(beta, &e1);
    let y2 = st.solve(dt, &inv_all(u))?;
    let e2 = sys.evaluate(&y2)?;
    st.reset_combination(&[(1.0 - alpha, u), (alpha, &y2)]);
    st.add(1.0 - 1.0 / (2.0 * beta) - alpha * beta, &e1);
    st.add(1.0 / (2.0 * beta), &e2);
    st.solve(dt, &inv_geometric_all(&y2, u, gamma))
}

fn mprkso43_step(sys: &PdsSystem, u: &[f64], dt: f64) -> Result<Vec<f64>, SchemeError> {
    use mprkso43::*;
    let n = u.len();
    let mut st = StageSystem::new(n).conservative(sys.is_conservative());
    let e1 = sys.evaluate(u)?;

    // First stage: Patankar–Euler step of length b10·Δt from a10·y¹ (a10 = 1).
    st.reset_combination(&[(A10, u)]);
    st.add(B10, &e1);
    let y2 = st.solve(dt, &inv_all(u))?;
    let e2 = sys.evaluate(&y2)?;

    // ρ extrapolates the stage values to the abscissa of the third stage.
    let rho: Vec<f64> = u
        .iter()
        .zip(&y2)
        .map(|(&a, &b)| {
            let ratio = b / a.max(f64::MIN_POSITIVE);
            N1 * b + N2 * a * ratio * ratio
        })
        .collect();
    st.reset_combination(&[(A20, u), (A21, &y2)]);
    st.add(B20, &e1);
    st.add(B21, &e2);
    let inv_rho: Vec<f64> = rho.iter().map(|&r| inv_clamped(r)).collect();
    let y3 = st.solve(dt, &inv_rho)?;
    let e3 = sys.evaluate(&y3)?;

    // μ = y¹ (y²/y¹)^s, computed in log space: its reciprocal is inv_geometric(y², y¹, s).
    let inv_mu = inv_geometric_all(&y2, u, S);
    // The rest terms enter ã scaled by η1+η2, the factor by which ã approximates
    // the solution; this keeps steady states of systems with rest terms exact.
    let scale = ETA1 + ETA2;
    st.reset_combination(&[(ETA1, u), (ETA2, &y2)]);
    st.add_split(ETA3, scale * ETA3, &e1);
    st.add_split(ETA4, scale * ETA4, &e2);
    let a_tilde = st.solve(dt, &inv_mu)?;
    // σ pairs ρ with the stage it was the denominator for (y³); pairing it
    // with y² instead leaves an O(Δt) defect and a first-order method.
    let inv_sigma: Vec<f64> = (0..n)
        .map(|i| inv_clamped(a_tilde[i] + Z * u[i] * y3[i] * inv_rho[i]))
        .collect();

    st.reset_combination(&[(A30, u), (A31, &y2), (A32, &y3)]);
    st.add(B30, &e1);
    st.add(B31, &e2);
    st.add(B32, &e3);
    st.solve(dt, &inv_sigma)
}

fn mpdec(
    sys: &PdsSystem,
    u: &[f64],
    dt: f64,
    theta: &[Vec<f64>],
    corrections: usize,
) -> Result<Vec<f64>, SchemeError> {
    let n = u.len();
    let nodes = theta.len();
    let mut prev: Vec<Vec<f64>> = vec![u.to_vec(); nodes];
    let mut next = prev.clone();
    let mut evals: Vec<PdEval> = Vec::with_capacity(nodes);
    let e0 = sys.evaluate(u)?;
    evals.resize(nodes, e0);
    let mut st = StageSystem::new(n).conservative(sys.is_conservative());
    let mut inv = vec![0.0; n];
    for k in 1..=corrections {
        if k > 1 {
            for r in 1..nodes {
                sys.evaluate_into(&prev[r], &mut evals[r])?;
            }
        }
        for m in 1..nodes {
            st.reset(u);
            for (w, e) in theta[m].iter().zip(&evals) {
                st.add(*w, e);
            }
            for (iv, p) in inv.iter_mut().zip(&prev[m]) {
                *iv = inv_clamped(*p);
            }
            st.solve_into(dt, &inv, &mut next[m])?;
        }
        std::mem::swap(&mut prev, &mut next);
    }
    Ok(prev.pop().expect("at least two nodes"))
}

fn mprk32(sys: &PdsSystem, u: &[f64], dt: f64) -> Result<Vec<f64>, SchemeError> {
    let n = u.len();
    let mut st = StageSystem::new(n).conservative(sys.is_conservative());
    let e1 = sys.evaluate(u)?;
    st.reset(u);
    st.add(1.0, &e1);
    let y2 = st.solve(dt, &inv_all(u))?;
    let e2 = sys.evaluate(&y2)?;
    let inv_y2 = inv_all(&y2);
    st.reset(u);
    st.add(0.25, &e1);
    st.add(0.25, &e2);
    let y3 = st.solve(dt, &inv_y2)?;
    let e3 = sys.evaluate(&y3)?;
    st.reset(u);
    st.add(1.0 / 6.0, &e1);
    st.add(1.0 / 6.0, &e2);
    st.add(4.0 / 6.0, &e3);
    st.solve(dt, &inv_y2)
}

/// One semi-implicit Euler stage `(y + Δt(r + Σp)) / (1 + Δt Σd / y)`.
fn si_euler(sys: &PdsSystem, y: &[f64], dt: f64) -> Result<Vec<f64>, SchemeError> {
    let e = sys.evaluate(y)?;
    Ok((0..y.len())
        .map(|i| {
            let num = y[i] + dt * (e.r[i] + e.production_sum(i));
            num / (1.0 + dt * e.destruction_sum(i) * inv_clamped(y[i]))
        })
        .collect())
}

fn sirk(sys: &PdsSystem, u: &[f64], dt: f64, three_stage: bool) -> Result<Vec<f64>, SchemeError> {
    let y2 = si_euler(sys, u, dt)?;
    let s2 = si_euler(sys, &y2, dt)?;
    let last = if three_stage {
        let y3: Vec<f64> = u.iter().zip(&s2).map(|(a, b)| 0.75 * a + 0.25 * b).collect();
        let s3 = si_euler(sys, &y3, dt)?;
        u.iter()
            .zip(&s3)
            .map(|(a, b)| a / 3.0 + 2.0 * b / 3.0)
            .collect::<Vec<f64>>()
    } else {
        u.iter().zip(&s2).map(|(a, b)| 0.5 * a + 0.5 * b).collect()
    };
    // Final correction restoring second order.
    let e = sys.evaluate(&last)?;
    Ok((0..u.len())
        .map(|i| {
            let rate = e.destruction_sum(i) * inv_clamped(last[i]);
            let num = last[i] + dt * dt * (e.r[i] + e.production_sum(i)) * rate;
            num / (1.0 + (dt * rate) * (dt * rate))
        })
        .collect())
}
