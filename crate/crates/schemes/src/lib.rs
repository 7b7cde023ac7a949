//! Positivity-preserving time integrators for production–destruction systems.
//!
//! The [`Scheme`] type implements the modified Patankar family:
//!
//! * modified Patankar–Euler (`mpe`),
//! * MPRK(2,2,α), MPRK(4,3,α,β), MPRKSO(2,2,α,β), MPRKSO(4,3) and MPRK(3,2),
//! * modified Patankar deferred correction (`mpdec`) of arbitrary order on
//!   equispaced or Gauss–Lobatto sub-time steps,
//! * the semi-implicit SI-RK2 and SI-RK3 methods.
//!
//! Every implicit stage is the solution of one small linear system with an
//! M-matrix (see [`patankar`]), which keeps all stages positive and, for
//! conservative systems, conserves the total mass to round-off.
//!
//! The [`tableau`] module contains classical implicit Runge–Kutta methods and
//! the positivity threshold `min{Δt : R(−Δt) ≤ 0}` of their stability functions.
//!
//! ```
//! use pds_core::PdsSystem;
//! use schemes::{Scheme, SchemeSpec};
//!
//! let sys = PdsSystem::new(
//!     "exchange",
//!     2,
//!     |u, p| { p[(0, 1)] = 0.5 * u[1]; p[(1, 0)] = 0.5 * u[0]; },
//!     |u, d| { d[(1, 0)] = 0.5 * u[1]; d[(0, 1)] = 0.5 * u[0]; },
//! )
//! .conservative(true);
//! let scheme = Scheme::new("mprk22:alpha=1".parse::<SchemeSpec>().unwrap()).unwrap();
//! let u1 = scheme.advance(&sys, &[0.99, 0.01], 10.0).unwrap();
//! assert!(u1.iter().all(|v| *v > 0.0));
//! assert!((u1[0] + u1[1] - 1.0).abs() < 1e-15);
//! ```

pub mod dec;
mod error;
pub mod nodes;
pub mod patankar;
mod scheme;
mod spec;
pub mod tableau;

use pds_core::{PdsSystem, State};

pub use error::SchemeError;
pub use scheme::{mprkso43, Mprk43Coefficients, Scheme};
pub use spec::{
    mprk43_in_positive_region, Mprk43LowerBound, NodeFamily, SchemeSpec, MAX_DEC_ORDER, SCHEME_FAMILIES,
};
pub use tableau::{rk_positivity_threshold, tableau as lookup_tableau, ButcherTableau, Threshold, ThresholdKind};

/// Integrates over the time grid `times`, returning the state at every grid point.
///
/// `times[0]` is taken as the initial time; `u0` is the state there.
pub fn integrate(scheme: &Scheme, sys: &PdsSystem, u0: &[f64], times: &[f64]) -> Result<Vec<State>, SchemeError> {
    let mut out = Vec::with_capacity(times.len());
    let Some(&t0) = times.first() else {
        return Ok(out);
    };
    out.push(State::new(t0, u0.to_vec()));
    for w in times.windows(2) {
        let prev = out.last().expect("non-empty");
        let u = scheme.advance(sys, &prev.u, w[1] - w[0])?;
        out.push(State::new(w[1], u));
    }
    Ok(out)
}

/// Integrates `steps` uniform steps of size `dt` from `(t0, u0)`.
pub fn integrate_uniform(
    scheme: &Scheme,
    sys: &PdsSystem,
    t0: f64,
    u0: &[f64],
    dt: f64,
    steps: usize,
) -> Result<Vec<State>, SchemeError> {
    let mut out = Vec::with_capacity(steps + 1);
    out.push(State::new(t0, u0.to_vec()));
    for n in 1..=steps {
        let u = scheme.advance(sys, &out[n - 1].u, dt)?;
        out.push(State::new(t0 + n as f64 * dt, u));
    }
    Ok(out)
}

/// Like [`integrate`] but only returns the final state, without storing the trajectory.
pub fn integrate_final(scheme: &Scheme, sys: &PdsSystem, u0: &[f64], times: &[f64]) -> Result<State, SchemeError> {
    let mut u = u0.to_vec();
    for w in times.windows(2) {
        u = scheme.advance(sys, &u, w[1] - w[0])?;
    }
    Ok(State::new(times.last().copied().unwrap_or(0.0), u))
}
