//! Vanishing-initial-condition probe.

use std::fmt;

use crate::{AnalysisError, OneStepMethod};

/// Initial value of the vanishing component.
pub const PROBE_EPS: f64 = 1e-300;
/// Step size of the probe.
pub const PROBE_DT: f64 = 1.0;
/// `u₁¹` above this value means the step barely moved.
pub const PROBE_THRESHOLD: f64 = 0.999;

/// Classification of a method by its first step from a vanishing component.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum IcClass {
    /// The step stays at the initial state: at most first-order accuracy.
    FirstOrderCollapse,
    /// The step moves substantially towards the solution.
    NoCollapse,
}

impl fmt::Display for IcClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            IcClass::FirstOrderCollapse => "FIRST_ORDER_COLLAPSE",
            IcClass::NoCollapse => "NO_COLLAPSE",
        })
    }
}

/// Result of [`vanishing_ic_probe`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ProbeResult {
    /// First component after the step.
    pub u1: f64,
    /// Second component after the step.
    pub u2: f64,
    /// Classification.
    pub class: IcClass,
}

/// One step of size 1 on the linear exchange with `θ = ½` from `(1 − 10⁻³⁰⁰, 10⁻³⁰⁰)`.
///
/// The exact solution moves to `u₁(1) ≈ 0.684`; a method whose first component
/// stays above `0.999` is classified as collapsing to first order.
pub fn vanishing_ic_probe(method: &OneStepMethod) -> Result<ProbeResult, AnalysisError> {
    let u = method.linear_step(0.5, PROBE_EPS, PROBE_DT)?;
    Ok(ProbeResult {
        u1: u[0],
        u2: u[1],
        class: if u[0] > PROBE_THRESHOLD {
            IcClass::FirstOrderCollapse
        } else {
            IcClass::NoCollapse
        },
    })
}
