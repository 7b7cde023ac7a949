//! A one-step method that can be applied to the linear exchange problem.

use std::fmt;
use std::str::FromStr;

use pds_core::DenseMatrix;
use problems::{linear2x2, LinearSystemSpec};
use schemes::{lookup_tableau, ButcherTableau, Scheme, SchemeSpec};

use crate::AnalysisError;

/// Either a Patankar-type scheme or a classical Runge–Kutta tableau.
#[derive(Debug, Clone)]
pub enum OneStepMethod {
    /// A positivity-preserving scheme.
    Patankar(Scheme),
    /// A linear Runge–Kutta method.
    RungeKutta(ButcherTableau),
}

impl OneStepMethod {
    /// One step of size `dt` on the linear exchange problem with parameters `(θ, ε)`.
    pub fn linear_step(&self, theta: f64, eps: f64, dt: f64) -> Result<Vec<f64>, AnalysisError> {
        let spec = LinearSystemSpec::new(theta, eps)?;
        match self {
            OneStepMethod::Patankar(scheme) => {
                let pb = linear2x2(spec);
                Ok(scheme.advance(&pb.system, &pb.initial, dt)?)
            }
            OneStepMethod::RungeKutta(t) => {
                let m = spec.matrix();
                let l = DenseMatrix::from_row_major(2, vec![m[0][0], m[0][1], m[1][0], m[1][1]]).expect("2×2 data");
                Ok(t.linear_step(&l, &spec.initial(), dt)?)
            }
        }
    }
}

impl fmt::Display for OneStepMethod {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            OneStepMethod::Patankar(s) => write!(f, "{}", s.spec()),
            OneStepMethod::RungeKutta(t) => write!(f, "rk:{}", t.name()),
        }
    }
}

impl FromStr for OneStepMethod {
    type Err = AnalysisError;

    /// `rk:<tableau>` selects a Runge–Kutta tableau, anything else a scheme spec.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let text = s.trim();
        match text.strip_prefix("rk:") {
            Some(name) => Ok(OneStepMethod::RungeKutta(lookup_tableau(name.trim())?)),
            None => Ok(OneStepMethod::Patankar(Scheme::new(text.parse::<SchemeSpec>()?)?)),
        }
    }
}

impl From<Scheme> for OneStepMethod {
    fn from(s: Scheme) -> Self {
        OneStepMethod::Patankar(s)
    }
}

impl From<ButcherTableau> for OneStepMethod {
    fn from(t: ButcherTableau) -> Self {
        OneStepMethod::RungeKutta(t)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_round_trip() {
        for text in ["rk:radau_iia5", "mprk22:alpha=1", "mpdec:order=5,nodes=gl", "mpe"] {
            let m: OneStepMethod = text.parse().unwrap();
            assert_eq!(m.to_string(), text);
        }
        assert!("rk:rk4".parse::<OneStepMethod>().is_err());
        assert!("mprk22:alpha=0.3".parse::<OneStepMethod>().is_err());
    }
}
