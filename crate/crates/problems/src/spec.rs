//! Textual problem selectors.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use crate::{
    hires, linear2x2, robertson, scalar_nonlinear, HiresSpec, LinearSystemSpec, Problem, ProblemError, RobertsonSpec,
    ScalarProblemSpec,
};

/// Names accepted by [`ProblemSpec::from_str`].
pub const PROBLEM_NAMES: &[&str] = &["linear2x2", "scalar", "robertson", "hires"];

/// A benchmark problem with its parameters, e.g. `linear2x2:theta=0.5,eps=0.01`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum ProblemSpec {
    /// Linear exchange with rate `θ` and initial `u₂ = ε`.
    Linear2x2 {
        /// `θ ∈ [0, 1]`.
        theta: f64,
        /// `ε ∈ (0, 1)`.
        eps: f64,
    },
    /// `u' = −k|u|u + 1`.
    Scalar {
        /// `k > 0`.
        k: f64,
        /// Initial value; `None` selects the benchmark value `1.1 u∞`.
        u0: Option<f64>,
    },
    /// Robertson kinetics with zero initial components replaced by `eps`.
    Robertson {
        /// Initial floor.
        eps: f64,
    },
    /// HIRES kinetics with zero initial components replaced by `eps`.
    Hires {
        /// Initial floor.
        eps: f64,
    },
}

impl ProblemSpec {
    /// Problem name.
    pub fn name(&self) -> &'static str {
        match self {
            ProblemSpec::Linear2x2 { .. } => "linear2x2",
            ProblemSpec::Scalar { .. } => "scalar",
            ProblemSpec::Robertson { .. } => "robertson",
            ProblemSpec::Hires { .. } => "hires",
        }
    }

    /// Builds the system and its initial condition.
    pub fn build(&self) -> Result<Problem, ProblemError> {
        Ok(match *self {
            ProblemSpec::Linear2x2 { theta, eps } => linear2x2(LinearSystemSpec::new(theta, eps)?),
            ProblemSpec::Scalar { k, u0 } => {
                let mut pb = scalar_nonlinear(ScalarProblemSpec::new(k)?);
                if let Some(u0) = u0 {
                    if !(u0 > 0.0 && u0.is_finite()) {
                        return Err(ProblemError::InvalidParameter {
                            problem: "scalar",
                            reason: format!("u0 must be positive and finite, got {u0}"),
                        });
                    }
                    pb.initial = vec![u0];
                }
                pb
            }
            ProblemSpec::Robertson { eps } => robertson(RobertsonSpec::with_epsilon(eps)?),
            ProblemSpec::Hires { eps } => hires(HiresSpec::with_epsilon(eps)?),
        })
    }

    /// Exact solution at time `t`, where one is available in closed form.
    pub fn exact(&self, t: f64) -> Option<Vec<f64>> {
        match *self {
            ProblemSpec::Linear2x2 { theta, eps } => Some(LinearSystemSpec { theta, epsilon: eps }.exact(t)),
            _ => None,
        }
    }

    fn defaults(name: &str) -> Option<Self> {
        Some(match name {
            "linear2x2" => ProblemSpec::Linear2x2 { theta: 0.5, eps: 1e-2 },
            "scalar" => ProblemSpec::Scalar { k: 1e4, u0: None },
            "robertson" => ProblemSpec::Robertson {
                eps: RobertsonSpec::default().ic_epsilon,
            },
            "hires" => ProblemSpec::Hires {
                eps: HiresSpec::default().ic_epsilon,
            },
            _ => return None,
        })
    }
}

impl fmt::Display for ProblemSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ProblemSpec::Linear2x2 { theta, eps } => write!(f, "linear2x2:theta={theta:e},eps={eps:e}"),
            ProblemSpec::Scalar { k, u0: None } => write!(f, "scalar:k={k:e}"),
            ProblemSpec::Scalar { k, u0: Some(u0) } => write!(f, "scalar:k={k:e},u0={u0:e}"),
            ProblemSpec::Robertson { eps } => write!(f, "robertson:eps={eps:e}"),
            ProblemSpec::Hires { eps } => write!(f, "hires:eps={eps:e}"),
        }
    }
}

impl FromStr for ProblemSpec {
    type Err = ProblemError;

    /// Parses `name[:key=value,...]`; omitted keys take their defaults.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let err = |reason: String| ProblemError::Parse {
            input: s.to_string(),
            reason,
        };
        let text = s.trim().to_ascii_lowercase();
        let (name, rest) = match text.split_once(':') {
            Some((n, r)) => (n.trim(), r.trim()),
            None => (text.as_str(), ""),
        };
        let mut spec = Self::defaults(name)
            .ok_or_else(|| err(format!("unknown problem '{name}'; valid problems: {}", PROBLEM_NAMES.join(", "))))?;
        let mut kv = BTreeMap::new();
        for item in rest.split(',').map(str::trim).filter(|t| !t.is_empty()) {
            let (k, v) = item
                .split_once('=')
                .ok_or_else(|| err(format!("expected key=value, got '{item}'")))?;
            let v: f64 = v
                .trim()
                .parse()
                .map_err(|_| err(format!("value of '{}' is not a number: '{}'", k.trim(), v.trim())))?;
            if kv.insert(k.trim().to_string(), v).is_some() {
                return Err(err(format!("duplicate key '{}'", k.trim())));
            }
        }
        for (k, v) in kv {
            match (&mut spec, k.as_str()) {
                (ProblemSpec::Linear2x2 { theta, .. }, "theta") => *theta = v,
                (ProblemSpec::Linear2x2 { eps, .. }, "eps")
                | (ProblemSpec::Robertson { eps }, "eps")
                | (ProblemSpec::Hires { eps }, "eps") => *eps = v,
                (ProblemSpec::Scalar { k, .. }, "k") => *k = v,
                (ProblemSpec::Scalar { u0, .. }, "u0") => *u0 = Some(v),
                (_, other) => return Err(err(format!("unknown key '{other}' for problem '{name}'"))),
            }
        }
        spec.build().map_err(|e| err(e.to_string()))?;
        Ok(spec)
    }
}
