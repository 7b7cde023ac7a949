//! Declarative scheme selection and its text form.
//!
//! Text forms are `family[:key=value,...]`, for example `mpe`,
//! `mprk22:alpha=1`, `mprk43:alpha=0.9,beta=0.6`, `mprkso22:alpha=0,beta=8`,
//! `mpdec:order=5,nodes=gl`. [`SchemeSpec`] implements [`std::str::FromStr`]
//! and [`std::fmt::Display`] so that formatting a parsed spec and parsing it
//! again is the identity.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use crate::SchemeError;

/// Largest supported mPDeC order.
pub const MAX_DEC_ORDER: usize = 16;

/// Sub-time-step distribution of mPDeC.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum NodeFamily {
    /// Equispaced sub-time steps.
    Equispaced,
    /// Gauss–Lobatto sub-time steps.
    GaussLobatto,
}

impl NodeFamily {
    /// Short text form used in scheme strings (`eq` / `gl`).
    pub fn as_str(self) -> &'static str {
        match self {
            NodeFamily::Equispaced => "eq",
            NodeFamily::GaussLobatto => "gl",
        }
    }
}

impl FromStr for NodeFamily {
    type Err = SchemeError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "eq" | "equispaced" => Ok(NodeFamily::Equispaced),
            "gl" | "gauss-lobatto" | "lobatto" => Ok(NodeFamily::GaussLobatto),
            _ => Err(SchemeError::Parse {
                input: s.to_string(),
                reason: "node family must be one of: eq, gl".to_string(),
            }),
        }
    }
}

/// Which lower bound on `α` delimits the MPRK(4,3) positivity region.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Mprk43LowerBound {
    /// `α ≥ 1/2` (default).
    #[default]
    Half,
    /// The looser `α ≥ 1/3` that also appears in the literature.
    Third,
}

/// A fully parameterised positivity-preserving scheme.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum SchemeSpec {
    /// Modified Patankar–Euler, first order.
    Mpe,
    /// MPRK(2,2,α), second order, `α ≥ 1/2`.
    Mprk22 {
        /// Position of the second stage.
        alpha: f64,
    },
    /// MPRK(4,3,α,β), third order.
    Mprk43 {
        /// Position of the second stage.
        alpha: f64,
        /// Position of the third stage.
        beta: f64,
    },
    /// MPRKSO(2,2,α,β), second order Shu–Osher form.
    Mprkso22 {
        /// Convex-combination weight of the second stage.
        alpha: f64,
        /// Step fraction of the first Euler stage.
        beta: f64,
    },
    /// MPRKSO(4,3) with fixed optimal coefficients, third order.
    Mprkso43,
    /// Modified Patankar deferred correction of the given order.
    Mpdec {
        /// Formal order; uses `order − 1` sub-intervals and `order` corrections.
        order: usize,
        /// Sub-time-step distribution.
        nodes: NodeFamily,
    },
    /// Three-stage second-order MPRK based on SSPRK(3,3).
    Mprk32,
    /// Second-order semi-implicit RK.
    Sirk2,
    /// Semi-implicit RK based on SSPRK(3,3), second order.
    Sirk3,
}

/// Names accepted by [`SchemeSpec::from_str`].
pub const SCHEME_FAMILIES: &[&str] = &[
    "mpe", "mprk22", "mprk43", "mprkso22", "mprkso43", "mpdec", "mprk32", "sirk2", "sirk3",
];

impl SchemeSpec {
    /// Family name as used in text forms.
    pub fn family(&self) -> &'static str {
        match self {
            SchemeSpec::Mpe => "mpe",
            SchemeSpec::Mprk22 { .. } => "mprk22",
            SchemeSpec::Mprk43 { .. } => "mprk43",
            SchemeSpec::Mprkso22 { .. } => "mprkso22",
            SchemeSpec::Mprkso43 => "mprkso43",
            SchemeSpec::Mpdec { .. } => "mpdec",
            SchemeSpec::Mprk32 => "mprk32",
            SchemeSpec::Sirk2 => "sirk2",
            SchemeSpec::Sirk3 => "sirk3",
        }
    }

    /// Formal order of accuracy for smooth, non-vanishing solutions.
    pub fn nominal_order(&self) -> usize {
        match self {
            SchemeSpec::Mpe => 1,
            SchemeSpec::Mprk22 { .. } | SchemeSpec::Mprkso22 { .. } => 2,
            SchemeSpec::Mprk43 { .. } | SchemeSpec::Mprkso43 => 3,
            SchemeSpec::Mpdec { order, .. } => *order,
            SchemeSpec::Mprk32 | SchemeSpec::Sirk2 | SchemeSpec::Sirk3 => 2,
        }
    }

    /// Checks the parameter ranges and returns the spec unchanged when valid.
    pub fn validate(self) -> Result<Self, SchemeError> {
        let finite = |scheme: &'static str, name: &str, v: f64| {
            if v.is_finite() {
                Ok(())
            } else {
                Err(SchemeError::InvalidParameter {
                    scheme,
                    reason: format!("{name} must be finite, got {v}"),
                })
            }
        };
        match self {
            SchemeSpec::Mprk22 { alpha } => {
                finite("mprk22", "alpha", alpha)?;
                if alpha < 0.5 {
                    return Err(SchemeError::InvalidParameter {
                        scheme: "mprk22",
                        reason: format!("alpha must be >= 1/2, got {alpha}"),
                    });
                }
            }
            SchemeSpec::Mprk43 { alpha, beta } => {
                finite("mprk43", "alpha", alpha)?;
                finite("mprk43", "beta", beta)?;
                if alpha * (2.0 - 3.0 * alpha) == 0.0 {
                    return Err(SchemeError::TableauSingular {
                        alpha,
                        beta,
                        reason: "alpha*(2-3*alpha) = 0",
                    });
                }
                if beta == alpha {
                    return Err(SchemeError::TableauSingular {
                        alpha,
                        beta,
                        reason: "beta = alpha",
                    });
                }
                if alpha * beta == 0.0 {
                    return Err(SchemeError::TableauSingular {
                        alpha,
                        beta,
                        reason: "alpha*beta = 0",
                    });
                }
            }
            SchemeSpec::Mprkso22 { alpha, beta } => {
                finite("mprkso22", "alpha", alpha)?;
                finite("mprkso22", "beta", beta)?;
                if beta <= 0.0 {
                    return Err(SchemeError::InvalidParameter {
                        scheme: "mprkso22",
                        reason: format!("beta must be > 0, got {beta}"),
                    });
                }
                if alpha * beta == 1.0 {
                    return Err(SchemeError::GammaSingular { alpha, beta });
                }
            }
            SchemeSpec::Mpdec { order, .. } => {
                if !(1..=MAX_DEC_ORDER).contains(&order) {
                    return Err(SchemeError::InvalidParameter {
                        scheme: "mpdec",
                        reason: format!("order must be in 1..={MAX_DEC_ORDER}, got {order}"),
                    });
                }
            }
            SchemeSpec::Mpe
            | SchemeSpec::Mprkso43
            | SchemeSpec::Mprk32
            | SchemeSpec::Sirk2
            | SchemeSpec::Sirk3 => {}
        }
        Ok(self)
    }
}

/// Whether `(α, β)` lies in the region where every MPRK(4,3) weight is non-negative.
///
/// The region is
/// `2/3 ≤ β ≤ 3α(1−α)` for `lower ≤ α < 2/3`,
/// `3α(1−α) ≤ β ≤ 2/3` for `2/3 ≤ α < α₀` and
/// `(3α−2)/(6α−3) ≤ β ≤ 2/3` for `α ≥ α₀ ≈ 0.89255`,
/// where `lower` is selected by `bound`.
pub fn mprk43_in_positive_region(alpha: f64, beta: f64, bound: Mprk43LowerBound) -> bool {
    // α₀ is where the two lower boundaries 3α(1−α) and (3α−2)/(6α−3) meet.
    const ALPHA0: f64 = 0.892_550_232_934_686_6;
    let lower = match bound {
        Mprk43LowerBound::Half => 0.5,
        Mprk43LowerBound::Third => 1.0 / 3.0,
    };
    let two_thirds = 2.0 / 3.0;
    if alpha < lower {
        false
    } else if alpha < two_thirds {
        two_thirds <= beta && beta <= 3.0 * alpha * (1.0 - alpha)
    } else if alpha < ALPHA0 {
        3.0 * alpha * (1.0 - alpha) <= beta && beta <= two_thirds
    } else {
        (3.0 * alpha - 2.0) / (6.0 * alpha - 3.0) <= beta && beta <= two_thirds
    }
}

impl fmt::Display for SchemeSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SchemeSpec::Mprk22 { alpha } => write!(f, "mprk22:alpha={alpha}"),
            SchemeSpec::Mprk43 { alpha, beta } => write!(f, "mprk43:alpha={alpha},beta={beta}"),
            SchemeSpec::Mprkso22 { alpha, beta } => {
                write!(f, "mprkso22:alpha={alpha},beta={beta}")
            }
            SchemeSpec::Mpdec { order, nodes } => {
                write!(f, "mpdec:order={order},nodes={}", nodes.as_str())
            }
            other => f.write_str(other.family()),
        }
    }
}

fn parse_error(input: &str, reason: impl Into<String>) -> SchemeError {
    SchemeError::Parse {
        input: input.to_string(),
        reason: reason.into(),
    }
}

impl FromStr for SchemeSpec {
    type Err = SchemeError;

    /// Parses and validates a text form such as `mprk43:alpha=0.9,beta=0.6`.
    fn from_str(input: &str) -> Result<Self, Self::Err> {
        let trimmed = input.trim();
        let (family, params) = match trimmed.split_once(':') {
            Some((f, p)) => (f.trim().to_ascii_lowercase(), p.trim()),
            None => (trimmed.to_ascii_lowercase(), ""),
        };
        let mut kv = BTreeMap::new();
        for item in params.split(',').map(str::trim).filter(|s| !s.is_empty()) {
            let (k, v) = item
                .split_once('=')
                .ok_or_else(|| parse_error(input, format!("expected key=value, got '{item}'")))?;
            if kv.insert(k.trim().to_ascii_lowercase(), v.trim().to_string()).is_some() {
                return Err(parse_error(input, format!("parameter '{}' given twice", k.trim())));
            }
        }
        let mut take = |key: &str| -> Result<String, SchemeError> {
            kv.remove(key)
                .ok_or_else(|| parse_error(input, format!("{family} requires parameter '{key}'")))
        };
        let float = |key: &str, v: String| -> Result<f64, SchemeError> {
            v.parse::<f64>()
                .map_err(|_| parse_error(input, format!("'{key}' must be a number, got '{v}'")))
        };
        let spec = match family.as_str() {
            "mpe" => SchemeSpec::Mpe,
            "mprk22" => SchemeSpec::Mprk22 {
                alpha: float("alpha", take("alpha")?)?,
            },
            "mprk43" => SchemeSpec::Mprk43 {
                alpha: float("alpha", take("alpha")?)?,
                beta: float("beta", take("beta")?)?,
            },
            "mprkso22" => SchemeSpec::Mprkso22 {
                alpha: float("alpha", take("alpha")?)?,
                beta: float("beta", take("beta")?)?,
            },
            "mprkso43" => SchemeSpec::Mprkso43,
            "mpdec" => {
                let order_text = take("order")?;
                let order = order_text.parse::<usize>().map_err(|_| {
                    parse_error(input, format!("'order' must be a positive integer, got '{order_text}'"))
                })?;
                let nodes = take("nodes")?.parse::<NodeFamily>()?;
                SchemeSpec::Mpdec { order, nodes }
            }
            "mprk32" => SchemeSpec::Mprk32,
            "sirk2" => SchemeSpec::Sirk2,
            "sirk3" => SchemeSpec::Sirk3,
            _ => {
                return Err(parse_error(
                    input,
                    format!("unknown scheme '{family}'; valid schemes: {}", SCHEME_FAMILIES.join(", ")),
                ))
            }
        };
        if let Some(extra) = kv.keys().next() {
            return Err(parse_error(input, format!("unknown parameter '{extra}' for {family}")));
        }
        spec.validate()
    }
}
