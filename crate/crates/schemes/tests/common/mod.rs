//! Shared scheme lists for the integration tests.

#![allow(dead_code)]

use schemes::{Scheme, SchemeSpec};

/// Representative members of every scheme family.
pub const SCHEME_TEXTS: &[&str] = &[
    "mpe",
    "mprk22:alpha=0.5",
    "mprk22:alpha=1",
    "mprk22:alpha=2",
    "mprk22:alpha=5",
    "mprk43:alpha=0.9,beta=0.6",
    "mprk43:alpha=0.5,beta=0.75",
    "mprk43:alpha=5,beta=0.5",
    "mprkso22:alpha=0,beta=1",
    "mprkso22:alpha=0.5,beta=1",
    "mprkso22:alpha=0,beta=8",
    "mprkso43",
    "mprk32",
    "mpdec:order=1,nodes=eq",
    "mpdec:order=2,nodes=gl",
    "mpdec:order=3,nodes=eq",
    "mpdec:order=4,nodes=gl",
    "mpdec:order=5,nodes=eq",
    "mpdec:order=8,nodes=gl",
    "mpdec:order=9,nodes=eq",
    "sirk2",
    "sirk3",
];

pub fn scheme(text: &str) -> Scheme {
    Scheme::new(text.parse::<SchemeSpec>().unwrap()).unwrap()
}

pub fn all_schemes() -> Vec<Scheme> {
    SCHEME_TEXTS.iter().map(|t| scheme(t)).collect()
}

/// Whether the scheme is of modified Patankar type (conserves mass).
pub fn is_conservative_scheme(s: &Scheme) -> bool {
    !matches!(s.spec(), SchemeSpec::Sirk2 | SchemeSpec::Sirk3)
}
