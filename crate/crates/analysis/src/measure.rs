//! One-step oscillation measure.

/// Oscillation of a step `u⁰ → u¹` of one component relative to its steady value `u*`.
///
/// When `u⁰ > u*` the component should decrease without dropping below `u*`;
/// the measure is the larger of the wrong-direction move `(u¹ − u⁰)⁺` and the
/// overshoot `(u* − u¹)⁺`. The case `u⁰ < u*` is mirrored. It vanishes exactly
/// when `u¹` lies between `u⁰` and `u*`, and is zero when `u⁰ = u*`.
pub fn oscillation_measure(u0: f64, u1: f64, ustar: f64) -> f64 {
    if u0 > ustar {
        (u1 - u0).max(ustar - u1).max(0.0)
    } else if u0 < ustar {
        (u0 - u1).max(u1 - ustar).max(0.0)
    } else {
        0.0
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn examples() {
        assert_eq!(oscillation_measure(1.0, 0.7, 0.5), 0.0);
        assert!((oscillation_measure(1.0, 0.4, 0.5) - 0.1).abs() < 1e-15);
        assert!((oscillation_measure(1.0, 1.1, 0.5) - 0.1).abs() < 1e-15);
        assert_eq!(oscillation_measure(0.5, 0.9, 0.5), 0.0);
        assert!((oscillation_measure(0.2, 0.1, 0.5) - 0.1).abs() < 1e-15);
    }

    proptest! {
        #[test]
        fn zero_iff_between(u0 in 0.0..1.0f64, u1 in -0.5..1.5f64, us in 0.0..1.0f64) {
            let m = oscillation_measure(u0, u1, us);
            prop_assert!(m >= 0.0);
            let between = u1 >= u0.min(us) && u1 <= u0.max(us);
            if u0 != us {
                prop_assert_eq!(m == 0.0, between);
            }
        }
    }
}
