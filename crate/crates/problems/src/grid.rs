//! Time grids.

use crate::ProblemError;

/// Default size of the first exponential step relative to the interval length.
pub const DEFAULT_FIRST_STEP_FRACTION: f64 = 1e-6;

/// `n + 1` equally spaced times from `t0` to `t1` (the last one exactly `t1`).
pub fn uniform_time_grid(t0: f64, t1: f64, n: usize) -> Result<Vec<f64>, ProblemError> {
    check_interval(t0, t1, n)?;
    let h = (t1 - t0) / n as f64;
    let mut t: Vec<f64> = (0..n).map(|k| t0 + k as f64 * h).collect();
    t.push(t1);
    Ok(t)
}

/// `n` geometrically growing steps covering `[t0, t1]`, first step `10⁻⁶ (t1 − t0)`.
pub fn exponential_time_grid(t0: f64, t1: f64, n: usize) -> Result<Vec<f64>, ProblemError> {
    exponential_time_grid_with(t0, t1, n, DEFAULT_FIRST_STEP_FRACTION)
}

/// `n` geometrically growing steps covering `[t0, t1]` whose first step is
/// `first_fraction · (t1 − t0)`.
///
/// The growth ratio `q ≥ 1` solves `h₀ (qⁿ − 1)/(q − 1) = t1 − t0`. When
/// `n · h₀ ≥ t1 − t0` no growing grid exists and a uniform grid is returned.
pub fn exponential_time_grid_with(t0: f64, t1: f64, n: usize, first_fraction: f64) -> Result<Vec<f64>, ProblemError> {
    check_interval(t0, t1, n)?;
    if !(first_fraction > 0.0 && first_fraction <= 1.0) {
        return Err(ProblemError::InvalidParameter {
            problem: "time grid",
            reason: format!("first-step fraction must lie in (0, 1], got {first_fraction}"),
        });
    }
    if n == 1 {
        return Ok(vec![t0, t1]);
    }
    if n as f64 * first_fraction >= 1.0 {
        return uniform_time_grid(t0, t1, n);
    }
    // Work with the normalised interval: h₀ = f, Σ_{k<n} f qᵏ = 1.
    let total = |q: f64| first_fraction * (0..n).map(|k| q.powi(k as i32)).sum::<f64>();
    let (mut lo, mut hi) = (1.0_f64, 2.0_f64);
    while total(hi) < 1.0 {
        hi *= 2.0;
    }
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if total(mid) < 1.0 {
            lo = mid;
        } else {
            hi = mid;
        }
        if hi - lo <= f64::EPSILON * hi {
            break;
        }
    }
    let q = 0.5 * (lo + hi);
    let len = t1 - t0;
    let mut times = Vec::with_capacity(n + 1);
    times.push(t0);
    let mut acc = 0.0;
    for k in 0..n - 1 {
        acc += first_fraction * q.powi(k as i32);
        times.push(t0 + len * acc);
    }
    times.push(t1);
    Ok(times)
}

fn check_interval(t0: f64, t1: f64, n: usize) -> Result<(), ProblemError> {
    if !(t0.is_finite() && t1.is_finite() && t0 >= 0.0 && t1 > t0) || n == 0 {
        return Err(ProblemError::InvalidParameter {
            problem: "time grid",
            reason: format!("need 0 ≤ t0 < t1 and n ≥ 1, got t0 = {t0}, t1 = {t1}, n = {n}"),
        });
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn uniform_grid_ends_exactly() {
        let t = uniform_time_grid(0.0, 1.0, 3).unwrap();
        assert_eq!(t.len(), 4);
        assert_eq!(*t.last().unwrap(), 1.0);
        assert!(uniform_time_grid(1.0, 1.0, 3).is_err());
        assert!(uniform_time_grid(0.0, 1.0, 0).is_err());
    }

    #[test]
    fn exponential_grid_properties() {
        let t = exponential_time_grid(0.0, 1e10, 20).unwrap();
        assert_eq!(t.len(), 21);
        assert_eq!(t[20], 1e10);
        assert!((t[1] - 1e4).abs() < 1e-6);
        let steps: Vec<f64> = t.windows(2).map(|w| w[1] - w[0]).collect();
        assert!(steps.windows(2).all(|w| w[1] > w[0]));
        let sum: f64 = steps.iter().sum();
        assert!((sum - 1e10).abs() <= 1e-12 * 1e10);
        // The last step is consistent with the geometric ratio.
        let q = steps[1] / steps[0];
        assert!((steps[19] / steps[18] - q).abs() < 1e-6 * q);
    }

    #[test]
    fn single_step_and_fallback() {
        assert_eq!(exponential_time_grid(0.0, 2.0, 1).unwrap(), vec![0.0, 2.0]);
        assert_eq!(exponential_time_grid_with(0.0, 1.0, 4, 0.5).unwrap(), uniform_time_grid(0.0, 1.0, 4).unwrap());
    }
}
