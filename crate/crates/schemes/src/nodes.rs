//! Quadrature nodes on `[0, 1]`: equispaced, Gauss–Lobatto and Gauss–Legendre.

use crate::SchemeError;

/// Newton iterations allowed per node before giving up.
pub const MAX_NEWTON_ITERATIONS: usize = 100;

/// `M + 1` equispaced nodes `m / M` on `[0, 1]`.
pub fn equispaced_nodes(intervals: usize) -> Vec<f64> {
    if intervals == 0 {
        return vec![0.0];
    }
    (0..=intervals)
        .map(|m| m as f64 / intervals as f64)
        .collect()
}

/// Legendre polynomial `P_n(x)` and its derivative by the three-term recurrence.
pub fn legendre(n: usize, x: f64) -> (f64, f64) {
    if n == 0 {
        return (1.0, 0.0);
    }
    let (mut p_prev, mut p) = (1.0, x);
    for k in 2..=n {
        let k = k as f64;
        let next = ((2.0 * k - 1.0) * x * p - (k - 1.0) * p_prev) / k;
        p_prev = p;
        p = next;
    }
    // (1 − x²) P_n' = n (P_{n−1} − x P_n); use the endpoint formula at ±1.
    let nf = n as f64;
    let dp = if (1.0 - x * x).abs() < 1e-300 {
        let sign = if x > 0.0 || n % 2 == 1 { 1.0 } else { -1.0 };
        sign * nf * (nf + 1.0) / 2.0
    } else {
        nf * (p_prev - x * p) / (1.0 - x * x)
    };
    (p, dp)
}

/// Gauss–Lobatto nodes with `intervals` sub-intervals (`intervals + 1` nodes) on `[0, 1]`.
///
/// The interior nodes are the roots of `P'_M`, found by Newton's method from
/// Chebyshev–Lobatto initial guesses; the result is symmetrised about `1/2`.
pub fn gauss_lobatto_nodes(intervals: usize) -> Result<Vec<f64>, SchemeError> {
    let m = intervals;
    if m == 0 {
        return Ok(vec![0.0]);
    }
    if m == 1 {
        return Ok(vec![0.0, 1.0]);
    }
    let mf = m as f64;
    let mut x = vec![0.0; m + 1];
    x[0] = -1.0;
    x[m] = 1.0;
    for k in 1..m {
        // Roots in increasing order; cos is decreasing so flip the index.
        let mut xi = -(std::f64::consts::PI * k as f64 / mf).cos();
        let mut converged = false;
        for _ in 0..MAX_NEWTON_ITERATIONS {
            let (p, dp) = legendre(m, xi);
            // Legendre ODE: (1 − x²) P'' = 2x P' − M(M+1) P.
            let d2p = (2.0 * xi * dp - mf * (mf + 1.0) * p) / (1.0 - xi * xi);
            let delta = dp / d2p;
            xi -= delta;
            if delta.abs() <= 1e-16 * xi.abs().max(1e-3) {
                converged = true;
                break;
            }
        }
        if !converged {
            // A last acceptance test: Newton may stall one ulp away from the root.
            let (_, dp) = legendre(m, xi);
            if dp.abs() > 1e-12 * mf * mf {
                return Err(SchemeError::ConvergenceFailure {
                    iterations: MAX_NEWTON_ITERATIONS,
                });
            }
        }
        x[k] = xi;
    }
    for k in 0..=m / 2 {
        let s = 0.5 * (x[m - k] - x[k]);
        x[k] = -s;
        x[m - k] = s;
    }
    if m % 2 == 0 {
        x[m / 2] = 0.0;
    }
    Ok(x.into_iter().map(|v| 0.5 * (v + 1.0)).collect())
}

/// Gauss–Legendre nodes and weights with `n` points on `[−1, 1]`.
///
/// Used internally to integrate Lagrange polynomials exactly.
pub fn gauss_legendre(n: usize) -> Result<(Vec<f64>, Vec<f64>), SchemeError> {
    let mut x = vec![0.0; n];
    let mut w = vec![0.0; n];
    let nf = n as f64;
    for k in 0..n {
        let mut xi = -(std::f64::consts::PI * (k as f64 + 0.75) / (nf + 0.5)).cos();
        let mut converged = false;
        for _ in 0..MAX_NEWTON_ITERATIONS {
            let (p, dp) = legendre(n, xi);
            let delta = p / dp;
            xi -= delta;
            if delta.abs() <= 1e-16 {
                converged = true;
                break;
            }
        }
        let (p, dp) = legendre(n, xi);
        if !converged && p.abs() > 1e-13 {
            return Err(SchemeError::ConvergenceFailure {
                iterations: MAX_NEWTON_ITERATIONS,
            });
        }
        x[k] = xi;
        w[k] = 2.0 / ((1.0 - xi * xi) * dp * dp);
    }
    Ok((x, w))
}
