//! Observed order of accuracy.

use problems::ProblemSpec;
use schemes::Scheme;

use crate::AnalysisError;

/// Errors below `100 · ε_mach` are dropped before fitting the slope.
pub const ERROR_FLOOR: f64 = 100.0 * f64::EPSILON;

/// Errors and fitted order of a convergence study.
#[derive(Debug, Clone, PartialEq)]
pub struct OrderEstimate {
    /// Time steps, as given.
    pub dts: Vec<f64>,
    /// Mean error `(1/N) Σₙ ‖u_ex(tⁿ) − uⁿ‖₂` for each time step.
    pub errors: Vec<f64>,
    /// Least-squares slope of `log(error)` against `log(Δt)`.
    pub slope: f64,
}

impl OrderEstimate {
    /// Observed orders between consecutive time steps.
    pub fn pairwise_orders(&self) -> Vec<f64> {
        self.dts
            .windows(2)
            .zip(self.errors.windows(2))
            .map(|(d, e)| (e[0] / e[1]).ln() / (d[0] / d[1]).ln())
            .collect()
    }
}

/// Least-squares slope of `log y` against `log x` over the pairs with `y > floor`.
///
/// Returns `None` when fewer than two pairs remain.
pub fn least_squares_slope(x: &[f64], y: &[f64], floor: f64) -> Option<f64> {
    let pts: Vec<(f64, f64)> = x
        .iter()
        .zip(y)
        .filter(|(&a, &b)| a > 0.0 && b > floor && b.is_finite())
        .map(|(a, b)| (a.ln(), b.ln()))
        .collect();
    if pts.len() < 2 {
        return None;
    }
    let n = pts.len() as f64;
    let mx = pts.iter().map(|p| p.0).sum::<f64>() / n;
    let my = pts.iter().map(|p| p.1).sum::<f64>() / n;
    let sxy: f64 = pts.iter().map(|p| (p.0 - mx) * (p.1 - my)).sum();
    let sxx: f64 = pts.iter().map(|p| (p.0 - mx) * (p.0 - mx)).sum();
    (sxx > 0.0).then(|| sxy / sxx)
}

/// Integrates `problem` to `t_end` with each uniform step in `dts` and fits the order.
///
/// The problem must have a closed-form solution and every `t_end/Δt` must be
/// an integer (to `10⁻⁹` relative).
pub fn convergence_study(
    scheme: &Scheme,
    problem: &ProblemSpec,
    dts: &[f64],
    t_end: f64,
) -> Result<OrderEstimate, AnalysisError> {
    if problem.exact(0.0).is_none() {
        return Err(AnalysisError::InvalidInput(format!(
            "problem '{}' has no closed-form solution",
            problem.name()
        )));
    }
    if !(t_end > 0.0 && t_end.is_finite()) || dts.len() < 2 {
        return Err(AnalysisError::InvalidInput(
            "need t_end > 0 and at least two time steps".into(),
        ));
    }
    let pb = problem.build()?;
    let mut errors = Vec::with_capacity(dts.len());
    for &dt in dts {
        let n = (t_end / dt).round();
        if !(dt > 0.0) || n < 1.0 || (n * dt - t_end).abs() > 1e-9 * t_end {
            return Err(AnalysisError::InvalidInput(format!(
                "time step {dt} does not divide t_end = {t_end}"
            )));
        }
        let n = n as usize;
        let mut u = pb.initial.clone();
        let mut total = 0.0;
        for k in 1..=n {
            u = scheme.advance(&pb.system, &u, dt)?;
            let ex = problem.exact(k as f64 * dt).expect("checked above");
            total += ex.iter().zip(&u).map(|(a, b)| (a - b) * (a - b)).sum::<f64>().sqrt();
        }
        errors.push(total / n as f64);
    }
    let slope = least_squares_slope(dts, &errors, ERROR_FLOOR).unwrap_or(f64::NAN);
    Ok(OrderEstimate {
        dts: dts.to_vec(),
        errors,
        slope,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn slope_of_power_law() {
        let x = [0.1, 0.05, 0.025];
        let y: Vec<f64> = x.iter().map(|v: &f64| 3.0 * v.powi(2)).collect();
        assert!((least_squares_slope(&x, &y, 0.0).unwrap() - 2.0).abs() < 1e-12);
        assert!(least_squares_slope(&x, &[1e-20, 1e-20, 1.0], ERROR_FLOOR).is_none());
    }

    #[test]
    fn rejects_non_dividing_steps() {
        let s = Scheme::new(schemes::SchemeSpec::Mpe).unwrap();
        let p: ProblemSpec = "linear2x2".parse().unwrap();
        assert!(convergence_study(&s, &p, &[0.3, 0.1], 1.0).is_err());
        let hires: ProblemSpec = "hires".parse().unwrap();
        assert!(convergence_study(&s, &hires, &[0.5, 0.25], 1.0).is_err());
    }
}
