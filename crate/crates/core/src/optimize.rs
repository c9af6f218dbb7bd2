//! Threshold sweeps and local refinement of the mean-AoI objective.
//!
//! The mean AoI as a function of the threshold is not known to be unimodal,
//! so global search is a plain grid (endpoints always included) and local
//! polish is golden-section on a bracket whose interior beats its ends. The
//! refinement is a heuristic: it returns a local minimizer.

use alloc::vec::Vec;

use crate::aoi::mean_aoi;
use crate::dist::{ModelParams, ServiceDistribution, Theta};
use crate::Error;

const GOLDEN_RATIO: f64 = 1.618033988749895;

/// One sweep entry; per-threshold failures are carried, not fatal.
#[derive(Debug, Clone)]
pub struct SweepPoint {
    pub theta: Theta,
    pub mean: Result<f64, Error>,
}

/// Grid sweep output with the endpoint means always present.
#[derive(Debug, Clone)]
pub struct SweepResult {
    /// Sorted by threshold, infinite last.
    pub grid: Vec<SweepPoint>,
    pub best_theta: Theta,
    pub best_mean: f64,
    pub mean_at_zero: Result<f64, Error>,
    pub mean_at_infinity: Result<f64, Error>,
}

/// Mean AoI for a single threshold.
pub fn mean_for_theta(
    lambda: f64,
    service: &ServiceDistribution,
    theta: Theta,
) -> Result<f64, Error> {
    let m = ModelParams::new(lambda, theta, service.clone())?;
    mean_aoi(&m)
}

/// Default sweep grid: `{0, 0.1, ..., 5.0} * mean service time`, plus
/// infinity.
pub fn default_theta_grid(mean_service: f64) -> Vec<Theta> {
    let mut grid: Vec<Theta> = (0..=50)
        .map(|k| Theta::Finite(0.1 * k as f64 * mean_service))
        .collect();
    grid.push(Theta::Infinite);
    grid
}

/// Evaluates the mean AoI on the given thresholds (earning the endpoints 0
/// and infinity if absent) and reports the minimizer.
pub fn sweep(
    lambda: f64,
    service: &ServiceDistribution,
    thetas: &[Theta],
) -> Result<SweepResult, Error> {
    if thetas.is_empty() {
        return Err(Error::InvalidParams("empty theta grid".into()));
    }
    let mut all: Vec<Theta> = thetas.to_vec();
    if !all.iter().any(|t| matches!(t, Theta::Finite(v) if *v == 0.0)) {
        all.push(Theta::Finite(0.0));
    }
    if !all.iter().any(|t| t.is_infinite()) {
        all.push(Theta::Infinite);
    }
    all.sort_by(|a, b| a.as_f64().partial_cmp(&b.as_f64()).expect("no NaN thetas"));
    all.dedup_by(|a, b| a.as_f64() == b.as_f64());

    let grid: Vec<SweepPoint> = all
        .into_iter()
        .map(|theta| SweepPoint {
            theta,
            mean: mean_for_theta(lambda, service, theta),
        })
        .collect();

    let mut best: Option<(Theta, f64)> = None;
    for p in &grid {
        if let Ok(m) = p.mean {
            if best.is_none_or(|(_, b)| m < b) {
                best = Some((p.theta, m));
            }
        }
    }
    let (best_theta, best_mean) = best.ok_or(Error::NonFiniteMoment)?;
    let endpoint = |pred: fn(&Theta) -> bool| {
        grid.iter()
            .find(|p| pred(&p.theta))
            .expect("endpoints always present")
            .mean
            .clone()
    };
    Ok(SweepResult {
        best_theta,
        best_mean,
        mean_at_zero: endpoint(|t| matches!(t, Theta::Finite(v) if *v == 0.0)),
        mean_at_infinity: endpoint(|t| t.is_infinite()),
        grid,
    })
}

/// Golden-section refinement inside `bracket`, to a threshold tolerance of
/// `1e-4` mean service times.
///
/// The bracket must contain an interior point beating both ends (checked on
/// the initial golden probes); a degenerate bracket `(a, a)` returns that
/// point. Returns the best `(theta, mean)` seen over all evaluations, so the
/// result never exceeds the bracket's grid minimum.
pub fn refine(
    lambda: f64,
    service: &ServiceDistribution,
    bracket: (f64, f64),
) -> Result<(f64, f64), Error> {
    let (mut a, mut b) = bracket;
    if !(a.is_finite() && b.is_finite() && a >= 0.0 && a <= b) {
        return Err(Error::InvalidBracket);
    }
    let eval = |theta: f64| mean_for_theta(lambda, service, Theta::Finite(theta));
    if a == b {
        return Ok((a, eval(a)?));
    }
    let tol = 1e-4 * service.mean();

    let mut x1 = b - (b - a) / GOLDEN_RATIO;
    let mut x2 = a + (b - a) / GOLDEN_RATIO;
    let mut f1 = eval(x1)?;
    let mut f2 = eval(x2)?;
    let fa = eval(a)?;
    let fb = eval(b)?;
    if f1.min(f2) >= fa.min(fb) {
        return Err(Error::InvalidBracket);
    }
    let mut best = if f1 < f2 { (x1, f1) } else { (x2, f2) };
    let track = |x: f64, f: f64, best: &mut (f64, f64)| {
        if f < best.1 {
            *best = (x, f);
        }
    };

    while b - a > tol {
        if f1 < f2 {
            b = x2;
            x2 = x1;
            f2 = f1;
            x1 = b - (b - a) / GOLDEN_RATIO;
            f1 = eval(x1)?;
            track(x1, f1, &mut best);
        } else {
            a = x1;
            x1 = x2;
            f1 = f2;
            x2 = a + (b - a) / GOLDEN_RATIO;
            f2 = eval(x2)?;
            track(x2, f2, &mut best);
        }
    }
    Ok(best)
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    fn exp1() -> ServiceDistribution {
        ServiceDistribution::exponential(1.0).unwrap()
    }

    /// A mixture with a long deterministic mode: protecting nearly-finished
    /// long services while still preempting fresh ones wins, so the mean has
    /// a genuine interior minimum in the threshold.
    fn long_mix() -> ServiceDistribution {
        ServiceDistribution::mixture_det_exp(0.5, 5.0, 2.0).unwrap()
    }

    #[test]
    fn exponential_service_minimizes_at_infinity() {
        let thetas: Vec<Theta> = [0.0, 0.5, 1.0, 2.0, 5.0]
            .into_iter()
            .map(Theta::Finite)
            .chain([Theta::Infinite])
            .collect();
        let res = sweep(1.0, &exp1(), &thetas).unwrap();
        assert!(res.best_theta.is_infinite());
        assert_relative_eq!(res.best_mean, 2.0, epsilon = 1e-6);
        assert_relative_eq!(res.mean_at_infinity.clone().unwrap(), 2.0, epsilon = 1e-6);
    }

    #[test]
    fn single_point_grid_still_carries_endpoints() {
        let res = sweep(
            1.0,
            &ServiceDistribution::deterministic(1.0).unwrap(),
            &[Theta::Finite(0.0)],
        )
        .unwrap();
        assert_relative_eq!(res.mean_at_zero.clone().unwrap(), 2.167653, epsilon = 1e-5);
        assert!(res.grid.len() >= 2);
        let sorted = res
            .grid
            .windows(2)
            .all(|w| w[0].theta.as_f64() <= w[1].theta.as_f64());
        assert!(sorted);
    }

    #[test]
    fn sweep_deterministic_across_calls() {
        let thetas = default_theta_grid(1.0);
        let a = sweep(0.8, &long_mix(), &thetas).unwrap();
        let b = sweep(0.8, &long_mix(), &thetas).unwrap();
        assert_eq!(a.best_mean, b.best_mean);
        assert_eq!(a.best_theta.as_f64(), b.best_theta.as_f64());
    }

    #[test]
    fn interior_minimum_found_and_refined() {
        let lambda = 0.3;
        let thetas: Vec<Theta> = (0..=12).map(|k| Theta::Finite(0.5 * k as f64)).collect();
        let res = sweep(lambda, &long_mix(), &thetas).unwrap();
        let best = res.best_theta.as_f64();
        assert!(best > 0.0 && best.is_finite(), "interior best, got {best}");
        assert!(res.best_mean < res.mean_at_zero.clone().unwrap());
        assert!(res.best_mean < res.mean_at_infinity.clone().unwrap());

        let (theta_star, mean_star) = refine(lambda, &long_mix(), (best - 0.5, best + 0.5)).unwrap();
        assert!(mean_star <= res.best_mean + 1e-12);
        assert!((theta_star - 3.2).abs() < 0.5, "theta* = {theta_star}");
    }

    #[test]
    fn refine_degenerate_bracket() {
        let (theta, mean) = refine(1.0, &exp1(), (0.7, 0.7)).unwrap();
        assert_eq!(theta, 0.7);
        assert_relative_eq!(
            mean,
            mean_for_theta(1.0, &exp1(), Theta::Finite(0.7)).unwrap(),
            epsilon = 1e-12
        );
    }

    #[test]
    fn refine_rejects_monotone_bracket() {
        // Exponential service decreases monotonically toward infinity.
        assert_eq!(refine(1.0, &exp1(), (1.0, 2.0)), Err(Error::InvalidBracket));
        assert_eq!(refine(1.0, &exp1(), (2.0, 1.0)), Err(Error::InvalidBracket));
    }
}
