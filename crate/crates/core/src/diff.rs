//! Richardson-extrapolated central differences for transform moments at 0.
//!
//! Laplace transforms of positive random variables are smooth at the origin
//! whenever the underlying moments are finite, so central differences with a
//! halving step sequence plus two Richardson levels give near machine-level
//! first and second derivatives. A stagnation check turns numerical
//! divergence (infinite moments) into an error instead of garbage.

use crate::Error;

/// Relative agreement required between the last two extrapolation levels.
const CONVERGENCE_TOL: f64 = 1e-5;

/// First two moments `(-f'(0), f''(0))` of a transform evaluated on the real
/// axis near 0. `h0` is the largest step; callers scale it to the problem's
/// time scale.
pub(crate) fn transform_moments<F: Fn(f64) -> f64>(f: F, h0: f64) -> Result<(f64, f64), Error> {
    let f0 = f(0.0);
    let mut d1 = [0.0; 3];
    let mut d2 = [0.0; 3];
    for k in 0..3 {
        let h = h0 / (1 << k) as f64;
        let fp = f(h);
        let fm = f(-h);
        d1[k] = (fp - fm) / (2.0 * h);
        d2[k] = (fp - 2.0 * f0 + fm) / (h * h);
    }
    let m1 = -richardson(d1, CONVERGENCE_TOL)?;
    let m2 = richardson(d2, CONVERGENCE_TOL)?;
    Ok((m1, m2))
}

/// Single Richardson-extrapolated first derivative at 0, for use as an
/// independent cross-check of moment computations.
#[cfg_attr(not(test), allow(dead_code))]
pub(crate) fn derivative_at_zero<F: Fn(f64) -> f64>(f: F, h0: f64) -> Result<f64, Error> {
    let mut d = [0.0; 3];
    for k in 0..3 {
        let h = h0 / (1 << k) as f64;
        d[k] = (f(h) - f(-h)) / (2.0 * h);
    }
    richardson(d, CONVERGENCE_TOL)
}

/// Two-level Richardson table for an O(h^2) difference sequence at steps
/// `h, h/2, h/4`; errors if the last two levels disagree.
fn richardson(d: [f64; 3], tol: f64) -> Result<f64, Error> {
    let r1 = (4.0 * d[1] - d[0]) / 3.0;
    let r2 = (4.0 * d[2] - d[1]) / 3.0;
    let out = (16.0 * r2 - r1) / 15.0;
    if !out.is_finite() {
        return Err(Error::NonFiniteMoment);
    }
    let scale = out.abs().max(1.0);
    if (out - r2).abs() > tol * scale {
        return Err(Error::NonFiniteMoment);
    }
    Ok(out)
}
