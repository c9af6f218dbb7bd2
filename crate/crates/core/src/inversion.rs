//! Tail probabilities by numerical inversion of the AoI transform.
//!
//! The CCDF has transform `(1 - phi(s)) / s`, which is inverted with the
//! Euler-summation method: an alternating series over poles of a Bromwich
//! discretization, accelerated by binomial averaging of the trailing partial
//! sums. The CCDF (not the density) is inverted because it stays continuous
//! even when the service law has atoms, which keeps the inversion well
//! conditioned.

use alloc::vec::Vec;

// Float-math methods resolve through the trait when built without std.
#[allow(unused_imports)]
use num_traits::Float;

use crate::aoi::AoiTransform;
use crate::{Complex, Error};

/// Above this internal error estimate a [`TailEstimate`] is flagged
/// inaccurate.
pub const ACCURACY_WARNING: f64 = 1e-6;

/// A tail requirement: threshold, and optionally the tolerance to solve for.
#[derive(Debug, Clone, Copy, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize))]
pub struct TailQuery {
    pub nu: f64,
    pub epsilon_target: Option<f64>,
}

impl TailQuery {
    pub fn validate(&self) -> Result<(), Error> {
        if !(self.nu > 0.0 && self.nu.is_finite()) {
            return Err(Error::InvalidParams(alloc::format!(
                "nu must be finite and > 0, got {}",
                self.nu
            )));
        }
        if let Some(eps) = self.epsilon_target {
            if !(eps > 0.0 && eps < 1.0) {
                return Err(Error::InvalidParams(alloc::format!(
                    "epsilon must lie in (0, 1), got {eps}"
                )));
            }
        }
        Ok(())
    }
}

/// One inverted tail probability with its internal accuracy estimate.
#[derive(Debug, Clone, Copy)]
pub struct TailEstimate {
    /// `P(alpha > nu)` clamped to `[0, 1]`.
    pub value: f64,
    /// Raw inversion output before clamping.
    pub raw: f64,
    /// Difference between the last two Euler averages; a proxy for the
    /// remaining series truncation error.
    pub error_estimate: f64,
}

impl TailEstimate {
    pub fn is_accurate(&self) -> bool {
        self.error_estimate <= ACCURACY_WARNING
    }
}

/// Euler-summation inversion parameters.
///
/// `2M + 1` series terms (`M = 25`) with binomial averaging over the last 12
/// partial sums; the discount `A` sets the aliasing error roughly to
/// `e^{-A}`.
#[derive(Debug, Clone, Copy)]
pub struct EulerInversion {
    pub terms: usize,
    pub euler_terms: usize,
    pub discount: f64,
}

impl Default for EulerInversion {
    fn default() -> Self {
        Self {
            terms: 51,
            euler_terms: 12,
            discount: 18.4,
        }
    }
}

impl EulerInversion {
    /// `P(alpha > nu)` by inverting `(1 - phi(s)) / s` at `t = nu`.
    pub fn ccdf(&self, transform: &AoiTransform, nu: f64) -> TailEstimate {
        let ccdf_transform = |s: Complex| (1.0 - transform.phi(s)) / s;
        let a = self.discount;
        let base = Complex::new(a / (2.0 * nu), 0.0);
        let scale = (a / 2.0).exp() / nu;

        let mut partial = Vec::with_capacity(self.terms + self.euler_terms);
        let mut sum = 0.5 * ccdf_transform(base).re;
        let mut sign = -1.0;
        for k in 1..self.terms + self.euler_terms {
            let s = Complex::new(base.re, k as f64 * core::f64::consts::PI / nu);
            sum += sign * ccdf_transform(s).re;
            sign = -sign;
            partial.push(sum);
        }

        let average = |offset: usize| -> f64 {
            // Binomial average of euler_terms consecutive partial sums.
            let m = self.euler_terms - 1;
            let mut weight = 1.0f64; // C(m, 0)
            let mut acc = 0.0;
            for j in 0..=m {
                acc += weight * partial[offset + j];
                weight *= (m - j) as f64 / (j + 1) as f64;
            }
            acc / (2.0f64).powi(m as i32)
        };
        let last = average(self.terms - 1);
        let prev = average(self.terms - 2);
        let raw = scale * last;
        TailEstimate {
            value: raw.clamp(0.0, 1.0),
            raw,
            error_estimate: (scale * (last - prev)).abs(),
        }
    }

    /// Smallest `nu` with `P(alpha > nu) <= epsilon`, located by bracketed
    /// bisection to a tolerance of `1e-6` mean ages.
    ///
    /// Errors with [`Error::BracketFailure`] when the tail never crosses
    /// `epsilon` below `1e4` mean ages.
    pub fn find_threshold(&self, transform: &AoiTransform, epsilon: f64) -> Result<f64, Error> {
        if !(epsilon > 0.0 && epsilon < 1.0) {
            return Err(Error::InvalidParams(alloc::format!(
                "epsilon must lie in (0, 1), got {epsilon}"
            )));
        }
        let mean = transform.mean_aoi();
        let tol = 1e-6 * mean;
        // The CCDF starts at 1 > epsilon; expand until it falls below. A
        // crossing only counts when the inversion's own error estimate is
        // small enough to certify it, so targets below the numerical noise
        // floor report bracket failure instead of a spurious threshold.
        let certified = |est: &TailEstimate| {
            est.value <= epsilon && est.error_estimate <= epsilon.max(ACCURACY_WARNING)
        };
        let mut lo = 0.0;
        let mut hi = mean;
        let cap = 1e4 * mean;
        while !certified(&self.ccdf(transform, hi)) {
            lo = hi;
            hi *= 2.0;
            if hi > cap {
                return Err(Error::BracketFailure);
            }
        }
        while hi - lo > tol {
            let mid = 0.5 * (lo + hi);
            if self.ccdf(transform, mid).value <= epsilon {
                hi = mid;
            } else {
                lo = mid;
            }
        }
        Ok(0.5 * (lo + hi))
    }
}
