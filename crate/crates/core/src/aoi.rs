//! Assembly of the stationary AoI Laplace transform and its moments.
//!
//! Palm inversion over a departure cycle gives
//!
//! ```text
//!             sum_i  E(e^{-s a} | K0 = i) (1 - E(e^{-s C} | K-1 = i)) p_i
//! E e^{-s a} = ------------------------------------------------------------
//!                                  s E(C)
//! ```
//!
//! where `a` is the stationary age, `C` a cycle length, and the conditional
//! transforms mix the per-transition kernels with the Bernoulli occupancy
//! weights. The mean age follows from the same decomposition without going
//! through the transform:
//!
//! ```text
//! E a = sum_i p_i ( E(a(S0) | K0=i) E(C | K-1=i) + E(C^2 | K-1=i) / 2 ) / E(C)
//! ```
//!
//! which avoids stacking numerical derivatives of a ratio on top of the
//! removable singularity at `s = 0`.

use crate::diff::transform_moments;
use crate::dist::ModelParams;
use crate::kernels::{build_conditional, ConditionalTransforms, PolicyConstants};
use crate::{Complex, Error};

/// Below this |s| the cycle factor `(1 - L(s))/s` switches to a Taylor
/// expansion in the first two cycle moments; direct evaluation there loses
/// precision to cancellation.
const TAYLOR_RADIUS: f64 = 1e-4;

/// The stationary AoI transform together with the conditional building
/// blocks and precomputed cycle moments.
#[derive(Debug, Clone)]
pub struct AoiTransform {
    ct: ConditionalTransforms,
    constants: PolicyConstants,
    /// Per `K_{-1} = i`: mean and second moment of the cycle length.
    cycle_m1: [f64; 2],
    cycle_m2: [f64; 2],
    mean_cycle: f64,
    mean_aoi: f64,
}

/// Builds the stationary transform from the conditional ones, computing all
/// moments once by Richardson differentiation at the origin.
pub fn assemble(ct: ConditionalTransforms) -> Result<AoiTransform, Error> {
    let constants = ct.constants();
    let p = [constants.p0, constants.p1];
    let h0 = 1e-3 / ct.model().time_scale();

    let mut cycle_m1 = [0.0; 2];
    let mut cycle_m2 = [0.0; 2];
    let mut age_m1 = [0.0; 2];
    for i in 0..2 {
        if p[i] == 0.0 {
            continue;
        }
        let (m1, m2) = transform_moments(
            |s| cycle_by_kprev(&ct, p, i, Complex::new(s, 0.0)).re,
            h0,
        )?;
        cycle_m1[i] = m1;
        cycle_m2[i] = m2;
        let (a1, _) = transform_moments(
            |s| age_by_k0(&ct, p, i, Complex::new(s, 0.0)).re,
            h0,
        )?;
        age_m1[i] = a1;
    }

    let mean_cycle = p[0] * cycle_m1[0] + p[1] * cycle_m1[1];
    let mut mean_aoi = 0.0;
    for i in 0..2 {
        mean_aoi += p[i] * (age_m1[i] * cycle_m1[i] + 0.5 * cycle_m2[i]);
    }
    mean_aoi /= mean_cycle;

    Ok(AoiTransform {
        ct,
        constants,
        cycle_m1,
        cycle_m2,
        mean_cycle,
        mean_aoi,
    })
}

/// One-call pipeline from model parameters to the stationary transform.
pub fn aoi_transform(m: &ModelParams) -> Result<AoiTransform, Error> {
    let (_, ct) = build_conditional(m);
    assemble(ct)
}

fn age_by_k0(ct: &ConditionalTransforms, p: [f64; 2], i: usize, s: Complex) -> Complex {
    // Average over the occupancy K_{-1} = j entering the cycle.
    let mut out = Complex::new(0.0, 0.0);
    for j in 0..2 {
        if p[j] > 0.0 {
            out += p[j] * ct.age(j, i, s).expect("defined when weight positive");
        }
    }
    out
}

fn cycle_by_kprev(ct: &ConditionalTransforms, p: [f64; 2], i: usize, s: Complex) -> Complex {
    // Average over the occupancy K_0 = j left at the cycle's end.
    let mut out = Complex::new(0.0, 0.0);
    for j in 0..2 {
        if p[j] > 0.0 {
            out += p[j] * ct.cycle(i, j, s).expect("defined when weight positive");
        }
    }
    out
}

impl AoiTransform {
    /// The stationary transform `phi(s) = E e^{-s alpha(0)}`.
    ///
    /// The singularity at `s = 0` is removable; near it the cycle factor is
    /// replaced by its Taylor expansion `m1 - m2 s / 2` in the cycle moments.
    pub fn phi(&self, s: Complex) -> Complex {
        let p = [self.constants.p0, self.constants.p1];
        let mut out = Complex::new(0.0, 0.0);
        let taylor = s.norm() < TAYLOR_RADIUS;
        for i in 0..2 {
            if p[i] == 0.0 {
                continue;
            }
            let age = age_by_k0(&self.ct, p, i, s);
            let cycle_factor = if taylor {
                Complex::new(self.cycle_m1[i], 0.0) - s * (self.cycle_m2[i] / 2.0)
            } else {
                (1.0 - cycle_by_kprev(&self.ct, p, i, s)) / s
            };
            out += p[i] * age * cycle_factor;
        }
        out / self.mean_cycle
    }

    /// `E(e^{-s alpha(0)} | K_0 = i)`.
    pub fn cond_age_by_k0(&self, i: usize, s: Complex) -> Complex {
        age_by_k0(&self.ct, [self.constants.p0, self.constants.p1], i, s)
    }

    /// `E(e^{-s (S_0 - S_{-1})} | K_{-1} = i)`.
    pub fn cond_cycle_by_kprev(&self, i: usize, s: Complex) -> Complex {
        cycle_by_kprev(&self.ct, [self.constants.p0, self.constants.p1], i, s)
    }

    /// Mean cycle length `E(S_1 - S_0)` between successful departures.
    pub fn mean_cycle(&self) -> f64 {
        self.mean_cycle
    }

    /// Stationary mean age `E alpha(0)`.
    pub fn mean_aoi(&self) -> f64 {
        self.mean_aoi
    }

    pub fn constants(&self) -> PolicyConstants {
        self.constants
    }

    pub fn conditional(&self) -> &ConditionalTransforms {
        &self.ct
    }

    pub fn model(&self) -> &ModelParams {
        self.ct.model()
    }
}

/// Stationary mean AoI straight from model parameters.
pub fn mean_aoi(m: &ModelParams) -> Result<f64, Error> {
    Ok(aoi_transform(m)?.mean_aoi())
}
