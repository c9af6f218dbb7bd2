//! Embedded-chain constants and conditional transform kernels.
//!
//! The queue is observed at successful departure epochs `S_n`; `K_n` counts
//! the messages left behind (0 or 1). The `K_n` form an i.i.d. Bernoulli
//! sequence, and the pair process `(S_n, K_n)` is Markov-renewal: given the
//! occupancy after a departure, the next cycle length and the age of the
//! message delivered at its end are independent of everything earlier.
//!
//! Four building-block distributions drive all conditional transforms:
//!
//! * `J`: duration of a failed service attempt, `(tau | tau < theta /\ sigma)`;
//! * `F0`: a successful service that saw no arrival, `(sigma | tau > sigma)`;
//! * `F1`: a successful service with a post-threshold arrival queued behind
//!   it, `(sigma | sigma > tau > theta)`;
//! * `H`: the backward interarrival seen from a departure that leaves a
//!   queued message, `(tau | tau < sigma - theta, sigma > theta)`.

// Float-math methods resolve through the trait when built without std.
#[allow(unused_imports)]
use num_traits::Float;

use crate::dist::{ModelParams, Theta};
use crate::Complex;

/// Embedded-chain constants: the failure probability of a single service
/// attempt and the Bernoulli law of the post-departure occupancy.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PolicyConstants {
    /// `q = P(tau < theta /\ sigma)`: an arrival preempts the attempt.
    pub q: f64,
    /// `p0 = P(K_n = 0) = G_hat(lambda) / (1 - q)`.
    pub p0: f64,
    /// `p1 = 1 - p0`.
    pub p1: f64,
}

/// `q`, `p0`, `p1` from the closed-form integrals of the service law.
///
/// `1 - q = E e^{-lambda (theta /\ sigma)}`; a departure leaves the system
/// empty iff the final service saw no arrival at all, which rescales the
/// transform at `lambda` by the success probability.
pub fn compute_constants(m: &ModelParams) -> PolicyConstants {
    let (truncated, survivor) = m.service.partial_exp_integral(m.lambda, m.theta);
    let one_minus_q = truncated + survivor;
    let ghat_lambda = m.service.laplace(Complex::new(m.lambda, 0.0)).re;
    let p0 = (ghat_lambda / one_minus_q).min(1.0);
    PolicyConstants {
        q: 1.0 - one_minus_q,
        p0,
        p1: 1.0 - p0,
    }
}

/// The four kernel transforms, evaluable at any complex `s` with
/// `Re(s) >= 0` (and in a real neighborhood of 0, as needed by numerical
/// differentiation).
#[derive(Debug, Clone)]
pub struct KernelTransforms {
    model: ModelParams,
    q: f64,
    ghat_lambda: f64,
    /// `(I1, I2)` tail normalizers; `None` when no service mass lies above
    /// the threshold (then `F1`/`H` are undefined and `p1 = 0`).
    tail: Option<(f64, f64)>,
}

/// Builds the kernels; a degenerate tail is recorded in the
/// [`KernelTransforms::f1_defined`] flag rather than treated as an error,
/// since the affected entries carry zero probability weight.
pub fn build_kernels(m: &ModelParams, c: &PolicyConstants) -> KernelTransforms {
    let tail = match m.theta {
        Theta::Infinite => None,
        Theta::Finite(th) => m.service.tail_weighted_integrals(m.lambda, th).ok(),
    };
    KernelTransforms {
        model: m.clone(),
        q: c.q,
        ghat_lambda: m.service.laplace(Complex::new(m.lambda, 0.0)).re,
        tail,
    }
}

impl KernelTransforms {
    /// Whether the post-threshold kernels `F1`/`H` exist (service mass above
    /// the threshold).
    pub fn f1_defined(&self) -> bool {
        self.tail.is_some()
    }

    /// Failed-attempt transform `J_hat(s)`, with density proportional to
    /// `lambda e^{-lambda y} (1 - G(y))` on `[0, theta)`.
    ///
    /// When `q = 0` there are no failed attempts and `J_hat` is fixed at 1 by
    /// convention; it is then never weighted into any product.
    pub fn j_hat(&self, s: Complex) -> Complex {
        if self.q == 0.0 {
            return Complex::new(1.0, 0.0);
        }
        let z = s + self.model.lambda;
        self.model
            .service
            .survivor_weighted_integral(z, 0.0, self.model.theta)
            * (self.model.lambda / self.q)
    }

    /// `F0_hat(s) = G_hat(s + lambda) / G_hat(lambda)`.
    pub fn f0_hat(&self, s: Complex) -> Complex {
        self.model.service.laplace(s + self.model.lambda) / self.ghat_lambda
    }

    /// `F1_hat(s)`: transform of a successful service given a post-threshold
    /// arrival occurred during it. `None` when undefined.
    pub fn f1_hat(&self, s: Complex) -> Option<Complex> {
        let (i1, _) = self.tail?;
        let th = match self.model.theta {
            Theta::Finite(th) => th,
            Theta::Infinite => return None,
        };
        let lam = self.model.lambda;
        let weighted = (-lam * th).exp() * self.model.service.tail_transform(s, th)
            - self.model.service.tail_transform(s + lam, th);
        Some(weighted / i1)
    }

    /// `H_hat(s)`: transform of the backward interarrival from a departure
    /// that leaves a queued message. `None` when undefined.
    pub fn h_hat(&self, s: Complex) -> Option<Complex> {
        let (_, i2) = self.tail?;
        let th = match self.model.theta {
            Theta::Finite(th) => th,
            Theta::Infinite => return None,
        };
        let z = s + self.model.lambda;
        Some(
            self.model
                .service
                .survivor_weighted_integral(z, th, Theta::Infinite)
                * (self.model.lambda / i2),
        )
    }

    /// Geometric retry factor `(1 - q) / (1 - q J_hat(s))`: the transform of
    /// the total duration of the geometric number of failed attempts.
    pub fn geometric_factor(&self, s: Complex) -> Complex {
        if self.q == 0.0 {
            return Complex::new(1.0, 0.0);
        }
        (1.0 - self.q) / (1.0 - self.q * self.j_hat(s))
    }

    pub fn model(&self) -> &ModelParams {
        &self.model
    }
}

/// The eight conditional transforms of cycle length and age-at-departure,
/// indexed by the occupancy pair `(K_{-1}, K_0)`.
#[derive(Debug, Clone)]
pub struct ConditionalTransforms {
    kernels: KernelTransforms,
    constants: PolicyConstants,
}

/// Wires kernels and constants into the per-transition transforms.
pub fn conditional_transforms(
    kernels: KernelTransforms,
    constants: PolicyConstants,
) -> ConditionalTransforms {
    ConditionalTransforms { kernels, constants }
}

impl ConditionalTransforms {
    /// Entries touching occupancy 1 exist only when `p1 > 0` (equivalently,
    /// when the post-threshold kernels exist).
    pub fn defined(&self, prev: usize, next: usize) -> bool {
        debug_assert!(prev < 2 && next < 2);
        (prev == 0 && next == 0) || (self.constants.p1 > 0.0 && self.kernels.f1_defined())
    }

    /// `E(e^{-s (S_0 - S_{-1})} | K_{-1} = prev, K_0 = next)`.
    ///
    /// A cycle is: the idle wait for the first arrival (only when starting
    /// empty), a geometric number of failed attempts, then the successful
    /// service whose type (`F0`/`F1`) is fixed by the occupancy it leaves.
    pub fn cycle(&self, prev: usize, next: usize, s: Complex) -> Option<Complex> {
        if !self.defined(prev, next) {
            return None;
        }
        let final_service = if next == 0 {
            self.kernels.f0_hat(s)
        } else {
            self.kernels.f1_hat(s)?
        };
        let mut out = self.kernels.geometric_factor(s) * final_service;
        if prev == 0 {
            let lam = self.kernels.model.lambda;
            out *= lam / (lam + s);
        }
        Some(out)
    }

    /// `E(e^{-s alpha(S_0)} | K_{-1} = prev, K_0 = next)`.
    ///
    /// Starting empty, the delivered message entered service on arrival, so
    /// its age is exactly its service time. Starting with a queued message,
    /// either some arrival preempted it (probability `q`; the delivered
    /// message is again served from its own arrival) or the queued message
    /// itself was served (probability `1 - q`), adding the backward
    /// interarrival `V ~ H` to its service.
    pub fn age(&self, prev: usize, next: usize, s: Complex) -> Option<Complex> {
        if !self.defined(prev, next) {
            return None;
        }
        let final_service = if next == 0 {
            self.kernels.f0_hat(s)
        } else {
            self.kernels.f1_hat(s)?
        };
        if prev == 0 {
            return Some(final_service);
        }
        let q = self.constants.q;
        Some(final_service * (q + (1.0 - q) * self.kernels.h_hat(s)?))
    }

    pub fn constants(&self) -> PolicyConstants {
        self.constants
    }

    pub fn kernels(&self) -> &KernelTransforms {
        &self.kernels
    }

    pub fn model(&self) -> &ModelParams {
        self.kernels.model()
    }
}

/// Convenience: constants, kernels and conditional transforms in one call.
pub fn build_conditional(m: &ModelParams) -> (PolicyConstants, ConditionalTransforms) {
    let c = compute_constants(m);
    let k = build_kernels(m, &c);
    (c, conditional_transforms(k, c))
}
