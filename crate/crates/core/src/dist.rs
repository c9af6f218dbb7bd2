//! Service-time distributions and model parameters.
//!
//! A [`ServiceDistribution`] is a finite mixture of point masses (atoms) and
//! exponential components. Every integral the transform kernels need
//! (Laplace-Stieltjes transforms, threshold-truncated exponential integrals,
//! survivor-weighted integrals) reduces to elementary closed form for this
//! family, so no quadrature appears anywhere in the analytic pipeline.

use alloc::vec::Vec;
use core::fmt;
use core::str::FromStr;

// Float-math methods resolve through the trait when built without std.
#[allow(unused_imports)]
use num_traits::Float;
use rand::Rng;

use crate::{Complex, Error};

/// Tolerance on the mixture-weight normalization.
pub const WEIGHT_TOL: f64 = 1e-12;

/// Service threshold `theta` in `[0, inf]`.
///
/// Infinity is a distinguished variant rather than `f64::INFINITY` so that
/// every kernel takes an explicit branch instead of relying on float
/// overflow semantics in identities like `e^{lambda*theta}`.
#[derive(Debug, Clone, Copy, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize))]
pub enum Theta {
    Finite(f64),
    Infinite,
}

impl Theta {
    /// A finite threshold; must be `>= 0`.
    pub fn finite(value: f64) -> Result<Self, Error> {
        if !value.is_finite() || value < 0.0 {
            return Err(Error::InvalidParams(alloc::format!(
                "theta must be finite and >= 0, got {value}"
            )));
        }
        Ok(Theta::Finite(value))
    }

    pub fn is_infinite(self) -> bool {
        matches!(self, Theta::Infinite)
    }

    /// The threshold as a float, `f64::INFINITY` for the infinite variant.
    pub fn as_f64(self) -> f64 {
        match self {
            Theta::Finite(v) => v,
            Theta::Infinite => f64::INFINITY,
        }
    }
}

impl fmt::Display for Theta {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Theta::Finite(v) => write!(f, "{v}"),
            Theta::Infinite => write!(f, "inf"),
        }
    }
}

impl FromStr for Theta {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Error> {
        match s.trim() {
            "inf" | "infinity" | "Inf" | "INF" => Ok(Theta::Infinite),
            v => {
                let x: f64 = v
                    .parse()
                    .map_err(|_| Error::InvalidParams(alloc::format!("bad theta: {v:?}")))?;
                if x.is_infinite() && x > 0.0 {
                    Ok(Theta::Infinite)
                } else {
                    Theta::finite(x)
                }
            }
        }
    }
}

/// Service-time law: a mixture of atoms `(location, weight)` and exponential
/// components `(rate, weight)`, with weights summing to one.
///
/// Locations and rates are strictly positive, so the service time is positive
/// almost surely and has finite mean.
#[derive(Debug, Clone, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize))]
pub struct ServiceDistribution {
    atoms: Vec<(f64, f64)>,
    exp_components: Vec<(f64, f64)>,
}

impl ServiceDistribution {
    /// General mixture constructor; validates weights and positivity.
    pub fn from_components(
        atoms: Vec<(f64, f64)>,
        exp_components: Vec<(f64, f64)>,
    ) -> Result<Self, Error> {
        let mut total = 0.0;
        for &(loc, w) in &atoms {
            if !(loc.is_finite() && loc > 0.0) {
                return Err(Error::InvalidDistribution(alloc::format!(
                    "atom location must be > 0, got {loc}"
                )));
            }
            if !(w.is_finite() && w >= 0.0) {
                return Err(Error::InvalidDistribution(alloc::format!(
                    "atom weight must be >= 0, got {w}"
                )));
            }
            total += w;
        }
        for &(rate, w) in &exp_components {
            if !(rate.is_finite() && rate > 0.0) {
                return Err(Error::InvalidDistribution(alloc::format!(
                    "exponential rate must be > 0, got {rate}"
                )));
            }
            if !(w.is_finite() && w >= 0.0) {
                return Err(Error::InvalidDistribution(alloc::format!(
                    "exponential weight must be >= 0, got {w}"
                )));
            }
            total += w;
        }
        if (total - 1.0).abs() > WEIGHT_TOL {
            return Err(Error::InvalidDistribution(alloc::format!(
                "weights sum to {total}, expected 1"
            )));
        }
        Ok(Self {
            atoms,
            exp_components,
        })
    }

    /// Unit mass at `d > 0`.
    pub fn deterministic(d: f64) -> Result<Self, Error> {
        Self::from_components(alloc::vec![(d, 1.0)], Vec::new())
    }

    /// Exponential with rate `mu > 0` (mean `1/mu`).
    pub fn exponential(mu: f64) -> Result<Self, Error> {
        Self::from_components(Vec::new(), alloc::vec![(mu, 1.0)])
    }

    /// Two-point mixture: weight `w` on a point mass at `d`, weight `1 - w`
    /// on an exponential with rate `mu`.
    pub fn mixture_det_exp(w: f64, d: f64, mu: f64) -> Result<Self, Error> {
        if !(0.0..=1.0).contains(&w) {
            return Err(Error::InvalidDistribution(alloc::format!(
                "mixture weight must be in [0, 1], got {w}"
            )));
        }
        Self::from_components(alloc::vec![(d, w)], alloc::vec![(mu, 1.0 - w)])
    }

    pub fn atoms(&self) -> &[(f64, f64)] {
        &self.atoms
    }

    pub fn exp_components(&self) -> &[(f64, f64)] {
        &self.exp_components
    }

    /// Mean service time.
    pub fn mean(&self) -> f64 {
        let a: f64 = self.atoms.iter().map(|&(d, w)| d * w).sum();
        let e: f64 = self.exp_components.iter().map(|&(r, w)| w / r).sum();
        a + e
    }

    /// Distribution function `G(x) = P(sigma <= x)`.
    pub fn cdf(&self, x: f64) -> f64 {
        if x < 0.0 {
            return 0.0;
        }
        let a: f64 = self
            .atoms
            .iter()
            .filter(|&&(d, _)| d <= x)
            .map(|&(_, w)| w)
            .sum();
        let e: f64 = self
            .exp_components
            .iter()
            .map(|&(r, w)| w * (1.0 - (-r * x).exp()))
            .sum();
        a + e
    }

    /// Survivor function `P(sigma > x)`.
    pub fn survivor(&self, x: f64) -> f64 {
        if x < 0.0 {
            return 1.0;
        }
        let a: f64 = self
            .atoms
            .iter()
            .filter(|&&(d, _)| d > x)
            .map(|&(_, w)| w)
            .sum();
        let e: f64 = self
            .exp_components
            .iter()
            .map(|&(r, w)| w * (-r * x).exp())
            .sum();
        a + e
    }

    /// Laplace-Stieltjes transform `E e^{-s sigma}` for `Re(s) >= 0`,
    /// evaluated in closed form:
    /// `sum_i w_i e^{-s d_i} + sum_j v_j r_j / (r_j + s)`.
    pub fn laplace(&self, s: Complex) -> Complex {
        let mut out = Complex::new(0.0, 0.0);
        for &(d, w) in &self.atoms {
            out += w * (-s * d).exp();
        }
        for &(r, w) in &self.exp_components {
            out += w * r / (r + s);
        }
        out
    }

    /// The two pieces of `E e^{-lambda (theta /\ sigma)}`:
    ///
    /// * the truncated transform `int_[0,theta] e^{-lambda s} dG(s)` (an atom
    ///   exactly at `theta` counts here, matching the event "the next arrival
    ///   comes after `theta /\ sigma`"), and
    /// * the survivor term `(1 - G(theta)) e^{-lambda theta}`.
    ///
    /// At `theta = inf` the pair is `(G_hat(lambda), 0)`.
    pub fn partial_exp_integral(&self, lambda: f64, theta: Theta) -> (f64, f64) {
        let th = match theta {
            Theta::Infinite => {
                return (self.laplace(Complex::new(lambda, 0.0)).re, 0.0);
            }
            Theta::Finite(v) => v,
        };
        let mut truncated = 0.0;
        for &(d, w) in &self.atoms {
            if d <= th {
                truncated += w * (-lambda * d).exp();
            }
        }
        for &(r, w) in &self.exp_components {
            truncated += w * r / (r + lambda) * (1.0 - (-(r + lambda) * th).exp());
        }
        let survivor = self.survivor(th) * (-lambda * th).exp();
        (truncated, survivor)
    }

    /// The two tail integrals behind the post-threshold kernels:
    ///
    /// * `I1 = int_theta^inf (e^{-lambda theta} - e^{-lambda z}) dG(z)`,
    /// * `I2 = int_theta^inf (1 - e^{-lambda (x - theta)}) dG(x) = e^{lambda theta} I1`.
    ///
    /// Errors with [`Error::DegenerateTail`] when there is no service mass
    /// strictly above `theta` (both integrals vanish).
    pub fn tail_weighted_integrals(&self, lambda: f64, theta: f64) -> Result<(f64, f64), Error> {
        let mut i1 = 0.0;
        for &(d, w) in &self.atoms {
            if d > theta {
                i1 += w * ((-lambda * theta).exp() - (-lambda * d).exp());
            }
        }
        for &(r, w) in &self.exp_components {
            i1 += w * (-(lambda + r) * theta).exp() * lambda / (r + lambda);
        }
        if i1 <= 0.0 {
            return Err(Error::DegenerateTail);
        }
        Ok((i1, (lambda * theta).exp() * i1))
    }

    /// `int_(theta,inf) e^{-z x} dG(x)` in closed form.
    pub(crate) fn tail_transform(&self, z: Complex, theta: f64) -> Complex {
        let mut out = Complex::new(0.0, 0.0);
        for &(d, w) in &self.atoms {
            if d > theta {
                out += w * (-z * d).exp();
            }
        }
        for &(r, w) in &self.exp_components {
            out += w * r / (r + z) * (-(z + r) * theta).exp();
        }
        out
    }

    /// `int_0^hi e^{-z y} (1 - G(y + shift)) dy` in closed form.
    ///
    /// The atom part of the survivor contributes `w_i` on `y < d_i - shift`,
    /// each exponential component contributes globally; both integrate to
    /// elementary terms segment by segment.
    pub(crate) fn survivor_weighted_integral(&self, z: Complex, shift: f64, hi: Theta) -> Complex {
        let hi = hi.as_f64();
        let mut out = Complex::new(0.0, 0.0);
        for &(d, w) in &self.atoms {
            let b = d - shift;
            if b > 0.0 {
                out += w * exp_segment(z, 0.0, b.min(hi));
            }
        }
        for &(r, w) in &self.exp_components {
            out += w * (-r * shift).exp() * exp_segment(z + r, 0.0, hi);
        }
        out
    }

    /// Draw one service time by inverse transform on the mixture.
    pub fn sample<R: Rng + ?Sized>(&self, rng: &mut R) -> f64 {
        let u: f64 = rng.gen();
        let mut acc = 0.0;
        for &(d, w) in &self.atoms {
            acc += w;
            if u < acc {
                return d;
            }
        }
        for &(r, w) in &self.exp_components {
            acc += w;
            if u < acc {
                let v: f64 = rng.gen();
                return -(1.0 - v).ln() / r;
            }
        }
        // Weight roundoff landed past the last component; return its draw.
        if let Some(&(r, _)) = self.exp_components.last() {
            let v: f64 = rng.gen();
            -(1.0 - v).ln() / r
        } else {
            self.atoms.last().expect("nonempty mixture").0
        }
    }
}

/// `int_a^b e^{-z y} dy` for `b` possibly infinite; stable for small `|z|`.
pub(crate) fn exp_segment(z: Complex, a: f64, b: f64) -> Complex {
    if b <= a {
        return Complex::new(0.0, 0.0);
    }
    if b.is_infinite() {
        return (-z * a).exp() / z;
    }
    let width = b - a;
    if z.norm() * width < 1e-8 {
        // (1 - e^{-z w})/z expanded to avoid cancellation.
        let zw = z * width;
        return (-z * a).exp() * width * (1.0 - zw / 2.0 + zw * zw / 6.0);
    }
    ((-z * a).exp() - (-z * b).exp()) / z
}

impl fmt::Display for ServiceDistribution {
    /// Canonical literal for the named families (`det:`, `exp:`, `mix:`);
    /// general mixtures fall back to an explicit component list.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (self.atoms.as_slice(), self.exp_components.as_slice()) {
            ([(d, w)], []) if *w == 1.0 => write!(f, "det:{d}"),
            ([], [(r, w)]) if *w == 1.0 => write!(f, "exp:{r}"),
            ([(d, w)], [(r, _)]) => write!(f, "mix:{w},det={d},exp={r}"),
            _ => {
                write!(f, "components:")?;
                for (d, w) in &self.atoms {
                    write!(f, "det({d})*{w},")?;
                }
                for (r, w) in &self.exp_components {
                    write!(f, "exp({r})*{w},")?;
                }
                Ok(())
            }
        }
    }
}

impl FromStr for ServiceDistribution {
    type Err = Error;

    /// Parses the literal syntax `exp:MU`, `det:D`, `mix:W,det=D,exp=MU`.
    fn from_str(s: &str) -> Result<Self, Error> {
        let bad = |msg: &str| Error::ParseLiteral(alloc::format!("{msg} in {s:?}"));
        let (kind, rest) = s
            .trim()
            .split_once(':')
            .ok_or_else(|| bad("expected `kind:params`"))?;
        let num = |v: &str| -> Result<f64, Error> {
            v.trim().parse::<f64>().map_err(|_| bad("bad number"))
        };
        match kind.trim() {
            "exp" => ServiceDistribution::exponential(num(rest)?),
            "det" => ServiceDistribution::deterministic(num(rest)?),
            "mix" => {
                let mut parts = rest.split(',');
                let w = num(parts.next().ok_or_else(|| bad("missing weight"))?)?;
                let mut d = None;
                let mut mu = None;
                for p in parts {
                    let (key, val) = p.split_once('=').ok_or_else(|| bad("expected key=value"))?;
                    match key.trim() {
                        "det" => d = Some(num(val)?),
                        "exp" => mu = Some(num(val)?),
                        other => {
                            return Err(bad(&alloc::format!("unknown component {other:?}")));
                        }
                    }
                }
                ServiceDistribution::mixture_det_exp(
                    w,
                    d.ok_or_else(|| bad("missing det="))?,
                    mu.ok_or_else(|| bad("missing exp="))?,
                )
            }
            other => Err(bad(&alloc::format!("unknown family {other:?}"))),
        }
    }
}

/// Full model: Poisson arrival rate, preemption threshold, service law.
#[derive(Debug, Clone, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize))]
pub struct ModelParams {
    pub lambda: f64,
    pub theta: Theta,
    pub service: ServiceDistribution,
}

impl ModelParams {
    pub fn new(lambda: f64, theta: Theta, service: ServiceDistribution) -> Result<Self, Error> {
        if !(lambda.is_finite() && lambda > 0.0) {
            return Err(Error::InvalidParams(alloc::format!(
                "lambda must be finite and > 0, got {lambda}"
            )));
        }
        Ok(Self {
            lambda,
            theta,
            service,
        })
    }

    /// Offered load `rho = lambda * E sigma`.
    pub fn rho(&self) -> f64 {
        self.lambda * self.service.mean()
    }

    /// Natural time scale of the model (mean service plus mean interarrival);
    /// used to set differentiation steps and search tolerances.
    pub(crate) fn time_scale(&self) -> f64 {
        self.service.mean() + 1.0 / self.lambda
    }
}

impl fmt::Display for ModelParams {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "lambda={} theta={} dist={}",
            self.lambda, self.theta, self.service
        )
    }
}
