//! The beta density on `[0, 1]`, its moments, and its standardized
//! (zero-mean, unit-variance) form on `[a, b]`.
//!
//! Exponents follow the `t^{α−1}(1−t)^{β−1}` convention throughout; a
//! Beta(1, 1) variable is uniform.

#[allow(unused_imports)] // shadowed by inherent f64 methods when std is linked
use num_traits::Float;

use crate::special::{ln_beta_unchecked, ln_pow_limit};
use crate::{Error, Result};

/// Shape parameters `(α, β)` of a beta density, both finite and `≥ 1`.
#[derive(Debug, Clone, Copy, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize))]
pub struct BetaParams {
    alpha: f64,
    beta: f64,
    #[cfg_attr(feature = "serde", serde(skip))]
    ln_b: f64,
}

impl BetaParams {
    pub fn new(alpha: f64, beta: f64) -> Result<Self> {
        if !alpha.is_finite() || !beta.is_finite() {
            return Err(Error::Domain("beta parameters must be finite"));
        }
        if alpha < 1.0 || beta < 1.0 {
            return Err(Error::Domain("beta parameters must satisfy alpha >= 1 and beta >= 1"));
        }
        Ok(Self {
            alpha,
            beta,
            ln_b: ln_beta_unchecked(alpha, beta),
        })
    }

    pub fn alpha(&self) -> f64 {
        self.alpha
    }

    pub fn beta(&self) -> f64 {
        self.beta
    }

    /// `ln B(α, β)`, cached at construction.
    pub fn ln_beta(&self) -> f64 {
        self.ln_b
    }

    /// The pair with `α` and `β` exchanged (mirror image density).
    pub fn swapped(&self) -> Self {
        Self {
            alpha: self.beta,
            beta: self.alpha,
            ln_b: self.ln_b,
        }
    }

    pub fn is_symmetric(&self) -> bool {
        self.alpha == self.beta
    }

    /// Density at `t`; zero outside `[0, 1]`, limit values at the endpoints.
    pub fn pdf(&self, t: f64) -> f64 {
        if !(0.0..=1.0).contains(&t) {
            return 0.0;
        }
        (ln_pow_limit(t, self.alpha - 1.0) + ln_pow_limit(1.0 - t, self.beta - 1.0) - self.ln_b).exp()
    }

    pub fn stats(&self) -> DistributionStats {
        let (a, b) = (self.alpha, self.beta);
        let s = a + b;
        let mode = if a > 1.0 && b > 1.0 {
            Some((a - 1.0) / (s - 2.0))
        } else {
            None
        };
        DistributionStats {
            mean: a / s,
            mode,
            variance: a * b / (s * s * (s + 1.0)),
        }
    }

    /// Raw moment `E[tⁿ] = B(α+n, β)/B(α, β)`.
    pub fn moment(&self, n: u32) -> f64 {
        if n == 0 {
            return 1.0;
        }
        // product form avoids the log round trip: Π (α+k)/(α+β+k)
        (0..n)
            .map(f64::from)
            .map(|k| (self.alpha + k) / (self.alpha + self.beta + k))
            .product()
    }

    /// Derivative of the density.
    ///
    /// Inside `(0, 1)` this is `[(α−1)/t − (β−1)/(1−t)]·pdf(t)`, evaluated
    /// in the equivalent form `[(α−1)(1−t) − (β−1)t]·t^{α−2}(1−t)^{β−2}/B`.
    /// At an endpoint the one-sided limit is returned when it is finite.
    pub fn pdf_derivative(&self, t: f64) -> Result<f64> {
        let (a, b) = (self.alpha, self.beta);
        if !(0.0..=1.0).contains(&t) {
            return Ok(0.0);
        }
        if t == 0.0 || t == 1.0 {
            // p'(t) = [(α−1)t^{α−2}(1−t)^{β−1} − (β−1)t^{α−1}(1−t)^{β−2}] / B
            let inv_b = (-self.ln_b).exp();
            let (near, far, near_sign) = if t == 0.0 { (a, b, 1.0) } else { (b, a, -1.0) };
            return if near == 1.0 {
                // the vanishing factor's exponent is zero; the other term carries the limit
                Ok(-near_sign * (far - 1.0) * inv_b)
            } else if near > 2.0 {
                Ok(0.0)
            } else if near == 2.0 {
                Ok(near_sign * inv_b)
            } else {
                Err(Error::EndpointSingular { endpoint: t })
            };
        }
        let u = 1.0 - t;
        let bracket = (a - 1.0) * u - (b - 1.0) * t;
        let mag = ((a - 2.0) * t.ln() + (b - 2.0) * u.ln() - self.ln_b).exp();
        Ok(bracket * mag)
    }

    /// Support geometry of the standardized density.
    pub fn standardize(&self) -> SupportGeometry {
        let (a, b) = (self.alpha, self.beta);
        let s = a + b;
        let root = (s + 1.0).sqrt();
        SupportGeometry {
            a: -(a / b).sqrt() * root,
            b: (b / a).sqrt() * root,
            length: s * ((s + 1.0) / (a * b)).sqrt(),
            mean: a / s,
        }
    }

    /// Density of `T·(t − m)`, which has zero mean and unit variance; it is
    /// the scale function of the beta wavelets.
    pub fn std_pdf(&self, t: f64) -> f64 {
        let g = self.standardize();
        self.std_pdf_with(&g, t)
    }

    #[inline]
    pub(crate) fn std_pdf_with(&self, g: &SupportGeometry, t: f64) -> f64 {
        if t < g.a || t > g.b {
            return 0.0;
        }
        let ln_norm = -self.ln_b - (self.alpha + self.beta - 1.0) * g.length.ln();
        (ln_pow_limit(t - g.a, self.alpha - 1.0) + ln_pow_limit(g.b - t, self.beta - 1.0) + ln_norm).exp()
    }
}

/// Mean, mode and variance of a beta density.
#[derive(Debug, Clone, Copy, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize))]
pub struct DistributionStats {
    pub mean: f64,
    /// `None` unless `α > 1` and `β > 1`.
    pub mode: Option<f64>,
    pub variance: f64,
}

/// Support `[a, b]` of the standardized density, its length `T = b − a`,
/// and the mean `m` of the unit-interval density it came from.
///
/// `a = −m·T`, `b = (1−m)·T` and `T = 1/σ`.
#[derive(Debug, Clone, Copy, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize))]
pub struct SupportGeometry {
    pub a: f64,
    pub b: f64,
    pub length: f64,
    pub mean: f64,
}

impl SupportGeometry {
    pub fn contains(&self, t: f64) -> bool {
        (self.a..=self.b).contains(&t)
    }
}

/// Moment-matched beta parameters for a `[0, 1]` variable with the given
/// mean and variance.
///
/// `k = m(1−m)/σ² − 1`, `α = m·k`, `β = (1−m)·k`. The resulting `α` equals
/// `m(m − m² − σ²)/σ²`. Fits falling below 1 by no more than 1e-9 relative
/// (grid roundoff on a uniform density) are snapped to 1; larger shortfalls
/// are a domain error because [`BetaParams`] requires `α, β ≥ 1`.
pub fn clt_fit(mean: f64, variance: f64) -> Result<BetaParams> {
    if !(mean > 0.0 && mean < 1.0) {
        return Err(Error::Domain("mean must lie in (0, 1)"));
    }
    if !(variance > 0.0) {
        return Err(Error::Domain("variance must be positive"));
    }
    if variance >= mean * (1.0 - mean) {
        return Err(Error::Domain("variance must be below mean*(1-mean)"));
    }
    let k = mean * (1.0 - mean) / variance - 1.0;
    let snap = |x: f64| if x < 1.0 && x > 1.0 - 1e-9 { 1.0 } else { x };
    BetaParams::new(snap(mean * k), snap((1.0 - mean) * k))
}
