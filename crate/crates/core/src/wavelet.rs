//! Closed-form beta scale functions and beta wavelets of order `N`.
//!
//! The scale function is the standardized beta density
//! `φ(t) = (t−a)^{α−1}(b−t)^{β−1} / (B(α,β)·T^{α+β−1})` on `[a, b]`, and the
//! order-`N` wavelet is `ψ_N = (−1)^N dᴺφ/dtᴺ`. Expanding the derivative of
//! the product with Leibniz' rule gives
//!
//! ```text
//! ψ_N(t) = (−1)^N / (B·T^{α+β−1}) · Σₙ (−1)ⁿ C(N,n) · (α−1)↓(N−n) (t−a)^{α−1−(N−n)}
//!                                                   · (β−1)↓n     (b−t)^{β−1−n}
//! ```
//!
//! where `x↓k = x(x−1)…(x−k+1) = Γ(x+1)/Γ(x+1−k)` is the falling factorial.

use alloc::vec::Vec;
use core::f64::consts::PI;

#[allow(unused_imports)] // shadowed by inherent f64 methods when std is linked
use num_traits::Float;

use crate::density::{BetaParams, SupportGeometry};
use crate::special::{ln_gamma_unchecked, ln_pow_limit};
use crate::{Error, Result};

#[derive(Debug, Clone, PartialEq)]
struct LeibnizTerm {
    negative: bool,
    ln_coef: f64,
    left_exp: f64,
    right_exp: f64,
}

/// A beta wavelet: shape parameters plus derivative order.
///
/// Valid when `α > 1`, `β > 1` and `1 ≤ N ≤ min(α, β) − 1`.
#[derive(Debug, Clone, PartialEq)]
pub struct WaveletSpec {
    params: BetaParams,
    order: u32,
    geometry: SupportGeometry,
    ln_norm: f64,
    terms: Vec<LeibnizTerm>,
}

impl WaveletSpec {
    pub fn new(params: BetaParams, order: u32) -> Result<Self> {
        let (alpha, beta) = (params.alpha(), params.beta());
        if !(alpha > 1.0 && beta > 1.0) {
            return Err(Error::Domain("beta wavelets require alpha > 1 and beta > 1"));
        }
        if order == 0 {
            return Err(Error::Domain("wavelet order must be at least 1"));
        }
        if f64::from(order) > alpha.min(beta) - 1.0 {
            return Err(Error::Domain("wavelet order must not exceed min(alpha, beta) - 1"));
        }
        let geometry = params.standardize();
        let ln_norm = -params.ln_beta() - (alpha + beta - 1.0) * geometry.length.ln();

        let n_total = order;
        let terms = (0..=n_total)
            .map(|n| {
                let k_left = n_total - n;
                let ln_binom = ln_gamma_unchecked(f64::from(n_total) + 1.0)
                    - ln_gamma_unchecked(f64::from(n) + 1.0)
                    - ln_gamma_unchecked(f64::from(k_left) + 1.0);
                let (ff_left, neg_left) = ln_falling(alpha - 1.0, k_left);
                let (ff_right, neg_right) = ln_falling(beta - 1.0, n);
                LeibnizTerm {
                    negative: ((n_total + n) % 2 == 1) ^ neg_left ^ neg_right,
                    ln_coef: ln_binom + ff_left + ff_right,
                    left_exp: alpha - 1.0 - f64::from(k_left),
                    right_exp: beta - 1.0 - f64::from(n),
                }
            })
            .collect();

        Ok(Self {
            params,
            order,
            geometry,
            ln_norm,
            terms,
        })
    }

    pub fn params(&self) -> &BetaParams {
        &self.params
    }

    pub fn order(&self) -> u32 {
        self.order
    }

    /// Support of both `φ` and `ψ`.
    pub fn geometry(&self) -> SupportGeometry {
        self.geometry
    }

    /// Scale function `φ(t)`; identical to [`BetaParams::std_pdf`].
    pub fn scale_fn(&self, t: f64) -> f64 {
        let g = &self.geometry;
        if t < g.a || t > g.b {
            return 0.0;
        }
        let (alpha, beta) = (self.params.alpha(), self.params.beta());
        (self.ln_norm + ln_pow_limit(t - g.a, alpha - 1.0) + ln_pow_limit(g.b - t, beta - 1.0)).exp()
    }

    /// Wavelet `ψ_N(t) = (−1)^N φ^{(N)}(t)`; zero outside `[a, b]`,
    /// one-sided limits at the endpoints.
    pub fn wavelet(&self, t: f64) -> f64 {
        let g = &self.geometry;
        if t < g.a || t > g.b {
            return 0.0;
        }
        let (u, v) = (t - g.a, g.b - t);
        self.terms
            .iter()
            .map(|term| {
                let mag = (self.ln_norm
                    + term.ln_coef
                    + ln_pow_limit(u, term.left_exp)
                    + ln_pow_limit(v, term.right_exp))
                .exp();
                if term.negative {
                    -mag
                } else {
                    mag
                }
            })
            .sum()
    }

    /// `n ≥ 2` uniform samples of `φ` or `ψ` on `[a, b]`, endpoints included.
    pub fn sample(&self, n: usize, which: Waveform) -> Result<SampledWaveform> {
        if n < 2 {
            return Err(Error::Domain("at least two samples are required"));
        }
        let g = &self.geometry;
        let dt = g.length / (n - 1) as f64;
        let values = (0..n)
            .map(|k| {
                let t = if k + 1 == n { g.b } else { g.a + dt * k as f64 };
                match which {
                    Waveform::Scale => self.scale_fn(t),
                    Waveform::Wavelet => self.wavelet(t),
                }
            })
            .collect();
        SampledWaveform::new(g.a, dt, values)
    }
}

/// `ln |x↓k|` and whether `x↓k < 0`.
fn ln_falling(x: f64, k: u32) -> (f64, bool) {
    let mut ln = 0.0;
    let mut negative = false;
    for i in 0..k {
        let f = x - f64::from(i);
        if f == 0.0 {
            return (f64::NEG_INFINITY, false);
        }
        negative ^= f < 0.0;
        ln += f.abs().ln();
    }
    (ln, negative)
}

/// Which function of a [`WaveletSpec`] to sample.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Waveform {
    Scale,
    Wavelet,
}

/// Uniformly sampled real function: `values[k]` is taken at `t0 + k·dt`.
#[derive(Debug, Clone, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize))]
pub struct SampledWaveform {
    pub t0: f64,
    pub dt: f64,
    pub values: Vec<f64>,
}

impl SampledWaveform {
    pub fn new(t0: f64, dt: f64, values: Vec<f64>) -> Result<Self> {
        if !(dt > 0.0) || !dt.is_finite() || !t0.is_finite() {
            return Err(Error::Domain("sample spacing must be positive and finite"));
        }
        if values.len() < 2 {
            return Err(Error::Domain("a waveform needs at least two samples"));
        }
        if let Some(k) = values.iter().position(|v| !v.is_finite()) {
            return Err(Error::NonFinite {
                at: t0 + dt * k as f64,
            });
        }
        Ok(Self { t0, dt, values })
    }

    pub fn time(&self, k: usize) -> f64 {
        self.t0 + self.dt * k as f64
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (f64, f64)> + '_ {
        self.values.iter().enumerate().map(|(k, &v)| (self.time(k), v))
    }
}

/// Closed form of the first-order symmetric wavelet,
/// `K(α)·t·[t² − (2α+1)]^{α−2}` with
/// `K(α) = (−1)^α · 2(α−1)/(2√(2α+1))^{2α−1} · Γ(2α)/Γ(α)²`.
///
/// Only integer `α ≥ 2` is accepted: the bracket is negative on the support,
/// so the power is not real otherwise. For integer `α` this agrees with
/// [`WaveletSpec::wavelet`] for `(α, α, 1)` including sign.
pub fn symmetric_wavelet(alpha: f64, t: f64) -> Result<f64> {
    if !(alpha > 1.0) || alpha.fract() != 0.0 || alpha > f64::from(i32::MAX) {
        return Err(Error::Domain("symmetric closed form needs an integer alpha >= 2"));
    }
    let c2 = 2.0 * alpha + 1.0;
    if t * t > c2 {
        return Ok(0.0);
    }
    let sign = (PI * alpha).cos().round();
    let ln_k = (2.0 * (alpha - 1.0)).ln() - (2.0 * alpha - 1.0) * (2.0 * c2.sqrt()).ln()
        + ln_gamma_unchecked(2.0 * alpha)
        - 2.0 * ln_gamma_unchecked(alpha);
    // alpha is integral, so the power is an integer power
    let power = (t * t - c2).powi(alpha as i32 - 2);
    Ok(sign * ln_k.exp() * t * power)
}

/// Cyclic balance `R = b/|a| = β/α`.
pub fn cyclic_balance(p: &BetaParams) -> f64 {
    p.beta() / p.alpha()
}

/// Instant where the first-order wavelet changes sign (the mode of the
/// standardized density).
pub fn zero_cross(p: &BetaParams) -> Result<f64> {
    let (a, b) = (p.alpha(), p.beta());
    if !(a > 1.0 && b > 1.0) {
        return Err(Error::Domain("zero crossing requires alpha > 1 and beta > 1"));
    }
    Ok((a - b) / (a + b - 2.0) * ((a + b + 1.0) / (a * b)).sqrt())
}

/// Endpoint behaviour of the first-order wavelet.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize))]
pub enum Smoothness {
    /// `α > 2` and `β > 2`: `ψ(a) = ψ(b) = 0`, no jump at the support edges.
    ContinuousEverywhere,
    /// The wavelet or its derivative may jump at a support endpoint.
    EndpointDiscontinuousDerivOrValue,
}

pub fn smoothness_class(p: &BetaParams) -> Smoothness {
    if p.alpha() > 2.0 && p.beta() > 2.0 {
        Smoothness::ContinuousEverywhere
    } else {
        Smoothness::EndpointDiscontinuousDerivOrValue
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::special::{integrate, QuadratureConfig};

    fn spec(a: f64, b: f64, n: u32) -> WaveletSpec {
        WaveletSpec::new(BetaParams::new(a, b).unwrap(), n).unwrap()
    }

    /// N-th derivative by Richardson-extrapolated central differences.
    fn fd_derivative(f: &dyn Fn(f64) -> f64, t: f64, n: u32, h: f64) -> f64 {
        let stencil = |h: f64| {
            let mut acc = 0.0;
            let mut binom = 1.0;
            for k in 0..=n {
                let x = t + (f64::from(n) / 2.0 - f64::from(k)) * h;
                let sign = if k % 2 == 0 { 1.0 } else { -1.0 };
                acc += sign * binom * f(x);
                binom = binom * f64::from(n - k) / f64::from(k + 1);
            }
            acc / h.powi(n as i32)
        };
        (4.0 * stencil(h / 2.0) - stencil(h)) / 3.0
    }

    #[test]
    fn rejects_invalid_specs() {
        let p = BetaParams::new(2.0, 2.0).unwrap();
        assert!(WaveletSpec::new(p, 0).is_err());
        assert!(WaveletSpec::new(p, 2).is_err());
        assert!(WaveletSpec::new(BetaParams::new(1.0, 3.0).unwrap(), 1).is_err());
        assert!(WaveletSpec::new(BetaParams::new(5.0, 7.0).unwrap(), 4).is_ok());
    }

    #[test]
    fn scale_fn_examples() {
        let s = spec(3.0, 3.0, 1);
        // 7² / (B(3,3)·T⁵), T = 2√7; also the unit-interval peak 1.875 over T
        let t = 2.0 * 7f64.sqrt();
        let want = 49.0 * 30.0 / t.powi(5);
        assert!((s.scale_fn(0.0) - want).abs() < 1e-14);
        assert!((want - 1.875 / t).abs() < 1e-14);
        assert!((want - 0.354_342).abs() < 1e-6);
        let s2 = spec(2.0, 2.0, 1);
        assert_eq!(s2.scale_fn(s2.geometry().a), 0.0);
        let g = s.geometry();
        let mass = integrate(|t| s.scale_fn(t), g.a, g.b, &QuadratureConfig::default()).unwrap();
        assert!((mass - 1.0).abs() < 1e-10);
        for k in 0..=20 {
            let t = g.a + g.length * f64::from(k) / 20.0;
            assert!((s.scale_fn(t) - s.params().std_pdf(t)).abs() < 1e-14);
        }
    }

    #[test]
    fn ramp_wavelet() {
        let s = spec(2.0, 2.0, 1);
        let t_len = 2.0 * 5f64.sqrt();
        for &t in &[-2.0, -0.5, 0.0, 1.0, 2.2] {
            let want = 12.0 * t / t_len.powi(3);
            assert!((s.wavelet(t) - want).abs() < 1e-14, "t = {t}");
        }
        assert!((s.wavelet(1.0) - 0.134_164).abs() < 1e-6);
        // nonzero limits at the support ends
        let g = s.geometry();
        assert!((s.wavelet(g.a) - 12.0 * g.a / t_len.powi(3)).abs() < 1e-14);
        assert_eq!(s.wavelet(g.b + 1e-12), 0.0);
    }

    #[test]
    fn symmetric_zero_at_origin() {
        for &a in &[2.0, 3.0, 4.5, 9.0] {
            assert_eq!(spec(a, a, 1).wavelet(0.0), 0.0);
        }
    }

    #[test]
    fn matches_finite_difference_derivatives() {
        let cases = [(3.0, 3.0, 1), (4.0, 2.0, 1), (5.0, 7.0, 3), (8.0, 11.0, 5), (6.5, 4.0, 2), (9.0, 9.0, 4)];
        for &(a, b, n) in &cases {
            let s = spec(a, b, n);
            let g = s.geometry();
            let h = 0.005 * g.length;
            let phi = |t: f64| s.scale_fn(t);
            let sign = if n % 2 == 0 { 1.0 } else { -1.0 };
            let peak = (1..200)
                .map(|k| s.wavelet(g.a + g.length * f64::from(k) / 200.0).abs())
                .fold(0.0, f64::max);
            for k in 1..=10 {
                let t = g.a + g.length * f64::from(k) / 11.0;
                let fd = sign * fd_derivative(&phi, t, n, h);
                let w = s.wavelet(t);
                assert!((w - fd).abs() <= 1e-4 * w.abs().max(1e-2 * peak), "({a},{b},{n}) t={t}: {w} vs {fd}");
            }
        }
    }

    #[test]
    fn symmetric_closed_form_agrees() {
        for &a in &[2.0, 3.0, 4.0, 7.0] {
            let s = spec(a, a, 1);
            let g = s.geometry();
            for k in 0..50 {
                let t = g.a + g.length * (f64::from(k) + 0.5) / 50.0;
                let closed = symmetric_wavelet(a, t).unwrap();
                assert!((closed - s.wavelet(t)).abs() < 1e-9, "alpha {a} t {t}");
            }
        }
        assert_eq!(symmetric_wavelet(3.0, 0.0).unwrap(), 0.0);
        assert!((symmetric_wavelet(2.0, 1.0).unwrap().abs() - 0.134_164).abs() < 1e-6);
        assert!(symmetric_wavelet(2.5, 0.3).is_err());
        assert!(symmetric_wavelet(1.0, 0.3).is_err());
    }

    #[test]
    fn balance_and_zero_cross() {
        let p33 = BetaParams::new(3.0, 3.0).unwrap();
        let p42 = BetaParams::new(4.0, 2.0).unwrap();
        assert_eq!(cyclic_balance(&p33), 1.0);
        assert_eq!(cyclic_balance(&p42), 0.5);
        let g = p42.standardize();
        assert!((g.b / g.a.abs() - cyclic_balance(&p42)).abs() < 1e-12);

        assert_eq!(zero_cross(&p33).unwrap(), 0.0);
        let zc = zero_cross(&p42).unwrap();
        assert!((zc - 0.5 * (7.0f64 / 8.0).sqrt()).abs() < 1e-15);
        assert!((zc - 0.467_707_2).abs() < 1e-7);
        let s = WaveletSpec::new(p42, 1).unwrap();
        assert!(s.wavelet(zc).abs() < 1e-9);
        assert!(s.wavelet(zc - 1e-3) * s.wavelet(zc + 1e-3) < 0.0);
        assert!(zero_cross(&BetaParams::new(1.0, 3.0).unwrap()).is_err());
    }

    #[test]
    fn zero_cross_is_the_only_sign_change() {
        for &(a, b) in &[(3.0, 3.0), (4.0, 2.0), (2.5, 6.0), (10.0, 3.0)] {
            let s = spec(a, b, 1);
            let g = s.geometry();
            let n = 2000;
            let mut changes = 0;
            let mut prev = 0.0f64;
            for k in 1..n {
                let v = s.wavelet(g.a + g.length * k as f64 / n as f64);
                if v != 0.0 {
                    if prev != 0.0 && v.signum() != prev.signum() {
                        changes += 1;
                    }
                    prev = v;
                }
            }
            assert_eq!(changes, 1, "({a},{b})");
        }
    }

    #[test]
    fn smoothness() {
        let c = |a, b| smoothness_class(&BetaParams::new(a, b).unwrap());
        assert_eq!(c(3.0, 3.0), Smoothness::ContinuousEverywhere);
        assert_eq!(c(2.0, 2.0), Smoothness::EndpointDiscontinuousDerivOrValue);
        assert_eq!(c(2.001, 5.0), Smoothness::ContinuousEverywhere);
        assert_eq!(c(5.0, 1.5), Smoothness::EndpointDiscontinuousDerivOrValue);
    }

    #[test]
    fn sampling() {
        let s = spec(3.0, 3.0, 1);
        let w = s.sample(3, Waveform::Wavelet).unwrap();
        assert_eq!(w.values, [0.0, 0.0, 0.0]);
        assert_eq!(w.t0, s.geometry().a);

        let s = spec(2.0, 2.0, 1);
        let w = s.sample(5, Waveform::Scale).unwrap();
        for (t, v) in w.iter() {
            assert!((v - s.scale_fn(t)).abs() < 1e-15);
        }
        // center of the (2,2) parabola: 5 / (B(2,2)·T³) = 30/T³
        assert!((w.values[2] - 30.0 / (2.0 * 5f64.sqrt()).powi(3)).abs() < 1e-14);

        let s = spec(4.0, 5.0, 2);
        let w = s.sample(4001, Waveform::Wavelet).unwrap();
        let area: f64 = w.values.iter().sum::<f64>() * w.dt;
        assert!(area.abs() < 1e-6);
        assert!(s.sample(1, Waveform::Scale).is_err());
    }

    #[test]
    fn zero_mean_and_vanishing_moments() {
        let cfg = QuadratureConfig::default();
        for &(a, b) in &[(2.0, 2.0), (3.0, 5.0), (4.0, 2.5), (8.0, 11.0)] {
            let s = spec(a, b, 1);
            let g = s.geometry();
            let m = integrate(|t| s.wavelet(t), g.a, g.b, &cfg).unwrap();
            assert!(m.abs() < 1e-8, "({a},{b}) mean {m}");
        }
        for &(a, b, n) in &[(4.0, 5.0, 2), (5.0, 7.0, 3), (8.0, 11.0, 5)] {
            let s = spec(a, b, n);
            let g = s.geometry();
            for k in 0..n as i32 {
                let m = integrate(|t| t.powi(k) * s.wavelet(t), g.a, g.b, &cfg).unwrap();
                assert!(m.abs() < 1e-7, "({a},{b},{n}) k={k}: {m}");
            }
        }
    }

    #[test]
    fn compact_support() {
        let s = spec(5.0, 7.0, 3);
        let g = s.geometry();
        for &t in &[g.a - 1.0, g.a - 1e-9, g.b + 1e-9, g.b + 5.0] {
            assert_eq!(s.wavelet(t), 0.0);
            assert_eq!(s.scale_fn(t), 0.0);
        }
    }
}
