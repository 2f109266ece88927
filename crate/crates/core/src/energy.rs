//! L² constants of beta densities and the energies and admissibility
//! constant of first-order beta wavelets.
//!
//! Notation: `p` is the unit-interval density, `λ₀ = ∫₀¹ p² dt` and
//! `χ = ∫₀¹ (p')² dt`. On the standardized support of length `T` the scale
//! function has energy `λ₀/T` and the wavelet `χ/T³`.

use core::f64::consts::PI;

#[allow(unused_imports)] // shadowed by inherent f64 methods when std is linked
use num_traits::Float;

use crate::special::{integrate_panels, kummer_m_imag_normalized, ln_beta_unchecked, ln_gamma_unchecked, QuadratureConfig};
use crate::{BetaParams, Error, Result};

/// Default truncation of frequency integrals, in units of ν = ωT.
pub const DEFAULT_NU_MAX: f64 = 500.0;

/// `λ₀(α, β) = B(2α−1, 2β−1)/B²(α, β)`, the squared L² norm of the density.
pub fn lambda0(p: &BetaParams) -> f64 {
    (ln_beta_unchecked(2.0 * p.alpha() - 1.0, 2.0 * p.beta() - 1.0) - 2.0 * p.ln_beta()).exp()
}

/// Pointwise check that the square of a beta density is a multiple of the
/// `(2α−1, 2β−1)` beta density.
#[derive(Debug, Clone, Copy, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize))]
pub struct SquareClosure {
    /// Constant on the unit interval, equal to [`lambda0`].
    pub lambda_unit: f64,
    pub max_dev_unit: f64,
    /// Largest value of `p²` on the check grid.
    pub peak_unit: f64,
    /// Constant on the standardized support `[a, b]`, equal to `λ₀/T`; there
    /// the `(2α−1, 2β−1)` shape is normalized on the same `[a, b]`.
    pub lambda_standardized: f64,
    pub max_dev_standardized: f64,
    pub peak_standardized: f64,
}

impl SquareClosure {
    /// Worst deviation relative to the peak, over both forms.
    pub fn max_relative_deviation(&self) -> f64 {
        (self.max_dev_unit / self.peak_unit).max(self.max_dev_standardized / self.peak_standardized)
    }
}

pub fn square_closure_check(p: &BetaParams) -> SquareClosure {
    const POINTS: usize = 50;
    let doubled = BetaParams::new(2.0 * p.alpha() - 1.0, 2.0 * p.beta() - 1.0)
        .expect("2x-1 >= 1 whenever x >= 1");
    let lambda_unit = lambda0(p);

    let g = p.standardize();
    let lambda_standardized = lambda_unit / g.length;
    let ln_shape_norm = -doubled.ln_beta() - (doubled.alpha() + doubled.beta() - 1.0) * g.length.ln();
    let shape = |t: f64| {
        let u = t - g.a;
        let v = g.b - t;
        (ln_shape_norm
            + crate::special::ln_pow_limit(u, doubled.alpha() - 1.0)
            + crate::special::ln_pow_limit(v, doubled.beta() - 1.0))
        .exp()
    };

    let mut out = SquareClosure {
        lambda_unit,
        max_dev_unit: 0.0,
        peak_unit: 0.0,
        lambda_standardized,
        max_dev_standardized: 0.0,
        peak_standardized: 0.0,
    };
    for k in 0..POINTS {
        let x = k as f64 / (POINTS - 1) as f64;
        let sq = p.pdf(x).powi(2);
        out.peak_unit = out.peak_unit.max(sq);
        out.max_dev_unit = out.max_dev_unit.max((sq - lambda_unit * doubled.pdf(x)).abs());

        let t = if k + 1 == POINTS { g.b } else { g.a + x * g.length };
        let sq = p.std_pdf_with(&g, t).powi(2);
        out.peak_standardized = out.peak_standardized.max(sq);
        out.max_dev_standardized = out
            .max_dev_standardized
            .max((sq - lambda_standardized * shape(t)).abs());
    }
    out
}

/// `χ(α, β) = ∫₀¹ [p'(t)]² dt` for `α, β > 1.5`.
///
/// Expanding `[(α−1) − (α+β−2)t]² t^{2α−4}(1−t)^{2β−4} / B²` gives
/// `[(α−1)² B(2α−3, 2β−3) − 2(α−1)(α+β−2) B(2α−2, 2β−3) + (α+β−2)² B(2α−1, 2β−3)] / B²`.
/// The bracket is evaluated as `B(2α−3, 2β−3)·E[((α−1) − (α+β−2)X)²]` with
/// `X ~ Beta(2α−3, 2β−3)`, i.e. squared bias plus scaled variance, which
/// avoids the cancellation between the three terms.
pub fn chi(p: &BetaParams) -> Result<f64> {
    let (a, b) = (p.alpha(), p.beta());
    if !(a > 1.5 && b > 1.5) {
        return Err(Error::Domain("chi requires alpha > 1.5 and beta > 1.5"));
    }
    let (x, y) = (2.0 * a - 3.0, 2.0 * b - 3.0);
    let mean = x / (x + y);
    let var = mean * (1.0 - mean) / (x + y + 1.0);
    let slope = a + b - 2.0;
    let bias = (a - 1.0) - slope * mean;
    let expectation = bias * bias + slope * slope * var;
    Ok(expectation * (ln_beta_unchecked(x, y) - 2.0 * p.ln_beta()).exp())
}

#[derive(Debug, Clone, Copy, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize))]
pub struct Energies {
    pub scale: f64,
    pub wavelet: f64,
}

/// `E_φ = λ₀/T` and `E_ψ = χ/T³` for the first-order wavelet.
pub fn energies(p: &BetaParams) -> Result<Energies> {
    let t = p.standardize().length;
    Ok(Energies {
        scale: lambda0(p) / t,
        wavelet: chi(p)? / (t * t * t),
    })
}

#[derive(Debug, Clone, Copy, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize))]
pub struct ParsevalCheck {
    pub nu_max: f64,
    /// `(1/2π) ∫_{−ν_max}^{ν_max} |M(α, α+β, jν)|² dν`
    pub lhs: f64,
    /// `λ₀(α, β)`
    pub rhs: f64,
    /// Upper bound on the truncated part of the integral.
    pub tail_bound: f64,
}

impl ParsevalCheck {
    pub fn holds(&self, slack: f64) -> bool {
        (self.lhs - self.rhs).abs() <= self.tail_bound + slack
    }
}

/// Truncated Parseval integral of the characteristic function against `λ₀`.
///
/// For `α, β > 1` the density vanishes at both ends, so one integration by
/// parts gives `|M(jν)| ≤ ‖p'‖₁/|ν| = 2·p(mode)/|ν|`; the discarded tails
/// contribute at most `(2·p(mode))² / (π·ν_max)`.
pub fn parseval_m_check(p: &BetaParams, nu_max: f64, cfg: &QuadratureConfig) -> Result<ParsevalCheck> {
    if !(p.alpha() > 1.0 && p.beta() > 1.0) {
        return Err(Error::Domain("Parseval tail bound requires alpha > 1 and beta > 1"));
    }
    if !(nu_max > 0.0) || !nu_max.is_finite() {
        return Err(Error::Domain("nu_max must be positive and finite"));
    }
    let half = frequency_integral(p, nu_max, cfg, |_| 1.0)?;
    let mode = p.stats().mode.expect("mode exists for alpha, beta > 1");
    let c = 2.0 * p.pdf(mode);
    Ok(ParsevalCheck {
        nu_max,
        lhs: half / PI,
        rhs: lambda0(p),
        tail_bound: c * c / (PI * nu_max),
    })
}

#[derive(Debug, Clone, Copy, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize))]
pub struct Admissibility {
    pub omega_max: f64,
    /// `2π·λ₀/T`
    pub closed: f64,
    /// `∫_{−ω_max}^{ω_max} |Ψ(ω)|²/|ω| dω`
    pub numeric: f64,
    /// Asymptotic estimate of the truncated part of `numeric`.
    pub tail_estimate: f64,
}

/// Admissibility constant of the first-order wavelet, numerically from its
/// definition, next to the closed form `2πλ₀/T`.
///
/// With `|Ψ(ω)| = |ω|·|M(−jωT)|` the definition becomes
/// `(2/T²) ∫₀^{ν_max} ν |M(jν)|² dν`. The two values are reported, not
/// reconciled: the closed form equals `∫|Ψ(ω)/ω|² dω`, which is a different
/// integral.
///
/// The tail estimate uses the large-ν envelope
/// `|M(jν)| ≲ A ν^{−α} + B ν^{−β}`, `A = Γ(α+β)/Γ(β)`, `B = Γ(α+β)/Γ(α)`.
pub fn admissibility(p: &BetaParams, omega_max: f64, cfg: &QuadratureConfig) -> Result<Admissibility> {
    let (a, b) = (p.alpha(), p.beta());
    if !(a > 1.0 && b > 1.0) {
        return Err(Error::Domain("admissibility requires alpha > 1 and beta > 1"));
    }
    if !(omega_max > 0.0) || !omega_max.is_finite() {
        return Err(Error::Domain("omega_max must be positive and finite"));
    }
    let t = p.standardize().length;
    let nu_max = omega_max * t;
    let integral = frequency_integral(p, nu_max, cfg, |nu| nu)?;

    let ln_g = ln_gamma_unchecked(a + b);
    let env_a = (ln_g - ln_gamma_unchecked(b)).exp();
    let env_b = (ln_g - ln_gamma_unchecked(a)).exp();
    let tail = env_a * env_a * nu_max.powf(2.0 - 2.0 * a) / (2.0 * a - 2.0)
        + 2.0 * env_a * env_b * nu_max.powf(2.0 - a - b) / (a + b - 2.0)
        + env_b * env_b * nu_max.powf(2.0 - 2.0 * b) / (2.0 * b - 2.0);

    Ok(Admissibility {
        omega_max,
        closed: 2.0 * PI * lambda0(p) / t,
        numeric: 2.0 * integral / (t * t),
        tail_estimate: 2.0 * tail / (t * t),
    })
}

/// `∫₀^{ν_max} w(ν) |M(α, α+β, jν)|² dν`.
fn frequency_integral<W: Fn(f64) -> f64>(
    p: &BetaParams,
    nu_max: f64,
    cfg: &QuadratureConfig,
    weight: W,
) -> Result<f64> {
    // |M|² oscillates with period about 2π in ν; start from one panel per period
    let panels = 1 + (nu_max / (2.0 * PI)) as usize;
    let outer = cfg.loosened(10.0);
    let mut inner_err = None;
    let value = integrate_panels(
        |nu| match kummer_m_imag_normalized(p.alpha(), p.beta(), p.ln_beta(), nu, cfg) {
            Ok(m) => weight(nu) * m.norm_sqr(),
            Err(e) => {
                inner_err.get_or_insert(e);
                0.0
            }
        },
        0.0,
        nu_max,
        panels,
        &outer,
    )?;
    match inner_err {
        Some(e) => Err(e),
        None => Ok(value),
    }
}

/// The analysis constants of one `(α, β)` pair, as exported by the CLI.
#[derive(Debug, Clone, Copy, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize))]
pub struct EnergyReport {
    pub alpha: f64,
    pub beta: f64,
    #[cfg_attr(feature = "serde", serde(rename = "T"))]
    pub support_length: f64,
    pub lambda0: f64,
    pub chi: f64,
    pub energy_scale: f64,
    pub energy_wavelet: f64,
    pub admissibility_closed: f64,
    pub admissibility_numeric: f64,
}

/// Builds an [`EnergyReport`], truncating the admissibility integral at
/// `ν = nu_max`.
pub fn energy_report(p: &BetaParams, nu_max: f64, cfg: &QuadratureConfig) -> Result<EnergyReport> {
    let t = p.standardize().length;
    let e = energies(p)?;
    let adm = admissibility(p, nu_max / t, cfg)?;
    Ok(EnergyReport {
        alpha: p.alpha(),
        beta: p.beta(),
        support_length: t,
        lambda0: lambda0(p),
        chi: chi(p)?,
        energy_scale: e.scale,
        energy_wavelet: e.wavelet,
        admissibility_closed: adm.closed,
        admissibility_numeric: adm.numeric,
    })
}
