use core::f64::consts::TAU;

#[allow(unused_imports)] // shadowed by inherent f64 methods when std is linked
use num_traits::Float;

use super::{integrate_complex, ln_beta, ln_pow_limit, ComplexValue, QuadratureConfig};
use crate::{Error, Result};

/// Kummer's confluent hypergeometric function on the imaginary axis,
/// `M(α, α+β, jν)`.
///
/// Evaluated through the beta-density integral
/// `∫₀¹ e^{jνt} t^{α−1}(1−t)^{β−1} dt / B(α,β)`, i.e. as the characteristic
/// function of a Beta(α, β) variable. The integral stays well conditioned for
/// large `|ν|` where the power series suffers cancellation.
pub fn kummer_m_imag(alpha: f64, beta: f64, nu: f64, cfg: &QuadratureConfig) -> Result<ComplexValue> {
    let ln_b = ln_beta(alpha, beta)?;
    if !nu.is_finite() {
        return Err(Error::Domain("nu must be finite"));
    }
    kummer_m_imag_normalized(alpha, beta, ln_b, nu, cfg)
}

pub(crate) fn kummer_m_imag_normalized(
    alpha: f64,
    beta: f64,
    ln_b: f64,
    nu: f64,
    cfg: &QuadratureConfig,
) -> Result<ComplexValue> {
    if nu == 0.0 {
        return Ok(ComplexValue::new(1.0, 0.0));
    }
    let panels = 1 + (nu.abs() / TAU) as usize;
    integrate_complex(
        |t| {
            let weight = (ln_pow_limit(t, alpha - 1.0) + ln_pow_limit(1.0 - t, beta - 1.0) - ln_b).exp();
            let (s, c) = (nu * t).sin_cos();
            ComplexValue::new(weight * c, weight * s)
        },
        0.0,
        1.0,
        panels,
        cfg,
    )
}
