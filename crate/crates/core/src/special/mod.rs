//! Special functions and the quadrature engine shared by every other module.

mod gamma;
mod kummer;
mod quadrature;

pub use gamma::{beta_fn, ln_beta, ln_gamma};
pub use kummer::kummer_m_imag;
pub use quadrature::{integrate, integrate_complex, integrate_panels, QuadratureConfig};

pub(crate) use gamma::{ln_beta_unchecked, ln_gamma_unchecked};
pub(crate) use kummer::kummer_m_imag_normalized;

/// Complex number used for characteristic functions and spectra.
pub type ComplexValue = num_complex::Complex64;

#[allow(unused_imports)] // shadowed by inherent f64 methods when std is linked
use num_traits::Float;

/// `exponent * ln(base)` for `base >= 0`, with the limit conventions
/// `0^0 = 1` and `0^e = 0` for `e > 0`.
#[inline]
pub(crate) fn ln_pow_limit(base: f64, exponent: f64) -> f64 {
    if exponent == 0.0 {
        0.0
    } else if base <= 0.0 {
        if exponent > 0.0 {
            f64::NEG_INFINITY
        } else {
            f64::INFINITY
        }
    } else {
        exponent * base.ln()
    }
}
