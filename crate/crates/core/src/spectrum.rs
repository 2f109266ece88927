//! Fourier spectra of beta wavelets.
//!
//! Convention: `Ψ(ω) = ∫ ψ(t) e^{−jωt} dt`. The scale function transforms to
//! `Φ(ω) = e^{−jωa} · M(α, α+β, −jωT)`, and the derivative theorem gives
//! `Ψ_N(ω) = (−jω)^N Φ(ω)`. The dimensionless frequency is `ν = ωT`.

use alloc::vec::Vec;

#[allow(unused_imports)] // shadowed by inherent f64 methods when std is linked
use num_traits::Float;

use crate::special::{kummer_m_imag_normalized, ComplexValue, QuadratureConfig};
use crate::wavelet::{SampledWaveform, WaveletSpec};
use crate::{BetaParams, Error, Result};

/// Spacing of the coarse scan that brackets spectral nulls, in units of ν.
const NULL_SCAN_STEP: f64 = 0.25;
/// `|M(jν)|` below this at a bracketed root counts as a true zero (`M(0) = 1`).
const NULL_MAGNITUDE: f64 = 1e-6;

#[derive(Debug, Clone, Copy, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize))]
pub struct SpectrumSample {
    pub omega: f64,
    pub value: ComplexValue,
}

/// Dimensionless frequency `ν = ω·T`.
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd)]
#[cfg_attr(feature = "serde", derive(serde::Serialize))]
pub struct NormalizedFrequency {
    pub nu: f64,
}

impl NormalizedFrequency {
    pub fn to_omega(self, support_length: f64) -> f64 {
        self.nu / support_length
    }
}

fn characteristic(p: &BetaParams, nu: f64, cfg: &QuadratureConfig) -> Result<ComplexValue> {
    kummer_m_imag_normalized(p.alpha(), p.beta(), p.ln_beta(), nu, cfg)
}

/// Closed-form spectrum `Ψ_N(ω)` via the Kummer function.
pub fn spectrum_closed(spec: &WaveletSpec, omega: f64, cfg: &QuadratureConfig) -> Result<ComplexValue> {
    if !omega.is_finite() {
        return Err(Error::Domain("omega must be finite"));
    }
    if omega == 0.0 {
        return Ok(ComplexValue::new(0.0, 0.0));
    }
    let g = spec.geometry();
    let m = characteristic(spec.params(), -omega * g.length, cfg)?;
    let phase = ComplexValue::from_polar(1.0, -omega * g.a);
    let deriv = ComplexValue::new(0.0, -omega).powu(spec.order());
    Ok(deriv * m * phase)
}

/// Spectrum at `n` evenly spaced normalized frequencies on `[0, nu_max]`.
pub fn spectrum_on_nu_grid(
    spec: &WaveletSpec,
    nu_max: f64,
    n: usize,
    cfg: &QuadratureConfig,
) -> Result<Vec<SpectrumSample>> {
    if !(nu_max > 0.0) || !nu_max.is_finite() || n < 2 {
        return Err(Error::Domain("need a finite nu_max > 0 and at least two frequencies"));
    }
    let t_len = spec.geometry().length;
    (0..n)
        .map(|k| {
            let nu = nu_max * k as f64 / (n - 1) as f64;
            let omega = nu / t_len;
            spectrum_closed(spec, omega, cfg).map(|value| SpectrumSample { omega, value })
        })
        .collect()
}

/// Riemann-sum Fourier transform `Σ v_k e^{−jω t_k} dt` of a sampled waveform.
///
/// For waveforms that vanish at both ends this equals the trapezoidal rule,
/// so the error is `O(dt²)`.
pub fn spectrum_dft(w: &SampledWaveform, omega: f64) -> ComplexValue {
    let sum = w.iter().fold(ComplexValue::new(0.0, 0.0), |acc, (t, v)| {
        let (s, c) = (omega * t).sin_cos();
        acc + ComplexValue::new(v * c, -v * s)
    });
    sum * w.dt
}

/// Smallest `ν > 0` with `Ψ(ν/T) = 0`, to within `tol` in `ν`.
///
/// Works on the real part of `e^{−jν/2} M(α, α+β, jν)`, the characteristic
/// function recentred on the middle of the unit interval; for `α = β` it is
/// real, so its sign changes are exactly the spectral nulls. Each bracketed
/// root is refined by bisection and accepted only if `|M|` itself vanishes
/// there, so asymmetric pairs (whose spectra have no zeros) yield
/// [`Error::NoNullFound`].
pub fn find_first_null(
    p: &BetaParams,
    search_hi_nu: f64,
    tol: f64,
    cfg: &QuadratureConfig,
) -> Result<NormalizedFrequency> {
    if !(search_hi_nu > 0.0) || !search_hi_nu.is_finite() {
        return Err(Error::Domain("search limit must be positive"));
    }
    if !(tol > 0.0) {
        return Err(Error::Domain("tolerance must be positive"));
    }
    let centered = |nu: f64| -> Result<f64> {
        let m = characteristic(p, nu, cfg)?;
        Ok((m * ComplexValue::from_polar(1.0, -0.5 * nu)).re)
    };

    let steps = (search_hi_nu / NULL_SCAN_STEP).ceil() as usize;
    let mut lo = 0.0;
    let mut f_lo = 1.0;
    for k in 1..=steps {
        let hi = (NULL_SCAN_STEP * k as f64).min(search_hi_nu);
        let f_hi = centered(hi)?;
        if f_lo * f_hi <= 0.0 {
            let root = bisect(&centered, lo, hi, f_lo, tol)?;
            if characteristic(p, root, cfg)?.norm() <= NULL_MAGNITUDE {
                return Ok(NormalizedFrequency { nu: root });
            }
        }
        lo = hi;
        f_lo = f_hi;
    }
    Err(Error::NoNullFound { search_hi_nu })
}

fn bisect<F: Fn(f64) -> Result<f64>>(f: &F, mut lo: f64, mut hi: f64, mut f_lo: f64, tol: f64) -> Result<f64> {
    while hi - lo > tol {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break;
        }
        let f_mid = f(mid)?;
        if f_mid == 0.0 {
            return Ok(mid);
        }
        if (f_mid > 0.0) == (f_lo > 0.0) {
            lo = mid;
            f_lo = f_mid;
        } else {
            hi = mid;
        }
    }
    Ok(0.5 * (lo + hi))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::wavelet::Waveform;
    use core::f64::consts::PI;

    fn spec(a: f64, b: f64, n: u32) -> WaveletSpec {
        WaveletSpec::new(BetaParams::new(a, b).unwrap(), n).unwrap()
    }

    fn cfg() -> QuadratureConfig {
        QuadratureConfig::default()
    }

    #[test]
    fn zero_at_dc() {
        for s in [spec(2.0, 2.0, 1), spec(5.0, 7.0, 3)] {
            assert_eq!(spectrum_closed(&s, 0.0, &cfg()).unwrap(), ComplexValue::new(0.0, 0.0));
        }
    }

    #[test]
    fn ramp_closed_form_matches_oracle() {
        let s = spec(2.0, 2.0, 1);
        let w = s.sample(16385, Waveform::Wavelet).unwrap();
        let omega = 5.0 / s.geometry().length;
        let closed = spectrum_closed(&s, omega, &cfg()).unwrap();
        // the ramp jumps at both ends, so the plain Riemann sum is only O(dt);
        // correct it to the trapezoidal rule before comparing
        let ends = w.values[0] * ComplexValue::from_polar(1.0, -omega * w.t0)
            + w.values[w.len() - 1] * ComplexValue::from_polar(1.0, -omega * w.time(w.len() - 1));
        let trapezoid = spectrum_dft(&w, omega) - ends * (0.5 * w.dt);
        assert!((closed - trapezoid).norm() <= 1e-4 * closed.norm());
    }

    #[test]
    fn closed_form_matches_oracle() {
        for s in [spec(3.0, 3.0, 1), spec(5.0, 7.0, 3), spec(4.0, 6.0, 2)] {
            let w = s.sample(16385, Waveform::Wavelet).unwrap();
            let t_len = s.geometry().length;
            let grid: Vec<f64> = (0..=80).map(|k| f64::from(k) * 0.5 / t_len).collect();
            let closed: Vec<ComplexValue> = grid.iter().map(|&o| spectrum_closed(&s, o, &cfg()).unwrap()).collect();
            let peak = closed.iter().map(|c| c.norm()).fold(0.0, f64::max);
            for (&o, c) in grid.iter().zip(&closed) {
                if c.norm() < 1e-3 * peak {
                    continue;
                }
                let d = spectrum_dft(&w, o);
                assert!((d - c).norm() <= 1e-4 * c.norm(), "omega {o}: {c} vs {d}");
            }
        }
    }

    #[test]
    fn dft_trivial_cases() {
        let zero = SampledWaveform::new(-1.0, 0.01, alloc::vec![0.0; 201]).unwrap();
        assert_eq!(spectrum_dft(&zero, 3.0), ComplexValue::new(0.0, 0.0));
        let w = spec(3.0, 4.0, 1).sample(4097, Waveform::Wavelet).unwrap();
        assert!(spectrum_dft(&w, 0.0).norm() < 1e-6);
    }

    #[test]
    fn magnitude_is_even_in_omega() {
        let s = spec(3.0, 5.0, 1);
        for &o in &[0.3, 1.7, 4.0] {
            let p = spectrum_closed(&s, o, &cfg()).unwrap();
            let m = spectrum_closed(&s, -o, &cfg()).unwrap();
            assert!((p.norm() - m.norm()).abs() < 1e-10);
        }
    }

    #[test]
    fn parameter_symmetry() {
        for &(a, b) in &[(2.0, 3.0), (3.0, 5.0), (4.0, 2.5), (7.5, 2.0)] {
            let s = spec(a, b, 1);
            let r = spec(b, a, 1);
            let t_len = s.geometry().length;
            for k in 0..=40 {
                let o = f64::from(k) / t_len;
                let x = spectrum_closed(&s, o, &cfg()).unwrap().norm();
                let y = spectrum_closed(&r, o, &cfg()).unwrap().norm();
                assert!((x - y).abs() < 1e-9, "({a},{b}) nu {k}");
            }
        }
    }

    #[test]
    fn symmetric_spectrum_is_real_after_removing_derivative_factor() {
        for &a in &[2.0, 3.0, 5.5] {
            let s = spec(a, a, 1);
            for &o in &[0.2, 1.0, 2.5, 6.0] {
                let psi = spectrum_closed(&s, o, &cfg()).unwrap();
                let reduced = psi / ComplexValue::new(0.0, -o);
                assert!(reduced.im.abs() < 1e-10, "alpha {a} omega {o}: {reduced}");
            }
        }
    }

    #[test]
    fn first_null_of_alpha_three() {
        let p = BetaParams::new(3.0, 3.0).unwrap();
        let nu = find_first_null(&p, 40.0, 1e-10, &cfg()).unwrap().nu;
        assert!((nu - 11.526_918_406).abs() < 1e-6, "{nu}");
        // twice the first zero of the spherical Bessel function j₂
        assert!((nu - 2.0 * 5.763_459_196_894_55).abs() < 1e-8);
        assert!((nu - 4.0 * PI).abs() < 0.15 * 4.0 * PI);
    }

    #[test]
    fn first_null_grows_with_alpha() {
        let mut last = 0.0;
        for &a in &[3.0, 5.0, 8.0, 12.0] {
            let p = BetaParams::new(a, a).unwrap();
            let nu = find_first_null(&p, 60.0, 1e-8, &cfg()).unwrap().nu;
            assert!(nu > last, "alpha {a}: {nu} <= {last}");
            last = nu;
        }
    }

    #[test]
    fn asymmetric_has_no_null() {
        let p = BetaParams::new(4.0, 2.0).unwrap();
        assert!(matches!(
            find_first_null(&p, 40.0, 1e-8, &cfg()),
            Err(Error::NoNullFound { .. })
        ));
    }

    #[test]
    fn null_search_too_short() {
        let p = BetaParams::new(3.0, 3.0).unwrap();
        assert!(matches!(
            find_first_null(&p, 10.0, 1e-8, &cfg()),
            Err(Error::NoNullFound { .. })
        ));
        assert!(find_first_null(&p, -1.0, 1e-8, &cfg()).is_err());
    }

    #[test]
    fn nu_grid() {
        let s = spec(3.0, 3.0, 1);
        let g = spectrum_on_nu_grid(&s, 40.0, 9, &cfg()).unwrap();
        assert_eq!(g.len(), 9);
        assert_eq!(g[0].value, ComplexValue::new(0.0, 0.0));
        assert!((g[8].omega * s.geometry().length - 40.0).abs() < 1e-12);
    }
}
