// constants are kept exactly as published
#![allow(clippy::excessive_precision)]

use alloc::collections::BinaryHeap;
use core::cmp::Ordering;
use core::ops::{Add, Mul, Sub};

#[allow(unused_imports)] // shadowed by inherent f64 methods when std is linked
use num_traits::Float;

use super::ComplexValue;
use crate::{Error, Result};

/// Tolerances and subdivision budget for adaptive quadrature.
#[derive(Debug, Clone, Copy, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct QuadratureConfig {
    pub abs_tol: f64,
    pub rel_tol: f64,
    pub max_subdivisions: usize,
}

impl Default for QuadratureConfig {
    fn default() -> Self {
        Self {
            abs_tol: 1e-10,
            rel_tol: 1e-10,
            max_subdivisions: 2000,
        }
    }
}

impl QuadratureConfig {
    pub fn new(abs_tol: f64, rel_tol: f64, max_subdivisions: usize) -> Result<Self> {
        let cfg = Self {
            abs_tol,
            rel_tol,
            max_subdivisions,
        };
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.abs_tol > 0.0 && self.abs_tol.is_finite()) {
            return Err(Error::Domain("abs_tol must be positive"));
        }
        if !(self.rel_tol > 0.0 && self.rel_tol.is_finite()) {
            return Err(Error::Domain("rel_tol must be positive"));
        }
        if self.max_subdivisions == 0 {
            return Err(Error::Domain("max_subdivisions must be at least 1"));
        }
        Ok(())
    }

    /// Same budget with both tolerances multiplied by `factor`.
    pub fn loosened(&self, factor: f64) -> Self {
        Self {
            abs_tol: self.abs_tol * factor,
            rel_tol: self.rel_tol * factor,
            ..*self
        }
    }
}

// 21-point Kronrod extension of the 10-point Gauss rule (QUADPACK qk21).
// Gauss nodes sit at the odd indices of XGK.
const XGK: [f64; 11] = [
    0.995_657_163_025_808_080_735_527_280_689_003,
    0.973_906_528_517_171_720_077_964_012_084_452,
    0.930_157_491_355_708_226_001_207_180_059_508,
    0.865_063_366_688_984_510_732_096_688_423_493,
    0.780_817_726_586_416_897_063_717_578_345_042,
    0.679_409_568_299_024_406_234_327_365_114_874,
    0.562_757_134_668_604_683_339_000_099_272_694,
    0.433_395_394_129_247_190_799_265_943_165_784,
    0.294_392_862_701_460_198_131_126_603_103_866,
    0.148_874_338_981_631_210_884_826_001_129_720,
    0.0,
];
const WGK: [f64; 11] = [
    0.011_694_638_867_371_874_278_064_396_062_192,
    0.032_558_162_307_964_727_478_818_972_459_390,
    0.054_755_896_574_351_996_031_381_300_244_580,
    0.075_039_674_810_919_952_767_043_140_916_190,
    0.093_125_454_583_697_605_535_065_465_083_366,
    0.109_387_158_802_297_641_899_210_590_325_805,
    0.123_491_976_262_065_851_077_715_940_767_440,
    0.134_709_217_311_473_325_928_054_001_771_707,
    0.142_775_938_577_060_080_797_094_273_138_717,
    0.147_739_104_901_338_491_374_841_515_972_068,
    0.149_445_554_002_916_905_664_936_468_389_821,
];
const WG: [f64; 5] = [
    0.066_671_344_308_688_137_593_568_809_893_332,
    0.149_451_349_150_580_593_145_776_339_657_697,
    0.219_086_362_515_982_043_995_534_934_228_163,
    0.269_266_719_309_996_355_091_226_921_569_469,
    0.295_524_224_714_752_870_173_892_994_651_146,
];

/// Values the engine can integrate: reals and complex numbers.
pub(crate) trait QuadValue:
    Copy + Add<Output = Self> + Sub<Output = Self> + Mul<f64, Output = Self>
{
    const ZERO: Self;
    fn magnitude(self) -> f64;
    fn finite(self) -> bool;
}

impl QuadValue for f64 {
    const ZERO: Self = 0.0;
    fn magnitude(self) -> f64 {
        self.abs()
    }
    fn finite(self) -> bool {
        self.is_finite()
    }
}

impl QuadValue for ComplexValue {
    const ZERO: Self = ComplexValue::new(0.0, 0.0);
    fn magnitude(self) -> f64 {
        self.norm()
    }
    fn finite(self) -> bool {
        self.re.is_finite() && self.im.is_finite()
    }
}

struct Panel<V> {
    lo: f64,
    hi: f64,
    value: V,
    err: f64,
}

impl<V> PartialEq for Panel<V> {
    fn eq(&self, other: &Self) -> bool {
        self.err.total_cmp(&other.err) == Ordering::Equal
    }
}
impl<V> Eq for Panel<V> {}
impl<V> PartialOrd for Panel<V> {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}
impl<V> Ord for Panel<V> {
    fn cmp(&self, other: &Self) -> Ordering {
        self.err.total_cmp(&other.err)
    }
}

fn eval<V: QuadValue, F: FnMut(f64) -> V>(f: &mut F, x: f64) -> Result<V> {
    let v = f(x);
    if v.finite() {
        Ok(v)
    } else {
        Err(Error::NonFinite { at: x })
    }
}

fn gauss_kronrod<V: QuadValue, F: FnMut(f64) -> V>(f: &mut F, lo: f64, hi: f64) -> Result<Panel<V>> {
    let center = 0.5 * (lo + hi);
    let half = 0.5 * (hi - lo);

    let mut fv = [V::ZERO; 21];
    fv[20] = eval(f, center)?;
    for j in 0..10 {
        let dx = half * XGK[j];
        fv[2 * j] = eval(f, center - dx)?;
        fv[2 * j + 1] = eval(f, center + dx)?;
    }

    let mut kronrod = fv[20] * WGK[10];
    let mut gauss = V::ZERO;
    let mut abs_sum = fv[20].magnitude() * WGK[10];
    for j in 0..10 {
        let pair = fv[2 * j] + fv[2 * j + 1];
        kronrod = kronrod + pair * WGK[j];
        if j % 2 == 1 {
            gauss = gauss + pair * WG[j / 2];
        }
        abs_sum += WGK[j] * (fv[2 * j].magnitude() + fv[2 * j + 1].magnitude());
    }

    let mean = kronrod * 0.5;
    let mut asc = WGK[10] * (fv[20] - mean).magnitude();
    for j in 0..10 {
        asc += WGK[j] * ((fv[2 * j] - mean).magnitude() + (fv[2 * j + 1] - mean).magnitude());
    }

    let width = half.abs();
    let abs_sum = abs_sum * width;
    let asc = asc * width;
    let mut err = ((kronrod - gauss) * half).magnitude();
    if asc != 0.0 && err != 0.0 {
        err = asc * (200.0 * err / asc).powf(1.5).min(1.0);
    }
    if abs_sum > f64::MIN_POSITIVE / (50.0 * f64::EPSILON) {
        err = err.max(50.0 * f64::EPSILON * abs_sum);
    }

    Ok(Panel {
        lo,
        hi,
        value: kronrod * half,
        err,
    })
}

pub(crate) fn adaptive<V: QuadValue, F: FnMut(f64) -> V>(
    mut f: F,
    lo: f64,
    hi: f64,
    panels: usize,
    cfg: &QuadratureConfig,
) -> Result<V> {
    cfg.validate()?;
    if !(lo < hi) || !lo.is_finite() || !hi.is_finite() {
        return Err(Error::Domain("integration bounds must be finite with lo < hi"));
    }
    let panels = panels.max(1);
    let step = (hi - lo) / panels as f64;

    let mut heap = BinaryHeap::with_capacity(panels + cfg.max_subdivisions + 1);
    let mut total = V::ZERO;
    let mut total_err = 0.0;
    for k in 0..panels {
        let a = lo + step * k as f64;
        let b = if k + 1 == panels { hi } else { lo + step * (k + 1) as f64 };
        let p = gauss_kronrod(&mut f, a, b)?;
        total = total + p.value;
        total_err += p.err;
        heap.push(p);
    }

    let mut bisections = 0;
    loop {
        if total_err <= cfg.abs_tol.max(cfg.rel_tol * total.magnitude()) {
            break;
        }
        if bisections >= cfg.max_subdivisions {
            return Err(Error::Convergence {
                subdivisions: bisections,
                estimated_error: total_err,
            });
        }
        let worst = heap.pop().expect("heap holds at least one panel");
        let mid = 0.5 * (worst.lo + worst.hi);
        if !(worst.lo < mid && mid < worst.hi) {
            return Err(Error::Convergence {
                subdivisions: bisections,
                estimated_error: total_err,
            });
        }
        let left = gauss_kronrod(&mut f, worst.lo, mid)?;
        let right = gauss_kronrod(&mut f, mid, worst.hi)?;
        total = total - worst.value + left.value + right.value;
        total_err += left.err + right.err - worst.err;
        heap.push(left);
        heap.push(right);
        bisections += 1;

        // running sums drift; refresh them now and then
        if bisections % 64 == 0 {
            total = heap.iter().fold(V::ZERO, |acc, p| acc + p.value);
            total_err = heap.iter().map(|p| p.err).sum();
        }
    }

    Ok(heap.iter().fold(V::ZERO, |acc, p| acc + p.value))
}

/// Adaptive Gauss–Kronrod (10/21 point) integral of `f` over `[lo, hi]`.
///
/// Panels are bisected worst-first until the summed error estimate drops
/// below `max(abs_tol, rel_tol·|I|)`. Integrable algebraic endpoint
/// singularities (such as `t^0.5` at a beta-density endpoint) are handled by
/// repeated bisection; nodes never touch the interval ends.
pub fn integrate<F: FnMut(f64) -> f64>(f: F, lo: f64, hi: f64, cfg: &QuadratureConfig) -> Result<f64> {
    adaptive(f, lo, hi, 1, cfg)
}

/// Like [`integrate`], but starts from `panels` equal sub-intervals. Use this
/// for oscillatory integrands so a single panel cannot alias a full period.
pub fn integrate_panels<F: FnMut(f64) -> f64>(
    f: F,
    lo: f64,
    hi: f64,
    panels: usize,
    cfg: &QuadratureConfig,
) -> Result<f64> {
    adaptive(f, lo, hi, panels, cfg)
}

/// Complex-valued counterpart of [`integrate_panels`]; the error estimate is
/// taken on the modulus, so real and imaginary parts share one panel tree.
pub fn integrate_complex<F: FnMut(f64) -> ComplexValue>(
    f: F,
    lo: f64,
    hi: f64,
    panels: usize,
    cfg: &QuadratureConfig,
) -> Result<ComplexValue> {
    adaptive(f, lo, hi, panels, cfg)
}
