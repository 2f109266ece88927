//! Sums of bounded random variables: densities on uniform grids, iterated
//! convolution, rescaling to `[0, 1]` and moment-matched beta fits.

use alloc::vec::Vec;

#[allow(unused_imports)] // shadowed by inherent f64 methods when std is linked
use num_traits::Float;

use crate::density::clt_fit;
use crate::{BetaParams, ComplexValue, Error, Result};

/// Non-negative density samples `values[k]` at `lo + k·dx`, `dx = (hi − lo)/(len − 1)`.
///
/// Integrals treat the density as the piecewise-linear interpolant of the
/// samples, so masses are trapezoid sums and moments are exact for that
/// interpolant.
#[derive(Debug, Clone, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize))]
pub struct GriddedDensity {
    lo: f64,
    hi: f64,
    values: Vec<f64>,
    dx: f64,
}

impl GriddedDensity {
    /// Grid density as given; not renormalized.
    pub fn new(lo: f64, hi: f64, values: Vec<f64>) -> Result<Self> {
        if !(lo.is_finite() && hi.is_finite() && hi > lo) {
            return Err(Error::Domain("grid needs finite lo < hi"));
        }
        if values.len() < 2 {
            return Err(Error::Domain("grid needs at least two points"));
        }
        if let Some(k) = values.iter().position(|v| !(v.is_finite() && *v >= 0.0)) {
            return Err(Error::NonFinite { at: lo + k as f64 * (hi - lo) / (values.len() - 1) as f64 });
        }
        let dx = (hi - lo) / (values.len() - 1) as f64;
        Ok(Self { lo, hi, values, dx })
    }

    /// `n` samples of `f` on `[lo, hi]`, normalized to unit mass.
    pub fn from_fn<F: Fn(f64) -> f64>(lo: f64, hi: f64, n: usize, f: F) -> Result<Self> {
        if n < 2 {
            return Err(Error::Domain("grid needs at least two points"));
        }
        let dx = (hi - lo) / (n - 1) as f64;
        let values = (0..n)
            .map(|k| if k + 1 == n { f(hi) } else { f(lo + k as f64 * dx) })
            .collect();
        Self::new(lo, hi, values)?.normalized()
    }

    pub fn uniform(lo: f64, hi: f64, n: usize) -> Result<Self> {
        Self::from_fn(lo, hi, n, |_| 1.0)
    }

    pub fn beta(p: &BetaParams, n: usize) -> Result<Self> {
        Self::from_fn(0.0, 1.0, n, |t| p.pdf(t))
    }

    pub fn lo(&self) -> f64 {
        self.lo
    }

    pub fn hi(&self) -> f64 {
        self.hi
    }

    pub fn dx(&self) -> f64 {
        self.dx
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn abscissa(&self, k: usize) -> f64 {
        if k + 1 == self.values.len() {
            self.hi
        } else {
            self.lo + k as f64 * self.dx
        }
    }

    /// `(t, value)` pairs.
    pub fn points(&self) -> impl Iterator<Item = (f64, f64)> + '_ {
        self.values.iter().enumerate().map(|(k, v)| (self.abscissa(k), *v))
    }

    pub fn mass(&self) -> f64 {
        trapezoid(&self.values, self.dx)
    }

    pub fn normalized(mut self) -> Result<Self> {
        let m = self.mass();
        if !(m > 0.0) || !m.is_finite() {
            return Err(Error::Domain("density has zero mass"));
        }
        self.values.iter_mut().for_each(|v| *v /= m);
        Ok(self)
    }

    /// Mean and variance of the piecewise-linear interpolant, normalized by
    /// its mass.
    pub fn mean_variance(&self) -> (f64, f64) {
        // moments about the grid centre limit cancellation in E[x²] − E[x]²
        let c = 0.5 * (self.lo + self.hi);
        let h = self.dx;
        let (mut m0, mut m1, mut m2) = (0.0, 0.0, 0.0);
        for (k, w) in self.values.windows(2).enumerate() {
            let (y0, y1) = (w[0], w[1]);
            let x0 = self.lo + k as f64 * h - c;
            let s0 = h * (y0 + y1) / 2.0;
            let s1 = h * h * (y0 / 6.0 + y1 / 3.0);
            let s2 = h * h * h * (y0 / 12.0 + y1 / 4.0);
            m0 += s0;
            m1 += x0 * s0 + s1;
            m2 += x0 * x0 * s0 + 2.0 * x0 * s1 + s2;
        }
        let mean = m1 / m0;
        (mean + c, m2 / m0 - mean * mean)
    }

    /// `Σ w_k p_k e^{−jωt_k} dx` with trapezoid weights `w_k`.
    pub fn characteristic(&self, omega: f64) -> ComplexValue {
        let n = self.values.len();
        let sum: ComplexValue = self
            .points()
            .enumerate()
            .map(|(k, (t, v))| {
                let w = if k == 0 || k + 1 == n { 0.5 } else { 1.0 };
                ComplexValue::from_polar(w * v, -omega * t)
            })
            .sum();
        sum * self.dx
    }
}

fn trapezoid(values: &[f64], dx: f64) -> f64 {
    let n = values.len();
    let inner: f64 = values.iter().sum();
    dx * (inner - 0.5 * (values[0] + values[n - 1]))
}

/// Density of the sum of independent variables with densities `p` and `q`.
///
/// `c(t_k) = ∫ p(s) q(t_k − s) ds` by the trapezoid rule over the overlap of
/// the two supports, then renormalized to unit mass. Supports add:
/// `[p.lo + q.lo, p.hi + q.hi]`.
pub fn convolve(p: &GriddedDensity, q: &GriddedDensity) -> Result<GriddedDensity> {
    if (p.dx - q.dx).abs() > 1e-9 * p.dx.max(q.dx) {
        return Err(Error::GridMismatch { left_dx: p.dx, right_dx: q.dx });
    }
    let (n, m) = (p.values.len(), q.values.len());
    let (a, b) = (&p.values, &q.values);
    let mut out = Vec::with_capacity(n + m - 1);
    for k in 0..n + m - 1 {
        let i0 = k.saturating_sub(m - 1);
        let i1 = k.min(n - 1);
        if i0 == i1 {
            out.push(0.0);
            continue;
        }
        let sum: f64 = (i0..=i1).map(|i| a[i] * b[k - i]).sum();
        let ends = a[i0] * b[k - i0] + a[i1] * b[k - i1];
        out.push(p.dx * (sum - 0.5 * ends));
    }
    GriddedDensity::new(p.lo + q.lo, p.hi + q.hi, out)?.normalized()
}

/// `n`-fold convolution power, by repeated squaring.
pub fn self_convolve(p: &GriddedDensity, n: u32) -> Result<GriddedDensity> {
    if n == 0 {
        return Err(Error::Domain("convolution power must be at least 1"));
    }
    let mut base = p.clone();
    let mut acc: Option<GriddedDensity> = None;
    let mut k = n;
    loop {
        if k & 1 == 1 {
            acc = Some(match acc {
                None => base.clone(),
                Some(a) => convolve(&a, &base)?,
            });
        }
        k >>= 1;
        if k == 0 {
            break;
        }
        base = convolve(&base, &base)?;
    }
    Ok(acc.expect("n >= 1 sets at least one bit"))
}

/// Affine map of the support onto `[0, 1]`; values scale by `hi − lo`.
pub fn normalize_unit(p: &GriddedDensity) -> GriddedDensity {
    let width = p.hi - p.lo;
    GriddedDensity {
        lo: 0.0,
        hi: 1.0,
        values: p.values.iter().map(|v| v * width).collect(),
        dx: p.dx / width,
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize))]
pub struct BetaFit {
    pub params: BetaParams,
    /// `(∫₀¹ (p − beta pdf)² dt)^{1/2}` by the trapezoid rule on the grid.
    pub l2: f64,
}

/// Moment-matched beta fit of a `[0, 1]` density and its L² distance.
pub fn fit_and_distance(p: &GriddedDensity) -> Result<BetaFit> {
    if p.lo.abs() > 1e-12 || (p.hi - 1.0).abs() > 1e-12 {
        return Err(Error::Domain("density must be supported on [0, 1]"));
    }
    let (mean, var) = p.mean_variance();
    let params = clt_fit(mean, var)?;
    let sq: Vec<f64> = p.points().map(|(t, v)| (v - params.pdf(t)).powi(2)).collect();
    Ok(BetaFit { params, l2: trapezoid(&sq, p.dx).sqrt() })
}
