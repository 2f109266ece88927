//! Continuous wavelet transform with beta wavelets.
//!
//! Two evaluations of `CWT(s, τ) = ∫ f(t) s^{−1/2} ψ_N((t − τ)/s) dt`:
//!
//! * [`cwt_direct`]: Riemann sum of the inner product at the sample instants.
//! * [`cwt_blur_derivative`]: the blur `B_s(τ) = ∫ f(t) s^{−1/2} φ((t − τ)/s) dt`
//!   differentiated `N` times in `τ` by central differences.
//!
//! Since `∂^N_τ φ((t − τ)/s) = (−1/s)^N φ^{(N)}((t − τ)/s)`, the two agree when
//! the `N`-th shift derivative of the blur is multiplied by `s^N`. The
//! `s^{−1/2}` factor stays inside the blur.

use alloc::vec;
use alloc::vec::Vec;
use core::f64::consts::PI;

#[allow(unused_imports)] // shadowed by inherent f64 methods when std is linked
use num_traits::Float;

use crate::special::ln_pow_limit;
use crate::{BetaParams, Error, Result, SupportGeometry, WaveletSpec};

/// Uniformly sampled real signal; sample `k` sits at `t0 + k/sample_rate`.
#[derive(Debug, Clone, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize))]
pub struct Signal {
    samples: Vec<f64>,
    sample_rate: f64,
    t0: f64,
}

impl Signal {
    pub const MIN_LEN: usize = 8;

    pub fn new(samples: Vec<f64>, sample_rate: f64) -> Result<Self> {
        if !(sample_rate > 0.0) || !sample_rate.is_finite() {
            return Err(Error::Domain("sample rate must be positive and finite"));
        }
        if samples.len() < Self::MIN_LEN {
            return Err(Error::Domain("signal needs at least 8 samples"));
        }
        if let Some(k) = samples.iter().position(|x| !x.is_finite()) {
            return Err(Error::NonFinite { at: k as f64 });
        }
        Ok(Self { samples, sample_rate, t0: 0.0 })
    }

    /// Same samples with the first one placed at `t0`.
    pub fn with_start(mut self, t0: f64) -> Result<Self> {
        if !t0.is_finite() {
            return Err(Error::Domain("start time must be finite"));
        }
        self.t0 = t0;
        Ok(self)
    }

    pub fn samples(&self) -> &[f64] {
        &self.samples
    }

    pub fn sample_rate(&self) -> f64 {
        self.sample_rate
    }

    pub fn start(&self) -> f64 {
        self.t0
    }

    pub fn end(&self) -> f64 {
        self.time(self.samples.len() - 1)
    }

    pub fn len(&self) -> usize {
        self.samples.len()
    }

    pub fn is_empty(&self) -> bool {
        self.samples.is_empty()
    }

    pub fn time(&self, k: usize) -> f64 {
        self.t0 + k as f64 / self.sample_rate
    }

    /// Indices of the samples with `lo ≤ t ≤ hi`, clamped to the signal.
    fn index_range(&self, lo: f64, hi: f64) -> core::ops::Range<usize> {
        let n = self.samples.len();
        let first = ((lo - self.t0) * self.sample_rate).ceil();
        let last = ((hi - self.t0) * self.sample_rate).floor();
        if last < 0.0 || first > (n - 1) as f64 || first > last {
            return 0..0;
        }
        let first = first.max(0.0) as usize;
        let last = (last as usize).min(n - 1);
        first..last + 1
    }

    /// `Σ f_k s^{−1/2} kernel((t_k − τ)/s) Δt` over samples inside the
    /// kernel's scaled support.
    fn inner<K: Fn(f64) -> f64>(&self, g: &SupportGeometry, scale: f64, shift: f64, kernel: K) -> f64 {
        let dt = 1.0 / self.sample_rate;
        let sum: f64 = self
            .index_range(shift + scale * g.a, shift + scale * g.b)
            .map(|k| self.samples[k] * kernel((self.time(k) - shift) / scale))
            .sum();
        sum * dt / scale.sqrt()
    }
}

/// Scales (increasing, positive) and shifts (increasing) of a scalogram.
#[derive(Debug, Clone, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize))]
pub struct ScaleShiftGrid {
    scales: Vec<f64>,
    shifts: Vec<f64>,
}

impl ScaleShiftGrid {
    pub fn new(scales: Vec<f64>, shifts: Vec<f64>) -> Result<Self> {
        if scales.is_empty() || shifts.is_empty() {
            return Err(Error::Domain("grid needs at least one scale and one shift"));
        }
        if !scales.iter().all(|s| *s > 0.0 && s.is_finite()) {
            return Err(Error::Domain("scales must be positive and finite"));
        }
        if !shifts.iter().all(|s| s.is_finite()) {
            return Err(Error::Domain("shifts must be finite"));
        }
        if !strictly_increasing(&scales) || !strictly_increasing(&shifts) {
            return Err(Error::Domain("scales and shifts must be strictly increasing"));
        }
        Ok(Self { scales, shifts })
    }

    /// `n` geometrically spaced scales from `lo` to `hi`, and `m` evenly
    /// spaced shifts from `t_lo` to `t_hi`.
    pub fn geometric(lo: f64, hi: f64, n: usize, t_lo: f64, t_hi: f64, m: usize) -> Result<Self> {
        if !(lo > 0.0) {
            return Err(Error::Domain("scales must be positive and finite"));
        }
        let ratio = (hi / lo).ln();
        let scales = spaced(n, |x| lo * (ratio * x).exp());
        let shifts = spaced(m, |x| t_lo + (t_hi - t_lo) * x);
        Self::new(scales, shifts)
    }

    pub fn scales(&self) -> &[f64] {
        &self.scales
    }

    pub fn shifts(&self) -> &[f64] {
        &self.shifts
    }
}

fn strictly_increasing(v: &[f64]) -> bool {
    v.windows(2).all(|w| w[0] < w[1])
}

/// `n` points `map(k/(n−1))`; the single point `map(0)` when `n = 1`.
fn spaced<F: Fn(f64) -> f64>(n: usize, map: F) -> Vec<f64> {
    match n {
        0 => Vec::new(),
        1 => vec![map(0.0)],
        _ => (0..n).map(|k| map(k as f64 / (n - 1) as f64)).collect(),
    }
}

/// CWT coefficients, row-major with one row per scale.
///
/// `valid[i·m + j]` is false when the scaled support at `(scale i, shift j)`
/// reaches past either end of the signal, so the integral was truncated.
#[derive(Debug, Clone, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize))]
pub struct Scalogram {
    grid: ScaleShiftGrid,
    coefficients: Vec<f64>,
    valid: Vec<bool>,
}

impl Scalogram {
    fn compute<F: FnMut(f64, f64) -> f64>(f: &Signal, g: &SupportGeometry, grid: ScaleShiftGrid, mut coef: F) -> Self {
        let mut coefficients = Vec::with_capacity(grid.scales.len() * grid.shifts.len());
        let mut valid = Vec::with_capacity(coefficients.capacity());
        for &s in &grid.scales {
            for &tau in &grid.shifts {
                coefficients.push(coef(s, tau));
                valid.push(tau + s * g.a >= f.start() && tau + s * g.b <= f.end());
            }
        }
        Self { grid, coefficients, valid }
    }

    pub fn grid(&self) -> &ScaleShiftGrid {
        &self.grid
    }

    pub fn n_scales(&self) -> usize {
        self.grid.scales.len()
    }

    pub fn n_shifts(&self) -> usize {
        self.grid.shifts.len()
    }

    pub fn coefficients(&self) -> &[f64] {
        &self.coefficients
    }

    pub fn validity_mask(&self) -> &[bool] {
        &self.valid
    }

    pub fn get(&self, scale: usize, shift: usize) -> f64 {
        self.coefficients[scale * self.n_shifts() + shift]
    }

    pub fn is_valid(&self, scale: usize, shift: usize) -> bool {
        self.valid[scale * self.n_shifts() + shift]
    }

    pub fn rows(&self) -> impl Iterator<Item = &[f64]> + '_ {
        self.coefficients.chunks(self.n_shifts())
    }

    pub fn mask_rows(&self) -> impl Iterator<Item = &[bool]> + '_ {
        self.valid.chunks(self.n_shifts())
    }

    pub fn peak_abs(&self) -> f64 {
        self.coefficients.iter().fold(0.0, |m, c| m.max(c.abs()))
    }

    /// Scale whose mean `|coefficient|` over the valid shifts accepted by
    /// `select` is largest; `None` if no valid shift is selected.
    pub fn peak_scale_where<P: Fn(f64) -> bool>(&self, select: P) -> Option<f64> {
        let mut best: Option<(f64, f64)> = None;
        for (i, (row, mask)) in self.rows().zip(self.mask_rows()).enumerate() {
            let (mut sum, mut count) = (0.0, 0usize);
            for ((c, ok), tau) in row.iter().zip(mask).zip(&self.grid.shifts) {
                if *ok && select(*tau) {
                    sum += c.abs();
                    count += 1;
                }
            }
            if count == 0 {
                continue;
            }
            let mean = sum / count as f64;
            if best.map_or(true, |(m, _)| mean > m) {
                best = Some((mean, self.grid.scales[i]));
            }
        }
        best.map(|(_, s)| s)
    }
}

/// Largest `|a − b|/|a|` over entries with `|a| > floor·max|a|`.
pub fn max_relative_deviation(a: &Scalogram, b: &Scalogram, floor: f64) -> Result<f64> {
    if a.grid != b.grid {
        return Err(Error::Domain("scalograms are on different grids"));
    }
    let cut = floor * a.peak_abs();
    Ok(a
        .coefficients
        .iter()
        .zip(&b.coefficients)
        .filter(|(x, _)| x.abs() > cut)
        .fold(0.0, |m, (x, y)| m.max((x - y).abs() / x.abs())))
}

/// Direct inner-product CWT; only samples inside each scaled support are
/// visited.
pub fn cwt_direct(f: &Signal, spec: &WaveletSpec, grid: ScaleShiftGrid) -> Scalogram {
    let g = spec.geometry();
    Scalogram::compute(f, &g, grid, |s, tau| f.inner(&g, s, tau, |x| spec.wavelet(x)))
}

/// Standardized beta density with its normalization precomputed.
#[derive(Debug, Clone, Copy)]
struct BlurKernel {
    geometry: SupportGeometry,
    alpha: f64,
    beta: f64,
    ln_norm: f64,
}

impl BlurKernel {
    fn new(p: &BetaParams) -> Self {
        let geometry = p.standardize();
        Self {
            geometry,
            alpha: p.alpha(),
            beta: p.beta(),
            ln_norm: -p.ln_beta() - (p.alpha() + p.beta() - 1.0) * geometry.length.ln(),
        }
    }

    fn eval(&self, t: f64) -> f64 {
        let g = &self.geometry;
        if t < g.a || t > g.b {
            return 0.0;
        }
        (self.ln_norm + ln_pow_limit(t - g.a, self.alpha - 1.0) + ln_pow_limit(g.b - t, self.beta - 1.0)).exp()
    }

    fn blur(&self, f: &Signal, scale: f64, shift: f64) -> f64 {
        f.inner(&self.geometry, scale, shift, |x| self.eval(x))
    }
}

/// `∫ f(t) s^{−1/2} φ((t − τ)/s) dt` with `φ` the standardized density of
/// `p`, as a Riemann sum over the samples in the scaled support.
pub fn blur(f: &Signal, p: &BetaParams, scale: f64, shift: f64) -> Result<f64> {
    if !(scale > 0.0) || !scale.is_finite() || !shift.is_finite() {
        return Err(Error::Domain("scale must be positive and shift finite"));
    }
    Ok(BlurKernel::new(p).blur(f, scale, shift))
}

/// Result of [`cwt_blur_derivative`].
#[derive(Debug, Clone, PartialEq)]
pub struct BlurDerivative {
    pub scalogram: Scalogram,
    /// The finite-difference step actually used.
    pub fd_step: f64,
    /// Row-major; true where the Richardson estimate of the difference error
    /// exceeds 1% of the coefficient (magnitudes floored at 1e-3 of the peak).
    pub fd_warning: Vec<bool>,
}

impl BlurDerivative {
    pub fn warning_count(&self) -> usize {
        self.fd_warning.iter().filter(|w| **w).count()
    }
}

/// Default difference step: `(min scale)·T/64`.
pub fn default_fd_step(spec: &WaveletSpec, grid: &ScaleShiftGrid) -> f64 {
    grid.scales[0] * spec.geometry().length / 64.0
}

/// CWT as `s^N` times the `N`-th central difference in `τ` of the blur:
/// `Σ_{k=0}^{N} (−1)^k C(N, k) B_s(τ + (N/2 − k)h) / h^N`.
///
/// `fd_step = None` selects [`default_fd_step`].
pub fn cwt_blur_derivative(
    f: &Signal,
    spec: &WaveletSpec,
    grid: ScaleShiftGrid,
    fd_step: Option<f64>,
) -> Result<BlurDerivative> {
    let h = fd_step.unwrap_or_else(|| default_fd_step(spec, &grid));
    if !(h > 0.0) || !h.is_finite() {
        return Err(Error::Domain("finite-difference step must be positive"));
    }
    let kernel = BlurKernel::new(spec.params());
    let n = spec.order();
    let weights = binomial_signs(n);
    let difference = |s: f64, tau: f64, step: f64| {
        let half = n as f64 / 2.0;
        let sum: f64 = weights
            .iter()
            .enumerate()
            .map(|(k, w)| w * kernel.blur(f, s, tau + (half - k as f64) * step))
            .sum();
        s.powi(n as i32) * sum / step.powi(n as i32)
    };

    let mut errors = Vec::with_capacity(grid.scales.len() * grid.shifts.len());
    let scalogram = Scalogram::compute(f, &kernel.geometry, grid, |s, tau| {
        let fine = difference(s, tau, h);
        let coarse = difference(s, tau, 2.0 * h);
        errors.push((fine - coarse).abs() / 3.0);
        fine
    });
    let floor = 1e-3 * scalogram.peak_abs();
    let fd_warning = scalogram
        .coefficients
        .iter()
        .zip(&errors)
        .map(|(c, e)| *e > 0.01 * c.abs().max(floor))
        .collect();
    Ok(BlurDerivative { scalogram, fd_step: h, fd_warning })
}

/// `(−1)^k C(n, k)` for `k = 0..=n`.
fn binomial_signs(n: u32) -> Vec<f64> {
    let mut w = vec![1.0];
    for k in 1..=n as usize {
        let prev: f64 = w[k - 1];
        w.push(-prev * (n as usize + 1 - k) as f64 / k as f64);
    }
    w
}

/// Phase-continuous binary FSK: unit-amplitude sine at `f0` during 0-bits
/// and `f1` during 1-bits.
pub fn make_fsk_signal(f0: f64, f1: f64, bits: &[bool], samples_per_bit: usize, sample_rate: f64) -> Result<Signal> {
    if !(sample_rate > 0.0) || !sample_rate.is_finite() {
        return Err(Error::Domain("sample rate must be positive and finite"));
    }
    for &freq in &[f0, f1] {
        if !(freq > 0.0) || !(freq < sample_rate / 2.0) {
            return Err(Error::Nyquist { frequency: freq, sample_rate });
        }
    }
    if samples_per_bit < 8 {
        return Err(Error::Domain("samples_per_bit must be at least 8"));
    }
    if bits.is_empty() {
        return Err(Error::Domain("bit sequence is empty"));
    }
    let mut phase = 0.0f64;
    let mut samples = Vec::with_capacity(bits.len() * samples_per_bit);
    for &bit in bits {
        let step = 2.0 * PI * if bit { f1 } else { f0 } / sample_rate;
        for _ in 0..samples_per_bit {
            samples.push(phase.sin());
            phase = (phase + step) % (2.0 * PI);
        }
    }
    Signal::new(samples, sample_rate)
}

/// Linear chirp `cos(2π(f_start·t + (f_end − f_start)t²/(2·duration)))`
/// over `len` samples.
pub fn make_chirp(f_start: f64, f_end: f64, len: usize, sample_rate: f64) -> Result<Signal> {
    if !(sample_rate > 0.0) || !sample_rate.is_finite() {
        return Err(Error::Domain("sample rate must be positive and finite"));
    }
    for &freq in &[f_start, f_end] {
        if !(freq >= 0.0) || !(freq < sample_rate / 2.0) {
            return Err(Error::Nyquist { frequency: freq, sample_rate });
        }
    }
    let duration = len as f64 / sample_rate;
    let rate = (f_end - f_start) / duration;
    let samples = (0..len)
        .map(|k| {
            let t = k as f64 / sample_rate;
            (2.0 * PI * (f_start * t + 0.5 * rate * t * t)).cos()
        })
        .collect();
    Signal::new(samples, sample_rate)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::energy::energies;
    use std::vec::Vec;

    fn spec(a: f64, b: f64, n: u32) -> WaveletSpec {
        WaveletSpec::new(BetaParams::new(a, b).unwrap(), n).unwrap()
    }

    fn noise(n: usize, seed: u64) -> Vec<f64> {
        let mut x = seed;
        (0..n)
            .map(|_| {
                x = x.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
                (x >> 11) as f64 / (1u64 << 53) as f64 - 0.5
            })
            .collect()
    }

    #[test]
    fn signal_validation() {
        assert!(Signal::new(vec![0.0; 7], 1.0).is_err());
        assert!(Signal::new(vec![0.0; 8], 0.0).is_err());
        let mut v = vec![0.0; 8];
        v[3] = f64::NAN;
        assert!(matches!(Signal::new(v, 1.0), Err(Error::NonFinite { .. })));
        let s = Signal::new(vec![0.0; 10], 4.0).unwrap().with_start(1.0).unwrap();
        assert_eq!(s.end(), 1.0 + 9.0 / 4.0);
        assert_eq!(s.index_range(1.1, 1.5), 1..3);
        assert_eq!(s.index_range(-5.0, 0.9), 0..0);
        assert_eq!(s.index_range(0.0, 100.0), 0..10);
    }

    #[test]
    fn grid_validation() {
        assert!(ScaleShiftGrid::new(vec![1.0, 1.0], vec![0.0]).is_err());
        assert!(ScaleShiftGrid::new(vec![-1.0], vec![0.0]).is_err());
        assert!(ScaleShiftGrid::new(vec![1.0], vec![1.0, 0.0]).is_err());
        let g = ScaleShiftGrid::geometric(0.5, 8.0, 5, 0.0, 1.0, 3).unwrap();
        assert!((g.scales()[4] - 8.0).abs() < 1e-12);
        assert!((g.scales()[2] - 2.0).abs() < 1e-12);
        assert_eq!(g.shifts(), &[0.0, 0.5, 1.0]);
    }

    #[test]
    fn zero_signal() {
        let f = Signal::new(vec![0.0; 64], 10.0).unwrap();
        let grid = ScaleShiftGrid::geometric(0.1, 1.0, 4, 0.0, 6.3, 8).unwrap();
        let s = spec(3.0, 3.0, 1);
        assert!(cwt_direct(&f, &s, grid.clone()).coefficients().iter().all(|c| *c == 0.0));
        let bd = cwt_blur_derivative(&f, &s, grid, None).unwrap();
        assert!(bd.scalogram.coefficients().iter().all(|c| *c == 0.0));
    }

    #[test]
    fn linearity() {
        let fs = 50.0;
        let a = noise(400, 1);
        let b = noise(400, 2);
        let sum: Vec<f64> = a.iter().zip(&b).map(|(x, y)| x + y).collect();
        let grid = ScaleShiftGrid::geometric(0.05, 0.8, 6, 0.0, 8.0, 20).unwrap();
        let s = spec(4.0, 6.0, 2);
        let ca = cwt_direct(&Signal::new(a, fs).unwrap(), &s, grid.clone());
        let cb = cwt_direct(&Signal::new(b, fs).unwrap(), &s, grid.clone());
        let cs = cwt_direct(&Signal::new(sum, fs).unwrap(), &s, grid);
        let scale = cs.peak_abs();
        for ((x, y), z) in ca.coefficients().iter().zip(cb.coefficients()).zip(cs.coefficients()) {
            assert!((x + y - z).abs() <= 1e-10 * scale);
        }
    }

    #[test]
    fn shift_covariance() {
        let fs = 40.0;
        let k = 13;
        let base = noise(300, 7);
        let mut delayed = vec![0.0; k];
        delayed.extend_from_slice(&base);
        let s = spec(3.0, 5.0, 1);
        let shifts: Vec<f64> = (0..30).map(|j| 1.0 + j as f64 / fs * 7.0).collect();
        let moved: Vec<f64> = shifts.iter().map(|t| t + k as f64 / fs).collect();
        let scales = vec![0.05, 0.1, 0.3];
        let c0 = cwt_direct(
            &Signal::new(base, fs).unwrap(),
            &s,
            ScaleShiftGrid::new(scales.clone(), shifts).unwrap(),
        );
        let c1 = cwt_direct(&Signal::new(delayed, fs).unwrap(), &s, ScaleShiftGrid::new(scales, moved).unwrap());
        let peak = c0.peak_abs();
        for (x, y) in c0.coefficients().iter().zip(c1.coefficients()) {
            assert!((x - y).abs() <= 1e-12 * peak);
        }
    }

    #[test]
    fn constants_are_annihilated() {
        let c = 2.5;
        let fs = 1000.0;
        let f = Signal::new(vec![c; 8000], fs).unwrap();
        for &(a, b, n) in &[(3.0, 3.0, 1), (4.0, 6.0, 1), (5.0, 7.0, 2)] {
            let s = spec(a, b, n);
            let t = s.geometry().length;
            let grid = ScaleShiftGrid::geometric(0.2, 0.8, 3, 3.0, 4.5, 7).unwrap();
            let sc = cwt_direct(&f, &s, grid.clone());
            for (i, row) in sc.rows().enumerate() {
                let bound = 1e-6 * c * grid.scales()[i].sqrt() * t;
                assert!(row.iter().all(|x| x.abs() <= bound), "({a},{b},{n}) row {i}: {row:?}");
            }
            assert!(sc.validity_mask().iter().all(|v| *v));
        }
    }

    #[test]
    fn blur_of_constant() {
        let f = Signal::new(vec![3.0; 4000], 500.0).unwrap();
        let p = BetaParams::new(3.0, 4.0).unwrap();
        for &s in &[0.1, 0.4] {
            let b = blur(&f, &p, s, 4.0).unwrap();
            assert!((b - 3.0 * s.sqrt()).abs() < 1e-6, "{b}");
        }
        let zero = Signal::new(vec![0.0; 16], 1.0).unwrap();
        assert_eq!(blur(&zero, &p, 1.0, 8.0).unwrap(), 0.0);
        assert!(blur(&f, &p, 0.0, 1.0).is_err());
    }

    #[test]
    fn blur_shift_covariance() {
        let fs = 100.0;
        let base = noise(500, 3);
        let mut delayed = vec![0.0; 25];
        delayed.extend_from_slice(&base);
        let p = BetaParams::new(2.5, 4.0).unwrap();
        let f0 = Signal::new(base, fs).unwrap();
        let f1 = Signal::new(delayed, fs).unwrap();
        for &tau in &[1.0, 2.37, 3.5] {
            let x = blur(&f0, &p, 0.2, tau).unwrap();
            let y = blur(&f1, &p, 0.2, tau + 0.25).unwrap();
            assert!((x - y).abs() < 1e-12);
        }
    }

    #[test]
    fn self_inner_product_is_energy() {
        for &(a, b) in &[(3.0, 3.0), (4.0, 2.5), (5.0, 7.0)] {
            let s = spec(a, b, 1);
            let g = s.geometry();
            let fs = 4000.0 / g.length;
            let n = (g.length * fs) as usize + 200;
            let start = g.a - 100.0 / fs;
            let samples = (0..n).map(|k| s.wavelet(start + k as f64 / fs)).collect();
            let f = Signal::new(samples, fs).unwrap().with_start(start).unwrap();
            let grid = ScaleShiftGrid::new(vec![1.0], vec![0.0]).unwrap();
            let c = cwt_direct(&f, &s, grid).get(0, 0);
            let e = energies(s.params()).unwrap().wavelet;
            assert!((c - e).abs() <= 1e-4 * e, "({a},{b}): {c} vs {e}");
        }
    }

    #[test]
    fn binomial_weights() {
        assert_eq!(binomial_signs(1), vec![1.0, -1.0]);
        assert_eq!(binomial_signs(4), vec![1.0, -4.0, 6.0, -4.0, 1.0]);
    }

    fn equivalence(f: &Signal, s: &WaveletSpec, grid: ScaleShiftGrid, step: Option<f64>) -> f64 {
        let direct = cwt_direct(f, s, grid.clone());
        let bd = cwt_blur_derivative(f, s, grid, step).unwrap();
        max_relative_deviation(&direct, &bd.scalogram, 1e-2).unwrap()
    }

    #[test]
    fn direct_and_blur_derivative_agree() {
        let fs = 1000.0;
        let chirp = make_chirp(5.0, 60.0, 2048, fs).unwrap();
        let fsk = make_fsk_signal(20.0, 40.0, &[false, true, true, false, true, false, false, true], 256, fs).unwrap();
        for &(a, b, n) in &[(3.0, 3.0, 1), (5.0, 7.0, 1), (5.0, 7.0, 2)] {
            let s = spec(a, b, n);
            let step = 0.005 * s.geometry().length / 1024.0;
            for f in [&chirp, &fsk] {
                let grid = ScaleShiftGrid::geometric(0.005, 0.05, 8, 0.0, f.end(), 48).unwrap();
                let dev = equivalence(f, &s, grid, Some(step));
                assert!(dev <= 1e-3, "({a},{b},{n}) deviation {dev}");
            }
        }
    }

    #[test]
    fn fd_warning_flags_large_steps() {
        let fs = 1000.0;
        let f = make_chirp(5.0, 60.0, 1024, fs).unwrap();
        let s = spec(3.0, 3.0, 1);
        let grid = ScaleShiftGrid::geometric(0.01, 0.04, 4, 0.1, 0.9, 16).unwrap();
        let fine = 0.01 * s.geometry().length / 1024.0;
        let small = cwt_blur_derivative(&f, &s, grid.clone(), Some(fine)).unwrap();
        assert_eq!(small.warning_count(), 0);
        let huge = cwt_blur_derivative(&f, &s, grid, Some(0.02)).unwrap();
        assert!(huge.warning_count() > 0);
    }

    #[test]
    fn fsk_generation() {
        let fs = 800.0;
        let tone = make_fsk_signal(50.0, 50.0, &[true, false, true], 32, fs).unwrap();
        let zeros = make_fsk_signal(50.0, 90.0, &[false, false, false], 32, fs).unwrap();
        for (k, (x, y)) in tone.samples().iter().zip(zeros.samples()).enumerate() {
            let want = (2.0 * PI * 50.0 * k as f64 / fs).sin();
            assert!((x - want).abs() < 1e-9 && (y - want).abs() < 1e-9);
        }
        let f = make_fsk_signal(50.0, 120.0, &[false, true, false, true, true, false], 40, fs).unwrap();
        let slope = 2.0 * PI * 120.0 / fs;
        let jump = f.samples().windows(2).fold(0.0f64, |m, w| m.max((w[1] - w[0]).abs()));
        assert!(jump <= slope);
        assert!(matches!(
            make_fsk_signal(50.0, 400.0, &[true], 8, fs),
            Err(Error::Nyquist { .. })
        ));
        assert!(make_fsk_signal(50.0, 100.0, &[true], 7, fs).is_err());
    }

    #[test]
    fn fsk_discrimination() {
        let fs = 1000.0;
        let spb = 200;
        let bits = [false, true, false, false, true, true, false, true];
        let f = make_fsk_signal(25.0, 50.0, &bits, spb, fs).unwrap();
        let s = spec(3.0, 3.0, 1);
        let grid = ScaleShiftGrid::geometric(0.001, 0.05, 32, 0.0, f.end(), 200).unwrap();
        let sc = cwt_direct(&f, &s, grid);
        let bit_of = |tau: f64| {
            let pos = tau * fs / spb as f64;
            let k = pos as usize;
            let frac = pos - k as f64;
            // skip the transition zones
            (k < bits.len() && (0.25..0.75).contains(&frac)).then(|| bits[k])
        };
        let s1 = sc.peak_scale_where(|t| bit_of(t) == Some(true)).unwrap();
        let s0 = sc.peak_scale_where(|t| bit_of(t) == Some(false)).unwrap();
        assert!(s1 < s0, "{s1} vs {s0}");
        let ratio = s0 / s1;
        assert!(ratio > 1.5 && ratio < 2.7, "{ratio}");
    }
}
