//! Beta wavelets: compactly supported, one-cycle wavelets obtained by
//! differentiating standardized beta probability densities.
//!
//! The crate is `no_std` (it needs `alloc` for quadrature work queues,
//! sampled waveforms and scalograms). Modules:
//!
//! | Module | Contents |
//! |--------|----------|
//! | [`special`] | log-gamma, beta function, Kummer `M(α, α+β, jν)`, adaptive Gauss–Kronrod quadrature |
//! | [`density`] | beta density, moments, standardization, moment-matching fit |
//! | [`wavelet`] | scale functions and N-th order beta wavelets |
//! | [`spectrum`] | closed-form spectra, Riemann-sum oracle, spectral nulls |
//! | [`energy`] | L² constants, energies, Parseval and admissibility checks |
//! | [`cwt`] | direct and blur-derivative continuous wavelet transforms |
//! | [`clt`] | gridded densities, iterated convolution, beta fitting |
//!
//! ```
//! use betawave_core::{BetaParams, WaveletSpec};
//!
//! let spec = WaveletSpec::new(BetaParams::new(3.0, 3.0).unwrap(), 1).unwrap();
//! // symmetric wavelets cross zero at the origin
//! assert!(spec.wavelet(0.0).abs() < 1e-15);
//! ```

#![no_std]
#![warn(missing_debug_implementations)]
// negated comparisons reject NaN along with out-of-range values
#![allow(clippy::neg_cmp_op_on_partial_ord)]

extern crate alloc;
#[cfg(test)]
extern crate std;

pub mod clt;
pub mod cwt;
pub mod density;
pub mod energy;
mod error;
pub mod special;
pub mod spectrum;
pub mod wavelet;

pub use density::{BetaParams, DistributionStats, SupportGeometry};
pub use error::{Error, Result};
pub use special::{ComplexValue, QuadratureConfig};
pub use wavelet::{SampledWaveform, WaveletSpec};
