//! `betawave`: sample beta wavelets and their spectra, report energies,
//! compute scalograms and run the compact-support CLT demo.
//!
//! Every subcommand writes one artifact (CSV or JSON) to `--out`, or to
//! stdout without it, and a one-line summary to stdout (stderr when the
//! artifact itself went to stdout). Exit codes: 2 invalid arguments,
//! 3 numerical failure, 4 I/O failure.

mod commands;
mod error;
mod input;
mod output;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use crate::output::Format;

#[derive(Debug, Parser)]
#[command(name = "betawave", version, about = "Beta wavelets: waveforms, spectra, energies, scalograms, CLT demo")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Sample the wavelet ψ_N on its support [a, b]
    Wavelet(WaveletArgs),
    /// Sample the scale function φ (standardized beta density) on [a, b]
    Scalefn(ScalefnArgs),
    /// Closed-form spectrum Ψ_N on an evenly spaced ν = ωT grid
    Spectrum(SpectrumArgs),
    /// First spectral null of the characteristic function
    Nulls(NullsArgs),
    /// λ₀, χ, energies and admissibility constant
    Energy(EnergyArgs),
    /// Scalogram of a signal read from a CSV file
    Cwt(CwtArgs),
    /// n-fold self-convolution of the uniform density and its beta fit
    Clt(CltArgs),
    /// Scalogram of a generated binary FSK signal
    FskDemo(FskArgs),
}

#[derive(Debug, Args)]
pub struct Shape {
    /// Left exponent α of the beta density
    #[arg(long, default_value_t = 3.0)]
    pub alpha: f64,
    /// Right exponent β of the beta density
    #[arg(long, default_value_t = 3.0)]
    pub beta: f64,
}

#[derive(Debug, Args)]
pub struct Output {
    /// Output file; stdout when omitted
    #[arg(long)]
    pub out: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = Format::Csv)]
    pub format: Format,
}

#[derive(Debug, Args)]
pub struct Tolerance {
    /// Absolute and relative quadrature tolerance
    #[arg(long, default_value_t = 1e-10)]
    pub tol: f64,
}

#[derive(Debug, Args)]
pub struct WaveletArgs {
    #[command(flatten)]
    pub shape: Shape,
    /// Derivative order N, 1 ≤ N < min(α, β)
    #[arg(long, default_value_t = 1)]
    pub order: u32,
    /// Number of samples, endpoints included
    #[arg(long, default_value_t = 257)]
    pub samples: usize,
    #[command(flatten)]
    pub output: Output,
}

#[derive(Debug, Args)]
pub struct ScalefnArgs {
    #[command(flatten)]
    pub shape: Shape,
    /// Number of samples, endpoints included
    #[arg(long, default_value_t = 257)]
    pub samples: usize,
    #[command(flatten)]
    pub output: Output,
}

#[derive(Debug, Args)]
pub struct SpectrumArgs {
    #[command(flatten)]
    pub shape: Shape,
    /// Derivative order N, 1 ≤ N < min(α, β)
    #[arg(long, default_value_t = 1)]
    pub order: u32,
    /// Number of frequencies on [0, nu-max]
    #[arg(long, default_value_t = 257)]
    pub samples: usize,
    /// Largest normalized frequency ν = ωT
    #[arg(long, default_value_t = 40.0)]
    pub nu_max: f64,
    #[command(flatten)]
    pub tol: Tolerance,
    #[command(flatten)]
    pub output: Output,
}

#[derive(Debug, Args)]
pub struct NullsArgs {
    #[command(flatten)]
    pub shape: Shape,
    /// Upper end of the search interval in ν
    #[arg(long, default_value_t = 100.0)]
    pub nu_max: f64,
    #[command(flatten)]
    pub tol: Tolerance,
    #[command(flatten)]
    pub output: Output,
}

#[derive(Debug, Args)]
pub struct EnergyArgs {
    #[command(flatten)]
    pub shape: Shape,
    /// Truncation of the admissibility integral in ν
    #[arg(long, default_value_t = 500.0)]
    pub nu_max: f64,
    #[command(flatten)]
    pub tol: Tolerance,
    #[command(flatten)]
    pub output: Output,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ScaleRange {
    pub lo: f64,
    pub hi: f64,
    pub n: usize,
}

fn parse_scales(s: &str) -> Result<ScaleRange, String> {
    let parts: Vec<&str> = s.split(':').collect();
    let [lo, hi, n] = parts.as_slice() else {
        return Err("expected lo:hi:n".into());
    };
    let lo: f64 = lo.parse().map_err(|e| format!("lo: {e}"))?;
    let hi: f64 = hi.parse().map_err(|e| format!("hi: {e}"))?;
    let n: usize = n.parse().map_err(|e| format!("n: {e}"))?;
    if !(lo > 0.0 && hi.is_finite() && (hi > lo || (n == 1 && hi == lo))) || n == 0 {
        return Err("need 0 < lo < hi and n ≥ 1".into());
    }
    Ok(ScaleRange { lo, hi, n })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum Method {
    /// Inner product with the scaled wavelet
    Direct,
    /// N-th shift derivative of the blurred signal
    BlurDerivative,
}

#[derive(Debug, Args)]
pub struct CwtArgs {
    /// Signal CSV: `time_s,value` rows, or one value per row with --sample-rate
    #[arg(long)]
    pub input: PathBuf,
    /// Sample rate in Hz (required for single-column input)
    #[arg(long)]
    pub sample_rate: Option<f64>,
    #[command(flatten)]
    pub shape: Shape,
    /// Derivative order N, 1 ≤ N < min(α, β)
    #[arg(long, default_value_t = 1)]
    pub order: u32,
    /// Geometric scale grid lo:hi:n
    #[arg(long, value_parser = parse_scales)]
    pub scales: ScaleRange,
    /// Number of shifts spanning the signal
    #[arg(long, default_value_t = 128)]
    pub shifts: usize,
    #[arg(long, value_enum, default_value_t = Method::Direct)]
    pub method: Method,
    /// Finite-difference step in seconds for blur-derivative (default: min scale·T/64)
    #[arg(long)]
    pub fd_step: Option<f64>,
    #[command(flatten)]
    pub output: Output,
}

#[derive(Debug, Args)]
pub struct CltArgs {
    /// Number of uniform variables summed
    #[arg(long, default_value_t = 8)]
    pub count: u32,
    /// Grid points of the uniform density
    #[arg(long, default_value_t = 2048)]
    pub samples: usize,
    #[command(flatten)]
    pub output: Output,
}

#[derive(Debug, Args)]
pub struct FskArgs {
    #[command(flatten)]
    pub shape: Shape,
    /// Derivative order N, 1 ≤ N < min(α, β)
    #[arg(long, default_value_t = 1)]
    pub order: u32,
    /// Tone for 0-bits, Hz
    #[arg(long, default_value_t = 25.0)]
    pub f0: f64,
    /// Tone for 1-bits, Hz
    #[arg(long, default_value_t = 50.0)]
    pub f1: f64,
    /// Bit pattern
    #[arg(long, default_value = "01101001")]
    pub bits: String,
    #[arg(long, default_value_t = 256)]
    pub samples_per_bit: usize,
    /// Sample rate in Hz
    #[arg(long, default_value_t = 1000.0)]
    pub sample_rate: f64,
    /// Geometric scale grid lo:hi:n
    #[arg(long, value_parser = parse_scales, default_value = "0.001:0.05:32")]
    pub scales: ScaleRange,
    /// Number of shifts spanning the signal
    #[arg(long, default_value_t = 128)]
    pub shifts: usize,
    #[command(flatten)]
    pub output: Output,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Wavelet(a) => commands::wavelet(&a),
        Command::Scalefn(a) => commands::scalefn(&a),
        Command::Spectrum(a) => commands::spectrum(&a),
        Command::Nulls(a) => commands::nulls(&a),
        Command::Energy(a) => commands::energy(&a),
        Command::Cwt(a) => commands::cwt(&a),
        Command::Clt(a) => commands::clt(&a),
        Command::FskDemo(a) => commands::fsk_demo(&a),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("betawave: {e}");
            e.exit_code()
        }
    }
}
