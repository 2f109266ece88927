use betawave_core::clt::{fit_and_distance, normalize_unit, self_convolve, GriddedDensity};
use betawave_core::cwt::{cwt_blur_derivative, cwt_direct, make_fsk_signal, ScaleShiftGrid};
use betawave_core::energy::energy_report;
use betawave_core::spectrum::{find_first_null, spectrum_on_nu_grid};
use betawave_core::wavelet::Waveform;
use betawave_core::{BetaParams, QuadratureConfig, SampledWaveform, WaveletSpec};
use serde::Serialize;

use crate::error::{CliError, CliResult};
use crate::output::{emit, json_bytes, num, scalogram_bytes, Format, Table};
use crate::{CltArgs, CwtArgs, EnergyArgs, FskArgs, Method, NullsArgs, Output, ScaleRange, ScalefnArgs, Shape, SpectrumArgs, Tolerance, WaveletArgs};

/// Bisection tolerance of the null search, in ν.
const NULL_TOL: f64 = 1e-10;
const MAX_SUBDIVISIONS: usize = 2000;

fn params(s: &Shape) -> CliResult<BetaParams> {
    Ok(BetaParams::new(s.alpha, s.beta)?)
}

fn wavelet_spec(s: &Shape, order: u32) -> CliResult<WaveletSpec> {
    Ok(WaveletSpec::new(params(s)?, order)?)
}

fn quadrature(t: &Tolerance) -> CliResult<QuadratureConfig> {
    Ok(QuadratureConfig::new(t.tol, t.tol, MAX_SUBDIVISIONS)?)
}

/// Writes the artifact, then the summary line: to stdout when the artifact
/// went to a file, to stderr when the artifact occupies stdout.
fn finish(out: &Output, bytes: &[u8], summary: &str) -> CliResult<()> {
    emit(out.out.as_deref(), bytes)?;
    if out.out.is_some() {
        println!("{summary}");
    } else {
        eprintln!("{summary}");
    }
    Ok(())
}

fn grid(scales: &ScaleRange, t_lo: f64, t_hi: f64, shifts: usize) -> CliResult<ScaleShiftGrid> {
    Ok(ScaleShiftGrid::geometric(scales.lo, scales.hi, scales.n, t_lo, t_hi, shifts)?)
}

#[derive(Serialize)]
struct WaveformJson<'a> {
    alpha: f64,
    beta: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    order: Option<u32>,
    support: [f64; 2],
    t: Vec<f64>,
    #[serde(flatten)]
    values: ValuesJson<'a>,
}

#[derive(Serialize)]
enum ValuesJson<'a> {
    #[serde(rename = "psi")]
    Psi(&'a [f64]),
    #[serde(rename = "phi")]
    Phi(&'a [f64]),
}

struct Sampled<'a> {
    p: &'a BetaParams,
    order: Option<u32>,
    which: Waveform,
    w: SampledWaveform,
}

fn write_waveform(s: Sampled<'_>, out: &Output) -> CliResult<()> {
    let g = s.p.standardize();
    let column = match s.which {
        Waveform::Wavelet => "psi",
        Waveform::Scale => "phi",
    };
    let bytes = match out.format {
        Format::Csv => {
            let mut t = Table::new(["t", column]);
            s.w.iter().for_each(|(x, v)| t.push([x, v]));
            t.to_bytes()
        }
        Format::Json => json_bytes(&WaveformJson {
            alpha: s.p.alpha(),
            beta: s.p.beta(),
            order: s.order,
            support: [g.a, g.b],
            t: s.w.iter().map(|(x, _)| x).collect(),
            values: match s.which {
                Waveform::Wavelet => ValuesJson::Psi(&s.w.values),
                Waveform::Scale => ValuesJson::Phi(&s.w.values),
            },
        }),
    };
    let peak = s.w.values.iter().fold(0.0f64, |m, v| m.max(v.abs()));
    let summary = format!(
        "{column}: alpha={} beta={} samples={} support=[{}, {}] max|value|={}",
        num(s.p.alpha()),
        num(s.p.beta()),
        s.w.len(),
        num(g.a),
        num(g.b),
        num(peak)
    );
    finish(out, &bytes, &summary)
}

pub fn wavelet(a: &WaveletArgs) -> CliResult<()> {
    let spec = wavelet_spec(&a.shape, a.order)?;
    let w = spec.sample(a.samples, Waveform::Wavelet)?;
    let sampled = Sampled { p: spec.params(), order: Some(a.order), which: Waveform::Wavelet, w };
    write_waveform(sampled, &a.output)
}

pub fn scalefn(a: &ScalefnArgs) -> CliResult<()> {
    let p = params(&a.shape)?;
    if a.samples < 2 {
        return Err(CliError::Invalid("--samples must be at least 2".into()));
    }
    let g = p.standardize();
    let dt = g.length / (a.samples - 1) as f64;
    let values = (0..a.samples)
        .map(|k| p.std_pdf(if k + 1 == a.samples { g.b } else { g.a + k as f64 * dt }))
        .collect();
    let w = SampledWaveform::new(g.a, dt, values)?;
    write_waveform(Sampled { p: &p, order: None, which: Waveform::Scale, w }, &a.output)
}

#[derive(Serialize)]
struct SpectrumJson {
    alpha: f64,
    beta: f64,
    order: u32,
    support_length: f64,
    nu: Vec<f64>,
    omega: Vec<f64>,
    re: Vec<f64>,
    im: Vec<f64>,
    abs: Vec<f64>,
}

pub fn spectrum(a: &SpectrumArgs) -> CliResult<()> {
    let spec = wavelet_spec(&a.shape, a.order)?;
    let cfg = quadrature(&a.tol)?;
    let samples = spectrum_on_nu_grid(&spec, a.nu_max, a.samples, &cfg)?;
    let t_len = spec.geometry().length;
    let rows: Vec<[f64; 5]> = samples
        .iter()
        .map(|s| [s.omega * t_len, s.omega, s.value.re, s.value.im, s.value.norm()])
        .collect();
    let bytes = match a.output.format {
        Format::Csv => {
            let mut t = Table::new(["nu", "omega", "re", "im", "abs"]);
            rows.iter().for_each(|r| t.push(*r));
            t.to_bytes()
        }
        Format::Json => json_bytes(&SpectrumJson {
            alpha: a.shape.alpha,
            beta: a.shape.beta,
            order: a.order,
            support_length: t_len,
            nu: rows.iter().map(|r| r[0]).collect(),
            omega: rows.iter().map(|r| r[1]).collect(),
            re: rows.iter().map(|r| r[2]).collect(),
            im: rows.iter().map(|r| r[3]).collect(),
            abs: rows.iter().map(|r| r[4]).collect(),
        }),
    };
    let peak = rows.iter().fold([0.0, 0.0], |best, r| if r[4] > best[1] { [r[0], r[4]] } else { best });
    let summary = format!("spectrum: peak |Psi|={} at nu={}", num(peak[1]), num(peak[0]));
    finish(&a.output, &bytes, &summary)
}

#[derive(Serialize)]
struct NullJson {
    alpha: f64,
    beta: f64,
    support_length: f64,
    nu: f64,
    omega: f64,
}

pub fn nulls(a: &NullsArgs) -> CliResult<()> {
    let p = params(&a.shape)?;
    let cfg = quadrature(&a.tol)?;
    let null = find_first_null(&p, a.nu_max, NULL_TOL, &cfg)?;
    let t_len = p.standardize().length;
    let omega = null.to_omega(t_len);
    let bytes = match a.output.format {
        Format::Csv => {
            let mut t = Table::new(["nu", "omega"]);
            t.push([null.nu, omega]);
            t.to_bytes()
        }
        Format::Json => json_bytes(&NullJson {
            alpha: p.alpha(),
            beta: p.beta(),
            support_length: t_len,
            nu: null.nu,
            omega,
        }),
    };
    let summary = format!("first null: nu={} omega={}", num(null.nu), num(omega));
    finish(&a.output, &bytes, &summary)
}

pub fn energy(a: &EnergyArgs) -> CliResult<()> {
    let p = params(&a.shape)?;
    let cfg = quadrature(&a.tol)?;
    let r = energy_report(&p, a.nu_max, &cfg)?;
    let bytes = match a.output.format {
        Format::Csv => {
            let mut t = Table::new([
                "alpha",
                "beta",
                "T",
                "lambda0",
                "chi",
                "energy_scale",
                "energy_wavelet",
                "admissibility_closed",
                "admissibility_numeric",
            ]);
            t.push([
                r.alpha,
                r.beta,
                r.support_length,
                r.lambda0,
                r.chi,
                r.energy_scale,
                r.energy_wavelet,
                r.admissibility_closed,
                r.admissibility_numeric,
            ]);
            t.to_bytes()
        }
        Format::Json => json_bytes(&r),
    };
    let summary = format!(
        "energy: lambda0={} chi={} E_phi={} E_psi={} c_psi closed={} numeric={}",
        num(r.lambda0),
        num(r.chi),
        num(r.energy_scale),
        num(r.energy_wavelet),
        num(r.admissibility_closed),
        num(r.admissibility_numeric)
    );
    finish(&a.output, &bytes, &summary)
}

pub fn cwt(a: &CwtArgs) -> CliResult<()> {
    let signal = crate::input::read_signal(&a.input, a.sample_rate)?;
    let spec = wavelet_spec(&a.shape, a.order)?;
    let grid = grid(&a.scales, signal.start(), signal.end(), a.shifts)?;
    let (scalogram, warnings) = match a.method {
        Method::Direct => {
            if a.fd_step.is_some() {
                return Err(CliError::Invalid("--fd-step applies to --method blur-derivative only".into()));
            }
            (cwt_direct(&signal, &spec, grid), None)
        }
        Method::BlurDerivative => {
            let r = cwt_blur_derivative(&signal, &spec, grid, a.fd_step)?;
            (r.scalogram, Some(r.fd_warning))
        }
    };
    let bytes = scalogram_bytes(&scalogram, warnings.as_deref(), a.output.format);
    let truncated = scalogram.validity_mask().iter().filter(|v| !**v).count();
    let mut summary = format!(
        "cwt: {} scales x {} shifts, peak |coef|={}, truncated={truncated}",
        scalogram.n_scales(),
        scalogram.n_shifts(),
        num(scalogram.peak_abs())
    );
    if let Some(w) = &warnings {
        summary.push_str(&format!(", fd_warnings={}", w.iter().filter(|x| **x).count()));
    }
    finish(&a.output, &bytes, &summary)
}

#[derive(Serialize)]
struct CltJson {
    count: u32,
    alpha_fit: f64,
    beta_fit: f64,
    l2: f64,
    t: Vec<f64>,
    value: Vec<f64>,
}

pub fn clt(a: &CltArgs) -> CliResult<()> {
    let u = GriddedDensity::uniform(0.0, 1.0, a.samples)?;
    let sum = normalize_unit(&self_convolve(&u, a.count)?);
    let fit = fit_and_distance(&sum)?;
    let bytes = match a.output.format {
        Format::Csv => {
            let mut t = Table::new(["t", "value"]);
            sum.points().for_each(|(x, v)| t.push([x, v]));
            t.to_bytes()
        }
        Format::Json => json_bytes(&CltJson {
            count: a.count,
            alpha_fit: fit.params.alpha(),
            beta_fit: fit.params.beta(),
            l2: fit.l2,
            t: sum.points().map(|(x, _)| x).collect(),
            value: sum.values().to_vec(),
        }),
    };
    let summary = format!(
        "clt: n={} fit alpha={} beta={} l2={}",
        a.count,
        num(fit.params.alpha()),
        num(fit.params.beta()),
        num(fit.l2)
    );
    finish(&a.output, &bytes, &summary)
}

fn parse_bits(s: &str) -> CliResult<Vec<bool>> {
    s.chars()
        .map(|c| match c {
            '0' => Ok(false),
            '1' => Ok(true),
            other => Err(CliError::Invalid(format!("--bits: unexpected character {other:?}"))),
        })
        .collect()
}

pub fn fsk_demo(a: &FskArgs) -> CliResult<()> {
    let bits = parse_bits(&a.bits)?;
    let spec = wavelet_spec(&a.shape, a.order)?;
    let signal = make_fsk_signal(a.f0, a.f1, &bits, a.samples_per_bit, a.sample_rate)?;
    let grid = grid(&a.scales, signal.start(), signal.end(), a.shifts)?;
    let scalogram = cwt_direct(&signal, &spec, grid);

    let bit_duration = a.samples_per_bit as f64 / a.sample_rate;
    // middle half of each bit, away from the tone switches
    let bit_at = |tau: f64| {
        let pos = tau / bit_duration;
        let k = pos.floor();
        let frac = pos - k;
        (k >= 0.0 && (k as usize) < bits.len() && (0.25..0.75).contains(&frac)).then(|| bits[k as usize])
    };
    let s0 = scalogram.peak_scale_where(|t| bit_at(t) == Some(false));
    let s1 = scalogram.peak_scale_where(|t| bit_at(t) == Some(true));
    let fmt = |s: Option<f64>| s.map_or_else(|| "none".to_string(), num);
    let discriminates = matches!((s0, s1), (Some(a), Some(b)) if b < a);

    let bytes = scalogram_bytes(&scalogram, None, a.output.format);
    let summary = format!(
        "fsk-demo: peak scale 0-bits={} 1-bits={} discriminates={discriminates}",
        fmt(s0),
        fmt(s1)
    );
    finish(&a.output, &bytes, &summary)
}
