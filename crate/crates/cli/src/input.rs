//! Signal ingestion: two-column `time_s,value` CSV, or one value per row
//! with the rate given by `--sample-rate`. A header row is optional.

use std::path::Path;

use betawave_core::cwt::Signal;

use crate::error::{CliError, CliResult};

/// Relative tolerance on the spread of time steps in two-column input.
const SPACING_TOL: f64 = 1e-6;

pub fn read_signal(path: &Path, sample_rate: Option<f64>) -> CliResult<Signal> {
    let csv_err = |source| CliError::Csv { path: path.to_path_buf(), source };
    let mut reader = csv::ReaderBuilder::new()
        .has_headers(false)
        .trim(csv::Trim::All)
        .comment(Some(b'#'))
        .from_path(path)
        .map_err(|e| match e.into_kind() {
            csv::ErrorKind::Io(source) => CliError::Io { path: path.to_path_buf(), source },
            kind => CliError::Invalid(format!("{}: {kind:?}", path.display())),
        })?;

    let mut rows: Vec<Vec<f64>> = Vec::new();
    for (line, record) in reader.records().enumerate() {
        let record = record.map_err(csv_err)?;
        let parsed: Result<Vec<f64>, _> = record.iter().map(str::parse::<f64>).collect();
        match parsed {
            Ok(values) => rows.push(values),
            Err(_) if line == 0 => continue,
            Err(e) => {
                return Err(CliError::Invalid(format!("{} line {}: {e}", path.display(), line + 1)));
            }
        }
    }
    let width = rows.first().map_or(0, Vec::len);
    if rows.iter().any(|r| r.len() != width) {
        return Err(CliError::Invalid(format!("{}: rows have different column counts", path.display())));
    }
    if rows.iter().flatten().any(|v| !v.is_finite()) {
        return Err(CliError::Invalid(format!("{}: non-finite value", path.display())));
    }

    match (width, sample_rate) {
        (1, Some(rate)) => Ok(Signal::new(rows.into_iter().map(|r| r[0]).collect(), rate)?),
        (1, None) => Err(CliError::Invalid("single-column input needs --sample-rate".into())),
        (2, rate) => {
            if rows.len() < 2 {
                return Err(CliError::Invalid(format!("{}: too few samples", path.display())));
            }
            let t0 = rows[0][0];
            let span = rows[rows.len() - 1][0] - t0;
            let dt = span / (rows.len() - 1) as f64;
            let uneven = rows
                .windows(2)
                .any(|w| ((w[1][0] - w[0][0]) - dt).abs() > SPACING_TOL * dt.abs());
            if dt.is_nan() || dt <= 0.0 || uneven {
                return Err(CliError::Invalid(format!(
                    "{}: time column must increase in uniform steps",
                    path.display()
                )));
            }
            let derived = 1.0 / dt;
            if let Some(r) = rate {
                if (r - derived).abs() > SPACING_TOL * derived {
                    return Err(CliError::Invalid(format!(
                        "--sample-rate {r} disagrees with time column ({derived})"
                    )));
                }
            }
            Ok(Signal::new(rows.into_iter().map(|r| r[1]).collect(), derived)?.with_start(t0)?)
        }
        (w, _) => Err(CliError::Invalid(format!("{}: expected 1 or 2 columns, found {w}", path.display()))),
    }
}
