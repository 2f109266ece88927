use std::fs::File;
use std::io::Write;
use std::path::{Path, PathBuf};

use betawave_core::cwt::Scalogram;
use clap::ValueEnum;
use serde::Serialize;

use crate::error::{CliError, CliResult};

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Csv,
    Json,
}

/// Shortest decimal that parses back to the same `f64`.
pub fn num(x: f64) -> String {
    format!("{x:?}")
}

/// Header row plus numeric rows.
#[derive(Debug, Default)]
pub struct Table {
    header: Vec<String>,
    rows: Vec<Vec<String>>,
}

impl Table {
    pub fn new<S: Into<String>>(header: impl IntoIterator<Item = S>) -> Self {
        Self { header: header.into_iter().map(Into::into).collect(), rows: Vec::new() }
    }

    pub fn push(&mut self, row: impl IntoIterator<Item = f64>) {
        self.rows.push(row.into_iter().map(num).collect());
    }

    pub fn to_bytes(&self) -> Vec<u8> {
        let mut w = csv::WriterBuilder::new().terminator(csv::Terminator::Any(b'\n')).from_writer(Vec::new());
        // writes into a Vec cannot fail
        w.write_record(&self.header).expect("in-memory write");
        for r in &self.rows {
            w.write_record(r).expect("in-memory write");
        }
        w.into_inner().expect("in-memory flush")
    }
}

pub fn json_bytes<T: Serialize>(value: &T) -> Vec<u8> {
    let mut out = serde_json::to_vec_pretty(value).expect("plain data serializes");
    out.push(b'\n');
    out
}

/// Artifact goes to `--out` when given, otherwise to stdout.
pub fn emit(out: Option<&Path>, bytes: &[u8]) -> CliResult<()> {
    match out {
        Some(path) => {
            let io = |source| CliError::Io { path: PathBuf::from(path), source };
            let mut f = File::create(path).map_err(io)?;
            f.write_all(bytes).map_err(io)?;
            f.sync_all().map_err(io)
        }
        None => {
            let mut stdout = std::io::stdout().lock();
            stdout.write_all(bytes).and_then(|_| stdout.flush()).map_err(CliError::Stdout)
        }
    }
}

/// JSON envelope of a scalogram.
#[derive(Debug, Serialize)]
pub struct ScalogramJson<'a> {
    pub scales: &'a [f64],
    pub shifts: &'a [f64],
    pub coefficients: Vec<&'a [f64]>,
    pub validity_mask: Vec<&'a [bool]>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub fd_warning_mask: Option<Vec<&'a [bool]>>,
}

impl<'a> ScalogramJson<'a> {
    pub fn new(s: &'a Scalogram, fd_warning: Option<&'a [bool]>) -> Self {
        Self {
            scales: s.grid().scales(),
            shifts: s.grid().shifts(),
            coefficients: s.rows().collect(),
            validity_mask: s.mask_rows().collect(),
            fd_warning_mask: fd_warning.map(|w| w.chunks(s.n_shifts()).collect()),
        }
    }
}

/// Header row of shifts, first column of scales.
pub fn scalogram_table(s: &Scalogram) -> Table {
    let mut header = vec![String::from("scale")];
    header.extend(s.grid().shifts().iter().map(|t| num(*t)));
    let mut table = Table::new(header);
    for (scale, row) in s.grid().scales().iter().zip(s.rows()) {
        table.push(std::iter::once(*scale).chain(row.iter().copied()));
    }
    table
}

pub fn scalogram_bytes(s: &Scalogram, fd_warning: Option<&[bool]>, format: Format) -> Vec<u8> {
    match format {
        Format::Csv => scalogram_table(s).to_bytes(),
        Format::Json => json_bytes(&ScalogramJson::new(s, fd_warning)),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn numbers_round_trip() {
        for x in [0.0, 1.0, -0.1, 1.2, 12.0, 1e-300, 11.526918393794, f64::MAX, 5e-324] {
            assert_eq!(num(x).parse::<f64>().unwrap(), x);
        }
        assert_eq!(num(1.2), "1.2");
        assert_eq!(num(12.0), "12.0");
    }

    #[test]
    fn table_layout() {
        let mut t = Table::new(["t", "value"]);
        t.push([0.5, -1.0]);
        assert_eq!(String::from_utf8(t.to_bytes()).unwrap(), "t,value\n0.5,-1.0\n");
    }
}
