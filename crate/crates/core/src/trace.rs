//! CSV trajectories and atomic file output.
//!
//! Columns: `t,theta,omega,u,xi,omega_m,u_m`. Numbers are written with nine
//! significant digits; the three mnesor columns hold the controller's inputs
//! and output in mnesor notation and are empty for the PD law.

use std::io::{Read, Write};
use std::path::Path;

use thiserror::Error;

use crate::control::MnesorInternals;
use crate::error::ParseError;
use crate::mnesor::{parse_mnesor, Mnesor};
use crate::sim::Sample;

pub const HEADER: [&str; 7] = ["t", "theta", "omega", "u", "xi", "omega_m", "u_m"];

#[derive(Debug, Error)]
pub enum TraceError {
    #[error("{0}")]
    Csv(#[from] csv::Error),
    #[error("{0}")]
    Io(#[from] std::io::Error),
    #[error("unexpected header {0:?}")]
    Header(Vec<String>),
    #[error("row {row}, column {column}: {message}")]
    Field {
        row: usize,
        column: &'static str,
        message: String,
    },
}

/// Nine significant digits in scientific notation.
pub fn format_number(x: f64) -> String {
    format!("{x:.8e}")
}

pub fn write_csv<W: Write>(out: W, samples: &[Sample]) -> Result<(), TraceError> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(HEADER)?;
    for s in samples {
        let (xi, om, um) = match s.mnesor {
            Some(m) => (m.xi.to_string(), m.omega.to_string(), m.u.to_string()),
            None => Default::default(),
        };
        w.write_record([
            format_number(s.t),
            format_number(s.theta),
            format_number(s.omega),
            format_number(s.u),
            xi,
            om,
            um,
        ])?;
    }
    w.flush()?;
    Ok(())
}

pub fn read_csv<R: Read>(input: R) -> Result<Vec<Sample>, TraceError> {
    let mut r = csv::Reader::from_reader(input);
    let header: Vec<String> = r.headers()?.iter().map(str::to_string).collect();
    if header != HEADER {
        return Err(TraceError::Header(header));
    }
    let mut samples = Vec::new();
    for (i, record) in r.records().enumerate() {
        let record = record?;
        let row = i + 1;
        let number = |col: usize| -> Result<f64, TraceError> {
            record[col]
                .parse()
                .map_err(|e: std::num::ParseFloatError| TraceError::Field {
                    row,
                    column: HEADER[col],
                    message: e.to_string(),
                })
        };
        let mnesor = |col: usize| -> Result<Option<Mnesor>, TraceError> {
            let text = &record[col];
            if text.is_empty() {
                return Ok(None);
            }
            parse_mnesor(text)
                .map(Some)
                .map_err(|e: ParseError| TraceError::Field {
                    row,
                    column: HEADER[col],
                    message: e.to_string(),
                })
        };
        let internals = match (mnesor(4)?, mnesor(5)?, mnesor(6)?) {
            (Some(xi), Some(omega), Some(u)) => Some(MnesorInternals { xi, omega, u }),
            (None, None, None) => None,
            _ => {
                return Err(TraceError::Field {
                    row,
                    column: "xi",
                    message: "mnesor columns must be all filled or all empty".into(),
                })
            }
        };
        samples.push(Sample {
            t: number(0)?,
            theta: number(1)?,
            omega: number(2)?,
            u: number(3)?,
            mnesor: internals,
        });
    }
    Ok(samples)
}

/// Writes `bytes` to a temporary file next to `path`, then renames it into
/// place, so readers never observe a partial file.
pub fn write_atomic(path: &Path, bytes: &[u8]) -> std::io::Result<()> {
    let dir = match path.parent() {
        Some(p) if !p.as_os_str().is_empty() => p,
        _ => Path::new("."),
    };
    let mut tmp = tempfile::NamedTempFile::new_in(dir)?;
    tmp.write_all(bytes)?;
    tmp.as_file().sync_all()?;
    tmp.persist(path).map_err(|e| e.error)?;
    Ok(())
}

pub fn save_csv(path: &Path, samples: &[Sample]) -> Result<(), TraceError> {
    let mut buf = Vec::new();
    write_csv(&mut buf, samples)?;
    write_atomic(path, &buf)?;
    Ok(())
}

pub fn load_csv(path: &Path) -> Result<Vec<Sample>, TraceError> {
    read_csv(std::fs::File::open(path)?)
}
