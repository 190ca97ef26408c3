//! Bit-exact serialization: the FGRID1 float-grid container, 16-bit PGM
//! export, and CSV comparison reports.

use std::fs;
use std::io::Write;
use std::path::Path;

use thiserror::Error;

use crate::analysis::{ComparisonReport, Mask};
use crate::grid::{Sinogram, SinogramGrid};
use crate::raster::Image;

const MAGIC: &str = "FGRID1\n";

/// Contents of a float-grid file.
#[derive(Debug, Clone, PartialEq)]
pub enum GridData {
    Image(Image),
    Sinogram(Sinogram),
    Mask(Mask),
}

#[derive(Debug, Error)]
pub enum IoError {
    #[error("malformed header: {0}")]
    MalformedHeader(String),
    #[error("truncated payload: expected {expected} values, found {found}")]
    TruncatedPayload { expected: usize, found: usize },
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("report contains a non-finite error value")]
    InvalidReport,
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

fn fmt17(v: f64) -> String {
    format!("{v:.16e}")
}

fn encode_axis(name: &str, values: &[f64]) -> String {
    let items: Vec<String> = values.iter().map(|&v| fmt17(v)).collect();
    format!("{name}={}\n", items.join(" "))
}

/// Serializes a grid to the FGRID1 byte format.
pub fn encode_grid(data: &GridData) -> Vec<u8> {
    let (rows, cols, kind, values, extra) = match data {
        GridData::Image(img) => (img.n, img.n, "image", img.values.clone(), String::new()),
        GridData::Mask(m) => (
            m.n,
            m.n,
            "mask",
            m.values.iter().map(|&b| f64::from(u8::from(b))).collect(),
            String::new(),
        ),
        GridData::Sinogram(s) => (
            s.grid.n_t(),
            s.grid.n_theta(),
            "sinogram",
            s.values.clone(),
            format!(
                "{}{}",
                encode_axis("t_values", &s.grid.t_values),
                encode_axis("theta_values", &s.grid.theta_values)
            ),
        ),
    };
    let mut out = Vec::with_capacity(values.len() * 8 + 128);
    out.extend_from_slice(MAGIC.as_bytes());
    out.extend_from_slice(format!("rows={rows} cols={cols} kind={kind}\n").as_bytes());
    out.extend_from_slice(extra.as_bytes());
    for v in &values {
        out.extend_from_slice(&v.to_le_bytes());
    }
    out
}

pub fn write_grid(path: &Path, data: &GridData) -> Result<(), IoError> {
    fs::write(path, encode_grid(data))?;
    Ok(())
}

fn take_line<'a>(bytes: &'a [u8], what: &str) -> Result<(&'a str, &'a [u8]), IoError> {
    let pos = bytes
        .iter()
        .position(|&b| b == b'\n')
        .ok_or_else(|| IoError::MalformedHeader(format!("missing {what} line")))?;
    let line = std::str::from_utf8(&bytes[..pos])
        .map_err(|_| IoError::MalformedHeader(format!("{what} line is not UTF-8")))?;
    Ok((line, &bytes[pos + 1..]))
}

fn parse_axis(line: &str, name: &str, expected: usize) -> Result<Vec<f64>, IoError> {
    let rest = line
        .strip_prefix(&format!("{name}="))
        .ok_or_else(|| IoError::MalformedHeader(format!("expected `{name}=` line")))?;
    let values: Vec<f64> = rest
        .split_whitespace()
        .map(|t| {
            t.parse::<f64>()
                .map_err(|_| IoError::MalformedHeader(format!("bad number {t:?} in {name}")))
        })
        .collect::<Result<_, _>>()?;
    if values.len() != expected {
        return Err(IoError::DimensionMismatch(format!(
            "{name} lists {} values, header says {expected}",
            values.len()
        )));
    }
    Ok(values)
}

/// Decodes an FGRID1 byte stream.
pub fn decode_grid(bytes: &[u8]) -> Result<GridData, IoError> {
    let rest = bytes
        .strip_prefix(MAGIC.as_bytes())
        .ok_or_else(|| IoError::MalformedHeader("bad magic".into()))?;
    let (header, mut rest) = take_line(rest, "header")?;

    let mut rows = None;
    let mut cols = None;
    let mut kind = None;
    for field in header.split_whitespace() {
        match field.split_once('=') {
            Some(("rows", v)) => rows = v.parse::<usize>().ok(),
            Some(("cols", v)) => cols = v.parse::<usize>().ok(),
            Some(("kind", v)) => kind = Some(v.to_string()),
            _ => return Err(IoError::MalformedHeader(format!("bad field {field:?}"))),
        }
    }
    let rows = rows.ok_or_else(|| IoError::MalformedHeader("missing rows".into()))?;
    let cols = cols.ok_or_else(|| IoError::MalformedHeader("missing cols".into()))?;
    let kind = kind.ok_or_else(|| IoError::MalformedHeader("missing kind".into()))?;

    let grid = if kind == "sinogram" {
        let (t_line, r) = take_line(rest, "t_values")?;
        let (theta_line, r) = take_line(r, "theta_values")?;
        rest = r;
        Some(SinogramGrid {
            t_values: parse_axis(t_line, "t_values", rows)?,
            theta_values: parse_axis(theta_line, "theta_values", cols)?,
        })
    } else {
        None
    };

    let expected = rows * cols;
    if rest.len() != expected * 8 {
        return Err(IoError::TruncatedPayload {
            expected,
            found: rest.len() / 8,
        });
    }
    let values: Vec<f64> = rest
        .chunks_exact(8)
        .map(|c| f64::from_le_bytes(c.try_into().unwrap()))
        .collect();

    match kind.as_str() {
        "image" => {
            if rows != cols {
                return Err(IoError::DimensionMismatch(format!(
                    "image must be square, got {rows}x{cols}"
                )));
            }
            Image::new(rows, values)
                .map(GridData::Image)
                .map_err(|e| IoError::DimensionMismatch(e.to_string()))
        }
        "mask" => {
            if rows != cols {
                return Err(IoError::DimensionMismatch(format!(
                    "mask must be square, got {rows}x{cols}"
                )));
            }
            let bools = values
                .iter()
                .map(|&v| {
                    if v == 0.0 {
                        Ok(false)
                    } else if v == 1.0 {
                        Ok(true)
                    } else {
                        Err(IoError::MalformedHeader(format!(
                            "mask value {v} is neither 0 nor 1"
                        )))
                    }
                })
                .collect::<Result<Vec<bool>, _>>()?;
            Ok(GridData::Mask(Mask {
                n: rows,
                values: bools,
            }))
        }
        "sinogram" => Sinogram::new(grid.unwrap(), values)
            .map(GridData::Sinogram)
            .map_err(|e| IoError::DimensionMismatch(e.to_string())),
        other => Err(IoError::MalformedHeader(format!("unknown kind {other:?}"))),
    }
}

pub fn read_grid(path: &Path) -> Result<GridData, IoError> {
    decode_grid(&fs::read(path)?)
}

/// Writes a binary 16-bit PGM (P5, maxval 65535, big-endian samples) with
/// linear min-max normalization. A constant image maps to all zeros. The
/// normalization bounds are recorded in a comment line.
pub fn export_pgm(img: &Image, path: &Path) -> Result<(), IoError> {
    let min = img.values.iter().cloned().fold(f64::INFINITY, f64::min);
    let max = img.values.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
    let span = max - min;
    let mut out = Vec::with_capacity(img.values.len() * 2 + 64);
    write!(
        out,
        "P5\n# min={} max={}\n{} {}\n65535\n",
        fmt17(min),
        fmt17(max),
        img.n,
        img.n
    )?;
    for &v in &img.values {
        let level = if span > 0.0 {
            ((v - min) / span * 65535.0).round() as u16
        } else {
            0
        };
        out.extend_from_slice(&level.to_be_bytes());
    }
    fs::write(path, out)?;
    Ok(())
}

pub const CSV_HEADER: &str = "phantom,n,n_theta,margin,err_analytic,err_discrete";

/// Renders comparison reports as CSV (header plus one row per report).
pub fn render_csv(reports: &[ComparisonReport]) -> Result<String, IoError> {
    let mut out = String::from(CSV_HEADER);
    out.push('\n');
    for r in reports {
        if !r.err_analytic.is_finite() || !r.err_discrete.is_finite() {
            return Err(IoError::InvalidReport);
        }
        out.push_str(&format!(
            "{},{},{},{},{},{}\n",
            r.phantom,
            r.n,
            r.n_theta,
            r.margin,
            fmt17(r.err_analytic),
            fmt17(r.err_discrete)
        ));
    }
    Ok(out)
}

pub fn export_csv(reports: &[ComparisonReport], path: &Path) -> Result<(), IoError> {
    fs::write(path, render_csv(reports)?)?;
    Ok(())
}
