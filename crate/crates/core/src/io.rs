//! Plain-text tables and JSON sidecars.
//!
//! Numbers are written in scientific notation with enough digits for an exact
//! round trip, so identical inputs give byte-identical files.

use std::fs;
use std::io::{BufWriter, Write};
use std::path::{Path, PathBuf};

use serde_json::Value;

use crate::error::{Error, Result};
use crate::scalar::Real;

/// Round-trip formatting: 17 significant digits for `f64`, 9 for `f32`.
pub fn fmt_real<T: Real>(x: T) -> String {
    if x.is_nan() {
        return "NaN".into();
    }
    if x.is_infinite() {
        return if x > T::zero() { "inf".into() } else { "-inf".into() };
    }
    format!("{:.*e}", T::ROUND_TRIP_DIGITS - 1, x)
}

fn io_err(path: &Path, e: impl std::fmt::Display) -> Error {
    Error::InvalidParameter(format!("{}: {e}", path.display()))
}

/// Comma-separated table with a header row.
pub fn write_csv<T: Real>(path: &Path, header: &[String], rows: &[Vec<T>]) -> Result<()> {
    let file = fs::File::create(path).map_err(|e| io_err(path, e))?;
    let mut w = BufWriter::new(file);
    writeln!(w, "{}", header.join(",")).map_err(|e| io_err(path, e))?;
    for row in rows {
        let line: Vec<String> = row.iter().map(|&x| fmt_real(x)).collect();
        writeln!(w, "{}", line.join(",")).map_err(|e| io_err(path, e))?;
    }
    w.flush().map_err(|e| io_err(path, e))
}

/// Header and numeric rows of a table written by [`write_csv`].
pub fn read_csv(path: &Path) -> Result<(Vec<String>, Vec<Vec<f64>>)> {
    let text = fs::read_to_string(path).map_err(|e| io_err(path, e))?;
    let mut lines = text.lines().filter(|l| !l.trim().is_empty());
    let header: Vec<String> = lines
        .next()
        .ok_or_else(|| Error::InsufficientData(format!("{} is empty", path.display())))?
        .split(',')
        .map(|s| s.trim().to_string())
        .collect();
    let mut rows = Vec::new();
    for (i, line) in lines.enumerate() {
        let row = line
            .split(',')
            .map(|s| s.trim().parse::<f64>())
            .collect::<std::result::Result<Vec<_>, _>>()
            .map_err(|e| io_err(path, format!("row {}: {e}", i + 1)))?;
        if row.len() != header.len() {
            return Err(Error::DimensionMismatch { expected: header.len(), found: row.len() });
        }
        rows.push(row);
    }
    Ok((header, rows))
}

pub fn write_json(path: &Path, value: &Value) -> Result<()> {
    let text = serde_json::to_string_pretty(value).map_err(|e| io_err(path, e))?;
    fs::write(path, text + "\n").map_err(|e| io_err(path, e))
}

pub fn read_json(path: &Path) -> Result<Value> {
    let text = fs::read_to_string(path).map_err(|e| io_err(path, e))?;
    serde_json::from_str(&text).map_err(|e| io_err(path, e))
}

/// `dir/name.csv` → `dir/name.json`.
pub fn sidecar_path(path: &Path) -> PathBuf {
    path.with_extension("json")
}

/// JSON number for a finite value, `null` otherwise.
pub fn json_real<T: Real>(x: T) -> Value {
    serde_json::Number::from_f64(x.as_f64()).map(Value::Number).unwrap_or(Value::Null)
}
