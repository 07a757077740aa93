//! Flat numeric tables and their CSV / JSON renderings.

use std::fs;
use std::io::{self, Write};
use std::path::{Path, PathBuf};

use crate::error::CliError;

#[derive(Debug, Clone, PartialEq)]
pub struct Table {
    pub columns: Vec<&'static str>,
    pub rows: Vec<Vec<f64>>,
}

impl Table {
    pub fn new(columns: &[&'static str]) -> Self {
        Table {
            columns: columns.to_vec(),
            rows: Vec::new(),
        }
    }

    pub fn push(&mut self, row: Vec<f64>) {
        debug_assert_eq!(row.len(), self.columns.len());
        self.rows.push(row);
    }

    pub fn to_csv(&self) -> String {
        let mut out = self.columns.join(",");
        out.push('\n');
        for row in &self.rows {
            let cells: Vec<String> = row.iter().map(|&v| sci(v)).collect();
            out.push_str(&cells.join(","));
            out.push('\n');
        }
        out
    }

    /// `{"meta": …, "rows": [{column: value, …}, …]}` with one row per line.
    pub fn to_json(&self, meta: &serde_json::Value) -> String {
        let mut out = String::from("{\"meta\":");
        out.push_str(&meta.to_string());
        out.push_str(",\"rows\":[");
        for (i, row) in self.rows.iter().enumerate() {
            out.push_str(if i == 0 { "\n" } else { ",\n" });
            let fields: Vec<String> = self
                .columns
                .iter()
                .zip(row)
                .map(|(c, &v)| {
                    let v = if v.is_finite() { sci(v) } else { "null".into() };
                    format!("\"{c}\":{v}")
                })
                .collect();
            out.push('{');
            out.push_str(&fields.join(","));
            out.push('}');
        }
        out.push_str("\n]}\n");
        out
    }
}

/// C-style `%.12e`: twelve fraction digits and an exponent of at least two digits.
pub fn sci(v: f64) -> String {
    if v.is_nan() {
        return "nan".into();
    }
    if v.is_infinite() {
        return if v > 0.0 { "inf".into() } else { "-inf".into() };
    }
    let s = format!("{v:.12e}");
    let (mantissa, exp) = s.split_once('e').expect("exponent in {:e} output");
    let exp: i32 = exp.parse().expect("integer exponent");
    let sign = if exp < 0 { '-' } else { '+' };
    format!("{mantissa}e{sign}{:02}", exp.abs())
}

/// Writes to `path` through a sibling temporary file, so a failed write
/// never leaves a truncated file behind.
pub fn write_atomic(path: &Path, contents: &str) -> Result<(), CliError> {
    let mut tmp = path.as_os_str().to_owned();
    tmp.push(".partial");
    let tmp = PathBuf::from(tmp);
    let io_err = |source| CliError::Io {
        path: path.to_path_buf(),
        source,
    };
    let result = fs::write(&tmp, contents).and_then(|()| fs::rename(&tmp, path));
    if let Err(e) = result {
        let _ = fs::remove_file(&tmp);
        return Err(io_err(e));
    }
    Ok(())
}

pub fn write_stdout(contents: &str) -> Result<(), CliError> {
    let mut out = io::stdout().lock();
    out.write_all(contents.as_bytes())
        .and_then(|()| out.flush())
        .map_err(|source| CliError::Io {
            path: PathBuf::from("<stdout>"),
            source,
        })
}
