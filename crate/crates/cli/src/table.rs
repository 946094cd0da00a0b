//! Headered CSV files: reading with located errors, writing with a
//! provenance comment line.

use std::fs::File;
use std::io::{BufWriter, Write};
use std::path::{Path, PathBuf};

use chrono::{DateTime, NaiveDateTime};
use csv::StringRecord;
use serde::Serialize;

use crate::error::{CliError, Result};

pub const VERSION: &str = env!("CARGO_PKG_VERSION");

/// A whole CSV file held in memory.
pub struct Table {
    path: PathBuf,
    headers: Vec<String>,
    rows: Vec<StringRecord>,
}

impl Table {
    /// Lines starting with `#` are skipped.
    pub fn read(path: &Path) -> Result<Table> {
        let file = File::open(path).map_err(CliError::io(path))?;
        let mut rdr = csv::ReaderBuilder::new()
            .comment(Some(b'#'))
            .trim(csv::Trim::All)
            .from_reader(file);
        let data_err = |e: csv::Error| CliError::Data(format!("{}: {e}", path.display()));
        let headers = rdr
            .headers()
            .map_err(data_err)?
            .iter()
            .map(str::to_owned)
            .collect();
        let rows = rdr
            .records()
            .collect::<Result<Vec<_>, _>>()
            .map_err(data_err)?;
        Ok(Table {
            path: path.to_path_buf(),
            headers,
            rows,
        })
    }

    pub fn path(&self) -> &Path {
        &self.path
    }

    pub fn len(&self) -> usize {
        self.rows.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rows.is_empty()
    }

    pub fn headers(&self) -> &[String] {
        &self.headers
    }

    pub fn record(&self, row: usize) -> &StringRecord {
        &self.rows[row]
    }

    pub fn find(&self, name: &str) -> Option<usize> {
        self.headers.iter().position(|h| h == name)
    }

    /// Index of a required column.
    pub fn column(&self, name: &str) -> Result<usize> {
        self.find(name).ok_or_else(|| {
            CliError::Data(format!("{}: missing column `{name}`", self.path.display()))
        })
    }

    fn line(&self, row: usize) -> u64 {
        self.rows[row].position().map_or(0, |p| p.line())
    }

    pub fn row_error(&self, row: usize, msg: impl std::fmt::Display) -> CliError {
        CliError::Data(format!("{}:{}: {msg}", self.path.display(), self.line(row)))
    }

    pub fn cell_error(&self, row: usize, col: usize, msg: impl std::fmt::Display) -> CliError {
        self.row_error(row, format!("column `{}`: {msg}", self.headers[col]))
    }

    pub fn str(&self, row: usize, col: usize) -> &str {
        self.rows[row].get(col).unwrap_or("")
    }

    pub fn f64(&self, row: usize, col: usize) -> Result<f64> {
        self.opt_f64(row, col)?
            .ok_or_else(|| self.cell_error(row, col, "value is required"))
    }

    /// An empty cell reads as `None`.
    pub fn opt_f64(&self, row: usize, col: usize) -> Result<Option<f64>> {
        let s = self.str(row, col);
        if s.is_empty() {
            return Ok(None);
        }
        match s.parse::<f64>() {
            Ok(v) if v.is_finite() => Ok(Some(v)),
            _ => Err(self.cell_error(row, col, format!("`{s}` is not a finite number"))),
        }
    }

    pub fn time(&self, row: usize, col: usize) -> Result<i64> {
        let s = self.str(row, col);
        parse_time(s)
            .ok_or_else(|| self.cell_error(row, col, format!("`{s}` is not an ISO 8601 time")))
    }
}

/// Seconds since the epoch. Accepts RFC 3339 and zone-less `YYYY-MM-DDTHH:MM:SS` (read as UTC).
pub fn parse_time(s: &str) -> Option<i64> {
    if let Ok(t) = DateTime::parse_from_rfc3339(s) {
        return Some(t.timestamp());
    }
    ["%Y-%m-%dT%H:%M:%S", "%Y-%m-%d %H:%M:%S"]
        .iter()
        .find_map(|f| NaiveDateTime::parse_from_str(s, f).ok())
        .map(|t| t.and_utc().timestamp())
}

pub fn format_time(t: i64) -> String {
    match DateTime::from_timestamp(t, 0) {
        Some(d) => d.format("%Y-%m-%dT%H:%M:%SZ").to_string(),
        None => t.to_string(),
    }
}

pub fn fmt(v: f64) -> String {
    v.to_string()
}

pub fn fmt_opt(v: Option<f64>) -> String {
    v.map(fmt).unwrap_or_default()
}

/// CSV writer whose file starts with `# seaflux <version> seed=<seed>`.
pub struct CsvOut {
    path: PathBuf,
    w: csv::Writer<BufWriter<File>>,
    rows: usize,
}

impl CsvOut {
    pub fn create(path: &Path, columns: &[&str], seed: u64) -> Result<CsvOut> {
        let file = File::create(path).map_err(CliError::io(path))?;
        let mut buf = BufWriter::new(file);
        writeln!(buf, "# seaflux {VERSION} seed={seed}").map_err(CliError::io(path))?;
        let mut w = csv::Writer::from_writer(buf);
        w.write_record(columns)
            .map_err(|e| CliError::Data(format!("{}: {e}", path.display())))?;
        Ok(CsvOut {
            path: path.to_path_buf(),
            w,
            rows: 0,
        })
    }

    fn err(&self, e: csv::Error) -> CliError {
        CliError::Data(format!("{}: {e}", self.path.display()))
    }

    pub fn row<I, S>(&mut self, fields: I) -> Result<()>
    where
        I: IntoIterator<Item = S>,
        S: AsRef<[u8]>,
    {
        self.w.write_record(fields).map_err(|e| self.err(e))?;
        self.rows += 1;
        Ok(())
    }

    /// Flushes and returns the number of data rows written.
    pub fn finish(mut self) -> Result<usize> {
        self.w.flush().map_err(CliError::io(&self.path))?;
        Ok(self.rows)
    }
}

/// Pretty JSON with a trailing newline.
pub fn write_json<T: Serialize>(path: &Path, value: &T) -> Result<()> {
    let mut text = serde_json::to_string_pretty(value).expect("manifest serializes");
    text.push('\n');
    std::fs::write(path, text).map_err(CliError::io(path))
}
