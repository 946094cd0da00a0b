//! Apply a trained corrector to every matchup row.

use std::path::Path;

use seaflux::load_model;

use super::train::SplitManifest;
use super::{features, mlp_error};
use crate::config::PipelineConfig;
use crate::error::{CliError, Result};
use crate::table::{fmt, CsvOut, Table};

pub const CORRECTED_FILE: &str = "corrected.csv";
pub const CORRECTED_COLUMN: &str = "sar_wind_corrected_ms";
pub const SPLIT_COLUMN: &str = "split";

/// Writes the matchup columns followed by the corrected wind (never below
/// zero) and the split each row belongs to. Returns the rows written.
pub fn run(cfg: &PipelineConfig, matchups: &Path, model: &Path, split: &Path) -> Result<usize> {
    let t = Table::read(matchups)?;
    let m = load_model(model).map_err(mlp_error)?;
    let text = std::fs::read_to_string(split).map_err(CliError::io(split))?;
    let s: SplitManifest = serde_json::from_str(&text)
        .map_err(|e| CliError::Data(format!("{}: {e}", split.display())))?;
    if s.rows != t.len() {
        return Err(CliError::Data(format!(
            "{} describes {} rows but {} has {}",
            split.display(),
            s.rows,
            t.path().display(),
            t.len()
        )));
    }
    let mut side = vec![""; t.len()];
    for (&i, label) in s
        .train
        .iter()
        .map(|i| (i, "train"))
        .chain(s.test.iter().map(|i| (i, "test")))
    {
        match side.get_mut(i) {
            Some(slot) if slot.is_empty() => *slot = label,
            _ => {
                return Err(CliError::Data(format!(
                    "{}: row index {i} is out of range or listed twice",
                    split.display()
                )))
            }
        }
    }

    if let Some(i) = side.iter().position(|s| s.is_empty()) {
        return Err(CliError::Data(format!(
            "{}: row {i} is in neither split",
            split.display()
        )));
    }

    // Carry every input column except ones this stage produces.
    let keep: Vec<usize> = (0..t.headers().len())
        .filter(|&c| ![CORRECTED_COLUMN, SPLIT_COLUMN].contains(&t.headers()[c].as_str()))
        .collect();
    let mut columns: Vec<&str> = keep.iter().map(|&c| t.headers()[c].as_str()).collect();
    columns.extend([CORRECTED_COLUMN, SPLIT_COLUMN]);

    let data = features(&t)?;
    let mut w = CsvOut::create(&cfg.out_dir.join(CORRECTED_FILE), &columns, cfg.seed)?;
    for (i, (f, _)) in data.iter().enumerate() {
        let corrected = m.forward(f).max(0.0);
        let mut row: Vec<String> = keep.iter().map(|&c| t.str(i, c).to_string()).collect();
        row.push(fmt(corrected));
        row.push(side[i].to_string());
        w.row(row)?;
    }
    w.finish()
}
