//! One module per pipeline verb. Every verb reads its inputs from files and
//! writes its outputs (plus a JSON manifest) into the output directory.

pub mod correct;
pub mod flux;
pub mod matchup;
pub mod report;
pub mod train;

use seaflux::FeatureVector;
use serde::{Deserialize, Serialize};

use crate::config::PipelineConfig;
use crate::error::{CliError, Result};
use crate::table::{Table, VERSION};

/// Identifies the tool and seed in every manifest.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Provenance {
    pub tool: String,
    pub version: String,
    pub seed: u64,
}

impl Provenance {
    pub fn new(seed: u64) -> Self {
        Provenance {
            tool: "seaflux".into(),
            version: VERSION.into(),
            seed,
        }
    }
}

/// Network inputs and buoy target of every matchup row.
pub(crate) fn features(t: &Table) -> Result<Vec<(FeatureVector, f64)>> {
    let (cw, cs, cp, cb) = (
        t.column("sar_wind10_ms")?,
        t.column("stability")?,
        t.column("rain_mmhr")?,
        t.column("buoy_wind10_ms")?,
    );
    (0..t.len())
        .map(|i| {
            let f = FeatureVector {
                sar_wind: t.f64(i, cw)?,
                stability: t.f64(i, cs)?,
                precip: t.f64(i, cp)?,
            };
            Ok((f, t.f64(i, cb)?))
        })
        .collect()
}

/// Summary of one `run-all`.
#[derive(Debug, Serialize)]
pub struct RunSummary {
    #[serde(flatten)]
    pub provenance: Provenance,
    pub matchups: usize,
    pub train_rows: usize,
    pub test_rows: usize,
    pub flux_rows: usize,
    pub flux_not_converged: [usize; 3],
    pub report_rows_used: usize,
}

pub const RUN_FILE: &str = "run.json";

/// Full chain: matchup, train, correct, three flux runs, report.
pub fn run_all(cfg: &PipelineConfig) -> Result<RunSummary> {
    std::fs::create_dir_all(&cfg.out_dir).map_err(CliError::io(&cfg.out_dir))?;
    let m = matchup::run(cfg)?;
    let matchups = cfg.out_dir.join(matchup::MATCHUPS_FILE);
    let split = train::run(cfg, &matchups)?;
    correct::run(
        cfg,
        &matchups,
        &cfg.out_dir.join(train::MODEL_FILE),
        &cfg.out_dir.join(train::SPLIT_FILE),
    )?;
    let corrected = cfg.out_dir.join(correct::CORRECTED_FILE);
    let mut not_converged = [0; 3];
    let mut flux_rows = 0;
    for (k, (column, label)) in flux::STANDARD_RUNS.iter().enumerate() {
        let f = flux::run(cfg, &corrected, column, label)?;
        not_converged[k] = f.not_converged;
        flux_rows = f.rows_written;
    }
    let paths = flux::STANDARD_RUNS.map(|(_, label)| cfg.out_dir.join(flux::file_name(label)));
    let r = report::run(cfg, &paths[0], &paths[1], &paths[2])?;

    let summary = RunSummary {
        provenance: Provenance::new(cfg.seed),
        matchups: m.rows_written,
        train_rows: split.n_train,
        test_rows: split.n_test,
        flux_rows,
        flux_not_converged: not_converged,
        report_rows_used: r.rows_used,
    };
    crate::table::write_json(&cfg.out_dir.join(RUN_FILE), &summary)?;
    Ok(summary)
}

pub(crate) fn mlp_error(e: seaflux::MlpError) -> CliError {
    match e {
        seaflux::MlpError::Validation { .. } => CliError::Usage(e.to_string()),
        other => CliError::Data(other.to_string()),
    }
}
