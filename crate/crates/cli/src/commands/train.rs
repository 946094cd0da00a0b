//! Train the wind corrector on `matchups.csv`.

use std::path::Path;

use log::info;
use seaflux::save_model;
use serde::{Deserialize, Serialize};

use super::{features, mlp_error, Provenance};
use crate::config::PipelineConfig;
use crate::error::Result;
use crate::table::{fmt, write_json, CsvOut, Table};

pub const MODEL_FILE: &str = "model.json";
pub const HISTORY_FILE: &str = "history.csv";
pub const SPLIT_FILE: &str = "split.json";

/// Which matchup rows (0-based, file order) trained and which are held out.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SplitManifest {
    #[serde(flatten)]
    pub provenance: Provenance,
    pub rows: usize,
    pub train_fraction: f64,
    pub n_train: usize,
    pub n_test: usize,
    pub epochs: usize,
    pub final_train_mse: f64,
    pub train: Vec<usize>,
    pub test: Vec<usize>,
}

pub fn run(cfg: &PipelineConfig, matchups: &Path) -> Result<SplitManifest> {
    let t = Table::read(matchups)?;
    let data = features(&t)?;
    let tc = cfg.train_config();
    let trained = seaflux::train(&data, &tc).map_err(mlp_error)?;

    let model_path = cfg.out_dir.join(MODEL_FILE);
    save_model(&trained.model, &model_path).map_err(mlp_error)?;

    let mut h = CsvOut::create(
        &cfg.out_dir.join(HISTORY_FILE),
        &["epoch", "train_mse"],
        cfg.seed,
    )?;
    for (i, mse) in trained.history.iter().enumerate() {
        h.row([(i + 1).to_string(), fmt(*mse)])?;
    }
    h.finish()?;

    let mut split = trained.split;
    split.train.sort_unstable();
    split.test.sort_unstable();
    let manifest = SplitManifest {
        provenance: Provenance::new(cfg.seed),
        rows: data.len(),
        train_fraction: tc.train_fraction,
        n_train: split.train.len(),
        n_test: split.test.len(),
        epochs: tc.epochs,
        final_train_mse: trained.history.last().copied().unwrap_or(f64::NAN),
        train: split.train,
        test: split.test,
    };
    write_json(&cfg.out_dir.join(SPLIT_FILE), &manifest)?;
    info!(
        "trained on {} rows, {} held out; final train mse {}",
        manifest.n_train, manifest.n_test, manifest.final_train_mse
    );
    Ok(manifest)
}
