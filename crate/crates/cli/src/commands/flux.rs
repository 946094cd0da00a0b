//! Bulk fluxes for every row of a matchup-like file, driven by one wind column.

use std::path::Path;

use log::{info, warn};
use rayon::prelude::*;
use seaflux::{compute_fluxes_with, FluxResult, MetSample};
use serde::Serialize;

use super::correct::{CORRECTED_COLUMN, SPLIT_COLUMN};
use super::Provenance;
use crate::config::PipelineConfig;
use crate::error::{CliError, Result};
use crate::table::{fmt, fmt_opt, write_json, CsvOut, Table};

/// `(wind column, label)` of the three runs made by `run-all`.
pub const STANDARD_RUNS: [(&str, &str); 3] = [
    ("buoy_wind10_ms", "buoy"),
    ("sar_wind10_ms", "sar"),
    (CORRECTED_COLUMN, "corrected"),
];

pub const FLUX_COLUMNS: [&str; 14] = [
    "time",
    "buoy_id",
    "split",
    "wind_ms",
    "converged",
    "iterations",
    "u_star",
    "tau",
    "cd1000",
    "h_sensible",
    "e_latent",
    "obukhov_l",
    "z0",
    "u10n",
];

pub fn file_name(label: &str) -> String {
    format!("fluxes_{label}.csv")
}

/// Default label for a wind column: the short name used by `run-all`, or the
/// column itself.
pub fn default_label(column: &str) -> &str {
    STANDARD_RUNS
        .iter()
        .find(|(c, _)| *c == column)
        .map_or(column, |(_, l)| l)
}

#[derive(Debug, Serialize)]
pub struct FluxManifest {
    #[serde(flatten)]
    pub provenance: Provenance,
    pub input: String,
    pub wind_column: String,
    pub rows_written: usize,
    pub converged: usize,
    pub not_converged: usize,
}

pub fn run(
    cfg: &PipelineConfig,
    input: &Path,
    wind_column: &str,
    label: &str,
) -> Result<FluxManifest> {
    let t = Table::read(input)?;
    let Some(cw) = t.find(wind_column) else {
        return Err(CliError::Usage(format!(
            "{} has no wind column `{wind_column}` (columns: {})",
            input.display(),
            t.headers().join(", ")
        )));
    };
    let c = |n| t.column(n);
    let (ct, cb, cta, cts, cp, cq, chs, ctp) = (
        c("time")?,
        c("buoy_id")?,
        c("tair_c")?,
        c("tsea_c")?,
        c("pres_hpa")?,
        c("q10_kgkg")?,
        c("hs_m")?,
        c("tp_s")?,
    );
    let csplit = t.find(SPLIT_COLUMN);

    let results: Vec<FluxResult> = (0..t.len())
        .into_par_iter()
        .map(|i| {
            let s = MetSample {
                u_wind: t.f64(i, cw)?,
                z_u: cfg.heights.wind_m,
                t_air: t.f64(i, cta)?,
                z_t: cfg.heights.scalar_m,
                t_sea: t.f64(i, cts)?,
                p_air: t.f64(i, cp)?,
                q_air: t.f64(i, cq)?,
                hs: t.opt_f64(i, chs)?,
                tp: t.opt_f64(i, ctp)?,
            };
            compute_fluxes_with(&s, &cfg.solver).map_err(|e| t.row_error(i, e))
        })
        .collect::<Result<_>>()?;

    let out = cfg.out_dir.join(file_name(label));
    let mut w = CsvOut::create(&out, &FLUX_COLUMNS, cfg.seed)?;
    for (i, r) in results.iter().enumerate() {
        w.row([
            t.str(i, ct).to_string(),
            t.str(i, cb).to_string(),
            csplit.map_or("", |c| t.str(i, c)).to_string(),
            fmt(t.f64(i, cw)?),
            r.converged.to_string(),
            r.iterations.to_string(),
            fmt(r.u_star),
            fmt(r.tau),
            fmt(r.cd1000),
            fmt(r.h_sensible),
            fmt(r.e_latent),
            fmt_opt(r.obukhov_l),
            fmt(r.z0),
            fmt(r.u10n),
        ])?;
    }
    let rows_written = w.finish()?;
    let converged = results.iter().filter(|r| r.converged).count();
    if converged < rows_written {
        warn!(
            "{}: {} rows did not converge",
            out.display(),
            rows_written - converged
        );
    }
    let manifest = FluxManifest {
        provenance: Provenance::new(cfg.seed),
        input: input
            .file_name()
            .map_or_else(String::new, |n| n.to_string_lossy().into_owned()),
        wind_column: wind_column.to_string(),
        rows_written,
        converged,
        not_converged: rows_written - converged,
    };
    write_json(&out.with_extension("json"), &manifest)?;
    info!("{rows_written} flux rows written to {}", out.display());
    Ok(manifest)
}
