//! Validation statistics, density grids and wind-binned profiles comparing
//! fluxes from raw and corrected SAR winds against fluxes from buoy winds.

use std::path::Path;

use seaflux::metrics::{binned_means, uniform_edges};
use seaflux::{bias, density_grid, rmse, std_dev, PairedSeries};
use serde::Serialize;

use super::Provenance;
use crate::config::PipelineConfig;
use crate::error::{CliError, Result};
use crate::table::{fmt, fmt_opt, write_json, CsvOut, Table};

pub const REPORT_DIR: &str = "report";
pub const STATS_FILE: &str = "stats.csv";
pub const PROFILE_FILE: &str = "profile_binned.csv";
pub const MANIFEST_FILE: &str = "report.json";

/// Compared quantities: the wind itself and the five fluxes.
pub const QUANTITIES: [&str; 6] = [
    "wind_ms",
    "u_star",
    "tau",
    "cd1000",
    "h_sensible",
    "e_latent",
];
pub const COMPARISONS: [&str; 2] = ["raw", "corrected"];

const WIND_BINS: usize = 50;
const FLUX_BINS: usize = 40;
/// Profiles use 1 m/s bins of buoy wind over this range.
const PROFILE_RANGE: (f64, f64) = (0.0, 25.0);

struct FluxTable {
    keys: Vec<(String, String)>,
    split: Vec<String>,
    converged: Vec<bool>,
    values: Vec<[f64; 6]>,
}

fn load(path: &Path) -> Result<FluxTable> {
    let t = Table::read(path)?;
    let (ct, cb, cs, cc) = (
        t.column("time")?,
        t.column("buoy_id")?,
        t.column("split")?,
        t.column("converged")?,
    );
    let cq = QUANTITIES.map(|q| t.column(q));
    let cq: Vec<usize> = cq.into_iter().collect::<Result<_>>()?;
    let mut out = FluxTable {
        keys: Vec::with_capacity(t.len()),
        split: Vec::with_capacity(t.len()),
        converged: Vec::with_capacity(t.len()),
        values: Vec::with_capacity(t.len()),
    };
    for i in 0..t.len() {
        out.keys
            .push((t.str(i, ct).to_string(), t.str(i, cb).to_string()));
        out.split.push(t.str(i, cs).to_string());
        out.converged.push(match t.str(i, cc) {
            "true" => true,
            "false" => false,
            other => return Err(t.cell_error(i, cc, format!("`{other}` is not true/false"))),
        });
        let mut v = [0.0; 6];
        for (k, &c) in cq.iter().enumerate() {
            v[k] = t.f64(i, c)?;
        }
        out.values.push(v);
    }
    Ok(out)
}

#[derive(Debug, Serialize)]
pub struct GridInfo {
    pub file: String,
    pub cells: usize,
    pub counted: u64,
    pub outside: u64,
}

#[derive(Debug, Serialize)]
pub struct ReportManifest {
    #[serde(flatten)]
    pub provenance: Provenance,
    pub rows_in: usize,
    /// `test` when the inputs carry a split column, otherwise `all`.
    pub split_filter: String,
    pub excluded_train: usize,
    pub excluded_not_converged: usize,
    pub rows_used: usize,
    pub stats_rows: usize,
    pub profile_rows: usize,
    pub grids: Vec<GridInfo>,
}

fn column(t: &FluxTable, used: &[usize], q: usize) -> Vec<f64> {
    used.iter().map(|&i| t.values[i][q]).collect()
}

fn grid_edges(q: usize, series: &[&[f64]]) -> Vec<f64> {
    if q == 0 {
        return uniform_edges(0.0, 25.0, WIND_BINS);
    }
    let all = series.iter().flat_map(|s| s.iter().copied());
    let (lo, hi) = all.fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), v| {
        (lo.min(v), hi.max(v))
    });
    let (lo, hi) = match (lo.is_finite(), hi > lo) {
        (false, _) => (0.0, 1.0),
        (true, false) => (lo - 0.5, hi + 0.5),
        (true, true) => (lo, hi),
    };
    uniform_edges(lo, hi, FLUX_BINS)
}

/// Writes into `<out>/report/`. The three inputs must describe the same rows
/// in the same order.
pub fn run(
    cfg: &PipelineConfig,
    buoy: &Path,
    raw: &Path,
    corrected: &Path,
) -> Result<ReportManifest> {
    let b = load(buoy)?;
    let r = load(raw)?;
    let c = load(corrected)?;
    if b.keys.len() != r.keys.len() || b.keys.len() != c.keys.len() {
        return Err(CliError::Data(format!(
            "flux files differ in length: {} / {} / {} rows",
            b.keys.len(),
            r.keys.len(),
            c.keys.len()
        )));
    }
    if let Some(i) = (0..b.keys.len()).find(|&i| b.keys[i] != r.keys[i] || b.keys[i] != c.keys[i]) {
        return Err(CliError::Data(format!(
            "flux files disagree at data row {}: ({}, {}) vs ({}, {}) vs ({}, {})",
            i + 1,
            b.keys[i].0,
            b.keys[i].1,
            r.keys[i].0,
            r.keys[i].1,
            c.keys[i].0,
            c.keys[i].1
        )));
    }

    let has_split = b.split.iter().any(|s| !s.is_empty());
    let in_split: Vec<usize> = (0..b.keys.len())
        .filter(|&i| !has_split || b.split[i] == "test")
        .collect();
    let used: Vec<usize> = in_split
        .iter()
        .copied()
        .filter(|&i| b.converged[i] && r.converged[i] && c.converged[i])
        .collect();

    let dir = cfg.out_dir.join(REPORT_DIR);
    std::fs::create_dir_all(&dir).map_err(CliError::io(&dir))?;

    let mut stats = CsvOut::create(
        &dir.join(STATS_FILE),
        &["quantity", "comparison", "n", "bias", "rmse", "std"],
        cfg.seed,
    )?;
    let mut grids = Vec::new();
    for (q, name) in QUANTITIES.iter().enumerate() {
        let reference = column(&b, &used, q);
        let tests = [column(&r, &used, q), column(&c, &used, q)];
        let edges = grid_edges(q, &[&reference, &tests[0], &tests[1]]);
        for (test, cmp) in tests.iter().zip(COMPARISONS) {
            let paired = PairedSeries::new(test.clone(), reference.clone()).ok();
            let m = paired.as_ref().map(|p| (bias(p), rmse(p), std_dev(p)));
            stats.row([
                name.to_string(),
                cmp.to_string(),
                paired.as_ref().map_or(0, |p| p.len()).to_string(),
                fmt_opt(m.map(|m| m.0)),
                fmt_opt(m.map(|m| m.1)),
                fmt_opt(m.map(|m| m.2)),
            ])?;

            let file = format!("density_{name}_{cmp}.csv");
            let mut w = CsvOut::create(
                &dir.join(&file),
                &["x_center", "y_center", "count"],
                cfg.seed,
            )?;
            let (mut counted, mut outside) = (0, 0);
            if let Some(p) = &paired {
                let g = density_grid(p, &edges, &edges)
                    .map_err(|e| CliError::Data(format!("{file}: {e}")))?;
                for (x, y, k) in g.cells() {
                    w.row([fmt(x), fmt(y), k.to_string()])?;
                }
                counted = g.total();
                outside = g.excluded;
            }
            let cells = w.finish()?;
            grids.push(GridInfo {
                file,
                cells,
                counted,
                outside,
            });
        }
    }
    let stats_rows = stats.finish()?;

    let keys = column(&b, &used, 0);
    let edges = uniform_edges(
        PROFILE_RANGE.0,
        PROFILE_RANGE.1,
        (PROFILE_RANGE.1 - PROFILE_RANGE.0) as usize,
    );
    let mut prof = CsvOut::create(
        &dir.join(PROFILE_FILE),
        &["quantity", "source", "bin_lo", "bin_hi", "n", "mean"],
        cfg.seed,
    )?;
    for (q, name) in QUANTITIES.iter().enumerate() {
        for (t, source) in [(&b, "buoy"), (&r, "raw"), (&c, "corrected")] {
            let values = column(t, &used, q);
            let bins = binned_means(&keys, &values, &edges)
                .map_err(|e| CliError::Data(format!("{PROFILE_FILE}: {e}")))?;
            for (k, (n, mean)) in bins.into_iter().enumerate() {
                prof.row([
                    name.to_string(),
                    source.to_string(),
                    fmt(edges[k]),
                    fmt(edges[k + 1]),
                    n.to_string(),
                    fmt_opt(mean),
                ])?;
            }
        }
    }
    let profile_rows = prof.finish()?;

    let manifest = ReportManifest {
        provenance: Provenance::new(cfg.seed),
        rows_in: b.keys.len(),
        split_filter: if has_split { "test" } else { "all" }.to_string(),
        excluded_train: b.keys.len() - in_split.len(),
        excluded_not_converged: in_split.len() - used.len(),
        rows_used: used.len(),
        stats_rows,
        profile_rows,
        grids,
    };
    write_json(&dir.join(MANIFEST_FILE), &manifest)?;
    Ok(manifest)
}

/// One row of `stats.csv`, for callers that read a report back.
#[derive(Debug, Clone, PartialEq)]
pub struct StatRow {
    pub quantity: String,
    pub comparison: String,
    pub n: usize,
    pub bias: Option<f64>,
    pub rmse: Option<f64>,
    pub std: Option<f64>,
}

pub fn read_stats(path: &Path) -> Result<Vec<StatRow>> {
    let t = Table::read(path)?;
    let c: Vec<usize> = ["quantity", "comparison", "n", "bias", "rmse", "std"]
        .iter()
        .map(|n| t.column(n))
        .collect::<Result<_>>()?;
    (0..t.len())
        .map(|i| {
            Ok(StatRow {
                quantity: t.str(i, c[0]).to_string(),
                comparison: t.str(i, c[1]).to_string(),
                n: t.str(i, c[2])
                    .parse()
                    .map_err(|_| t.cell_error(i, c[2], "not a count"))?,
                bias: t.opt_f64(i, c[3])?,
                rmse: t.opt_f64(i, c[4])?,
                std: t.opt_f64(i, c[5])?,
            })
        })
        .collect()
}
