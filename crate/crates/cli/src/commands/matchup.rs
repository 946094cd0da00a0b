//! Ingest the four input streams, collocate, write `matchups.csv`.

use std::path::{Path, PathBuf};

use log::{info, warn};
use seaflux::{build_matchups, BuoyObservation, GeoTimeRecord, MatchStats, MatchupRecord};
use serde::Serialize;

use super::Provenance;
use crate::config::PipelineConfig;
use crate::error::Result;
use crate::table::{fmt, fmt_opt, format_time, write_json, CsvOut, Table};

pub const MATCHUPS_FILE: &str = "matchups.csv";
pub const MANIFEST_FILE: &str = "matchups.json";

pub const MATCHUP_COLUMNS: [&str; 19] = [
    "time",
    "buoy_id",
    "lat",
    "lon",
    "wind_ms",
    "anemometer_height_m",
    "tair_c",
    "tsea_c",
    "pres_hpa",
    "hs_m",
    "tp_s",
    "sar_time",
    "sar_lat",
    "sar_lon",
    "sar_wind10_ms",
    "rain_mmhr",
    "q10_kgkg",
    "stability",
    "buoy_wind10_ms",
];

/// Reads a point stream: `time_iso8601, lat, lon, <value_column>`.
pub fn read_points(path: &Path, value_column: &str, source: &str) -> Result<Vec<GeoTimeRecord>> {
    let t = Table::read(path)?;
    let (ct, clat, clon, cv) = (
        t.column("time_iso8601")?,
        t.column("lat")?,
        t.column("lon")?,
        t.column(value_column)?,
    );
    (0..t.len())
        .map(|i| {
            let r = GeoTimeRecord {
                time: t.time(i, ct)?,
                lat: t.f64(i, clat)?,
                lon: t.f64(i, clon)?,
                value: t.f64(i, cv)?,
                source_id: source.to_string(),
            };
            r.validate().map_err(|e| t.row_error(i, e))?;
            Ok(r)
        })
        .collect()
}

pub fn read_buoy(path: &Path) -> Result<Vec<BuoyObservation>> {
    let t = Table::read(path)?;
    let c = |n| t.column(n);
    let cols = [
        c("time_iso8601")?,
        c("buoy_id")?,
        c("lat")?,
        c("lon")?,
        c("wind_ms")?,
        c("anemometer_height_m")?,
        c("tair_c")?,
        c("tsea_c")?,
        c("pres_hpa")?,
        c("hs_m")?,
        c("tp_s")?,
    ];
    (0..t.len())
        .map(|i| {
            let b = BuoyObservation {
                time: t.time(i, cols[0])?,
                buoy_id: t.str(i, cols[1]).to_string(),
                lat: t.f64(i, cols[2])?,
                lon: t.f64(i, cols[3])?,
                wind_ms: t.f64(i, cols[4])?,
                anemometer_height_m: t.f64(i, cols[5])?,
                tair_c: t.f64(i, cols[6])?,
                tsea_c: t.f64(i, cols[7])?,
                pres_hpa: t.f64(i, cols[8])?,
                hs_m: t.opt_f64(i, cols[9])?,
                tp_s: t.opt_f64(i, cols[10])?,
            };
            if b.buoy_id.is_empty() {
                return Err(t.cell_error(i, cols[1], "value is required"));
            }
            b.validate().map_err(|e| t.row_error(i, e))?;
            Ok(b)
        })
        .collect()
}

pub fn matchup_fields(m: &MatchupRecord) -> [String; 19] {
    let b = &m.buoy;
    [
        format_time(b.time),
        b.buoy_id.clone(),
        fmt(b.lat),
        fmt(b.lon),
        fmt(b.wind_ms),
        fmt(b.anemometer_height_m),
        fmt(b.tair_c),
        fmt(b.tsea_c),
        fmt(b.pres_hpa),
        fmt_opt(b.hs_m),
        fmt_opt(b.tp_s),
        format_time(m.sar_time),
        fmt(m.sar_lat),
        fmt(m.sar_lon),
        fmt(m.sar_wind_10m),
        fmt(m.precip),
        fmt(m.q10),
        m.stability.code().to_string(),
        fmt(m.buoy_wind_10m),
    ]
}

#[derive(Debug, Serialize)]
pub struct MatchupManifest {
    #[serde(flatten)]
    pub provenance: Provenance,
    pub inputs: InputNames,
    pub counts: MatchStats,
    pub rows_written: usize,
    pub warnings: Vec<String>,
}

/// File names only, so manifests do not depend on where a run happened.
#[derive(Debug, Serialize)]
pub struct InputNames {
    pub sar: String,
    pub buoy: String,
    pub precip: String,
    pub humidity: String,
}

fn file_name(p: &Path) -> String {
    p.file_name().map_or_else(
        || p.display().to_string(),
        |n| n.to_string_lossy().into_owned(),
    )
}

pub fn run(cfg: &PipelineConfig) -> Result<MatchupManifest> {
    let inp = &cfg.inputs;
    let sar = read_points(&inp.sar, "wind10_ms", "sar")?;
    let buoy = read_buoy(&inp.buoy)?;
    let precip = read_points(&inp.precip, "rain_mmhr", "precip")?;
    let humidity = read_points(&inp.humidity, "q10_kgkg", "humidity")?;
    info!(
        "read {} SAR, {} buoy, {} precip, {} humidity records",
        sar.len(),
        buoy.len(),
        precip.len(),
        humidity.len()
    );

    let (rows, counts) = build_matchups(sar, buoy, precip, humidity, &cfg.windows)
        .map_err(|e| crate::error::CliError::Data(e.to_string()))?;

    let out: PathBuf = cfg.out_dir.join(MATCHUPS_FILE);
    let mut w = CsvOut::create(&out, &MATCHUP_COLUMNS, cfg.seed)?;
    for m in &rows {
        w.row(matchup_fields(m))?;
    }
    let rows_written = w.finish()?;

    let mut warnings = Vec::new();
    if rows_written == 0 {
        warnings.push("no matchups survived the collocation windows".to_string());
        warn!("{}", warnings[0]);
    }
    let manifest = MatchupManifest {
        provenance: Provenance::new(cfg.seed),
        inputs: InputNames {
            sar: file_name(&inp.sar),
            buoy: file_name(&inp.buoy),
            precip: file_name(&inp.precip),
            humidity: file_name(&inp.humidity),
        },
        counts,
        rows_written,
        warnings,
    };
    write_json(&cfg.out_dir.join(MANIFEST_FILE), &manifest)?;
    info!("{rows_written} matchups written to {}", out.display());
    Ok(manifest)
}
