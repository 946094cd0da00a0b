//! Synthetic input streams with a known SAR wind error, for exercising the
//! whole pipeline without real archives.
//!
//! Every buoy record gets exactly one SAR pixel, one rain record and one
//! humidity record inside the default windows, so `n` buoy records collocate
//! into `n` matchups. SAR winds are `0.93·truth − 0.3 + 0.15·rain + N(0, 1)`,
//! floored at zero.

use std::path::Path;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, Normal};
use seaflux::{saturation_specific_humidity, BuoyObservation, GeoTimeRecord};

use crate::config::InputPaths;
use crate::error::Result;
use crate::table::{fmt, fmt_opt, format_time, CsvOut};

const KM_PER_DEG: f64 = 111.194_926_644_558_74;
/// 2021-01-01T00:00:00Z
const START: i64 = 1_609_459_200;
const SPACING_S: i64 = 1800;
/// Coefficient and roughness length of the buoy height conversion, inverted here.
const BUOY_PROFILE: (f64, f64) = (8.87403, 0.0016);

#[derive(Debug, Clone, Copy)]
pub struct SynthConfig {
    pub matchups: usize,
    pub buoys: usize,
    pub seed: u64,
}

impl Default for SynthConfig {
    fn default() -> Self {
        SynthConfig {
            matchups: 3000,
            buoys: 25,
            seed: 0,
        }
    }
}

#[derive(Debug, Clone, Default)]
pub struct SynthData {
    pub sar: Vec<GeoTimeRecord>,
    pub buoy: Vec<BuoyObservation>,
    pub precip: Vec<GeoTimeRecord>,
    pub humidity: Vec<GeoTimeRecord>,
    /// 10 m truth wind of each buoy record.
    pub truth: Vec<f64>,
}

/// Moves `(lat, lon)` by `d` km on bearing `theta` (flat-earth, small `d`).
fn offset(lat: f64, lon: f64, d: f64, theta: f64) -> (f64, f64) {
    let dlat = d * theta.cos() / KM_PER_DEG;
    let dlon = d * theta.sin() / (KM_PER_DEG * lat.to_radians().cos());
    (lat + dlat, lon + dlon)
}

/// `jitter` is (max seconds, max km) away from the buoy record.
fn point(
    rng: &mut ChaCha8Rng,
    lat: f64,
    lon: f64,
    t: i64,
    jitter: (i64, f64),
    value: f64,
    src: &str,
) -> GeoTimeRecord {
    let (dt, d) = jitter;
    let (la, lo) = offset(
        lat,
        lon,
        rng.random_range(0.0..d),
        rng.random_range(0.0..std::f64::consts::TAU),
    );
    GeoTimeRecord {
        time: t + rng.random_range(-dt..=dt),
        lat: la,
        lon: lo,
        value,
        source_id: src.to_string(),
    }
}

pub fn generate(cfg: &SynthConfig) -> SynthData {
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let nb = cfg.buoys.max(1);
    // Moorings hundreds of kilometres apart in mid latitudes.
    let moorings: Vec<(f64, f64, f64)> = (0..nb)
        .map(|j| {
            let lat = -40.0 + 80.0 * (j as f64 + 0.5) / nb as f64;
            let lon = -170.0 + ((j * 137) % 340) as f64;
            let z = [3.8, 4.1, 5.0][j % 3];
            (lat, lon, z)
        })
        .collect();
    let noise = Normal::new(0.0f64, 1.0).unwrap();
    let d_t = Normal::new(0.3f64, 1.5).unwrap();

    let mut out = SynthData::default();
    for i in 0..cfg.matchups {
        let j = i % nb;
        let (lat, lon, z) = moorings[j];
        let t = START + i as i64 * SPACING_S;

        let truth: f64 = rng.random_range(1.0..20.0);
        let t_sea: f64 = rng.random_range(5.0..28.0);
        let t_air = t_sea - d_t.sample(&mut rng).clamp(-5.0, 5.0);
        let pres: f64 = rng.random_range(1000.0..1025.0);
        let waves = rng.random_bool(0.6);
        let rain = if rng.random_bool(0.3) {
            rng.random_range(0.2..15.0)
        } else {
            0.0
        };
        let rh: f64 = rng.random_range(0.65..0.9);
        let q =
            rh * saturation_specific_humidity(t_air, pres).expect("synthetic air state in range");
        let sar_wind = (0.93 * truth - 0.3 + 0.15 * rain + noise.sample(&mut rng)).max(0.0);

        out.buoy.push(BuoyObservation {
            time: t,
            buoy_id: format!("SB{j:03}"),
            lat,
            lon,
            wind_ms: truth * (z / BUOY_PROFILE.1).ln() / BUOY_PROFILE.0,
            anemometer_height_m: z,
            tair_c: t_air,
            tsea_c: t_sea,
            pres_hpa: pres,
            hs_m: waves.then(|| rng.random_range(0.5..4.0)),
            tp_s: waves.then(|| rng.random_range(4.0..12.0)),
        });
        out.sar
            .push(point(&mut rng, lat, lon, t, (120, 0.1), sar_wind, "sar"));
        out.precip
            .push(point(&mut rng, lat, lon, t, (600, 2.0), rain, "precip"));
        out.humidity
            .push(point(&mut rng, lat, lon, t, (1200, 10.0), q, "humidity"));
        out.truth.push(truth);
    }
    out
}

fn write_points(path: &Path, value_column: &str, recs: &[GeoTimeRecord], seed: u64) -> Result<()> {
    let mut w = CsvOut::create(path, &["time_iso8601", "lat", "lon", value_column], seed)?;
    for r in recs {
        w.row([format_time(r.time), fmt(r.lat), fmt(r.lon), fmt(r.value)])?;
    }
    w.finish().map(drop)
}

/// Writes `sar.csv`, `buoy.csv`, `precip.csv` and `humidity.csv` into `dir`.
pub fn write_inputs(data: &SynthData, dir: &Path, seed: u64) -> Result<InputPaths> {
    std::fs::create_dir_all(dir).map_err(crate::error::CliError::io(dir))?;
    let paths = InputPaths {
        sar: dir.join("sar.csv"),
        buoy: dir.join("buoy.csv"),
        precip: dir.join("precip.csv"),
        humidity: dir.join("humidity.csv"),
    };
    write_points(&paths.sar, "wind10_ms", &data.sar, seed)?;
    write_points(&paths.precip, "rain_mmhr", &data.precip, seed)?;
    write_points(&paths.humidity, "q10_kgkg", &data.humidity, seed)?;
    let mut w = CsvOut::create(
        &paths.buoy,
        &[
            "time_iso8601",
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
        ],
        seed,
    )?;
    for b in &data.buoy {
        w.row([
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
        ])?;
    }
    w.finish()?;
    Ok(paths)
}
