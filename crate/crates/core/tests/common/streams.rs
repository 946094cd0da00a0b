//! Seeded random record streams dense enough to exercise every window edge.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use seaflux::{BuoyObservation, GeoTimeRecord};

pub struct Streams {
    pub sar: Vec<GeoTimeRecord>,
    pub buoy: Vec<BuoyObservation>,
    pub precip: Vec<GeoTimeRecord>,
    pub humidity: Vec<GeoTimeRecord>,
}

const KM_PER_DEG: f64 = 111.19;

fn near(rng: &mut ChaCha8Rng, t: i64, lat: f64, lon: f64, dt: i64, km: f64) -> (i64, f64, f64) {
    let r = km * rng.random::<f64>().sqrt();
    let a = rng.random_range(0.0..std::f64::consts::TAU);
    let dlat = r * a.sin() / KM_PER_DEG;
    let dlon = r * a.cos() / (KM_PER_DEG * lat.to_radians().cos());
    (t + rng.random_range(-dt..=dt), lat + dlat, lon + dlon)
}

fn scalar(t: i64, lat: f64, lon: f64, value: f64, id: &str) -> GeoTimeRecord {
    GeoTimeRecord {
        time: t,
        lat,
        lon,
        value,
        source_id: id.into(),
    }
}

/// `n` records per source around a cluster of 25 moorings.
pub fn generate(seed: u64, n: usize) -> Streams {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let moorings: Vec<(String, f64, f64)> = (0..25)
        .map(|i| {
            (
                format!("{}", 46000 + i),
                rng.random_range(30.0..32.0),
                rng.random_range(-121.0..-118.0),
            )
        })
        .collect();
    let span = (n as i64) * 600;
    let buoy: Vec<BuoyObservation> = (0..n)
        .map(|_| {
            let (id, lat, lon) = &moorings[rng.random_range(0..moorings.len())];
            let tair = rng.random_range(8.0..22.0f64);
            BuoyObservation {
                time: rng.random_range(0..span),
                buoy_id: id.clone(),
                lat: *lat,
                lon: *lon,
                wind_ms: rng.random_range(0.5..18.0),
                anemometer_height_m: rng.random_range(3.0..5.0),
                tair_c: tair,
                tsea_c: tair + rng.random_range(-3.0..3.0),
                pres_hpa: rng.random_range(995.0..1030.0),
                hs_m: Some(rng.random_range(0.3..4.0)),
                tp_s: if rng.random_bool(0.8) {
                    Some(rng.random_range(4.0..14.0))
                } else {
                    None
                },
            }
        })
        .collect();
    // mostly aligned with "its" buoy record, some aimed at a random one
    // (competing candidates), the rest uniform clutter
    let pick = |rng: &mut ChaCha8Rng, i: usize, dt: i64, km: f64| {
        let u: f64 = rng.random();
        let b = if u < 0.85 {
            &buoy[i % buoy.len()]
        } else if u < 0.95 {
            &buoy[rng.random_range(0..buoy.len())]
        } else {
            return (
                rng.random_range(0..span),
                rng.random_range(29.5..32.5),
                rng.random_range(-121.5..-117.5),
            );
        };
        near(rng, b.time, b.lat, b.lon, dt, km)
    };
    let sar = (0..n)
        .map(|i| {
            let (t, lat, lon) = pick(&mut rng, i, 350, 0.3);
            scalar(t, lat, lon, rng.random_range(0.0..20.0), "sar")
        })
        .collect();
    let precip = (0..n)
        .map(|i| {
            let (t, lat, lon) = pick(&mut rng, i, 1000, 4.5);
            let v = if rng.random_bool(0.6) {
                0.0
            } else {
                rng.random_range(0.0..15.0)
            };
            scalar(t, lat, lon, v, "cmorph")
        })
        .collect();
    let humidity = (0..n)
        .map(|i| {
            let (t, lat, lon) = pick(&mut rng, i, 2000, 28.0);
            scalar(t, lat, lon, rng.random_range(0.004..0.02), "merra2")
        })
        .collect();
    Streams {
        sar,
        buoy,
        precip,
        humidity,
    }
}
