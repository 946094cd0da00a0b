use criterion::{criterion_group, criterion_main, Criterion};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use seaflux::{build_matchups, BuoyObservation, GeoTimeRecord, MatchWindows};
use std::hint::black_box;

const DAY: i64 = 86_400;

fn points(rng: &mut ChaCha8Rng, n: usize, src: &str) -> Vec<GeoTimeRecord> {
    (0..n)
        .map(|_| GeoTimeRecord {
            time: rng.random_range(0..30 * DAY),
            lat: rng.random_range(20.0..21.0),
            lon: rng.random_range(-60.0..-59.0),
            value: rng.random_range(0.0..20.0),
            source_id: src.into(),
        })
        .collect()
}

fn bench(c: &mut Criterion) {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let n = 5000;
    let sar = points(&mut rng, n, "sar");
    let precip = points(&mut rng, n, "precip");
    let humidity = points(&mut rng, n, "humidity");
    let buoy: Vec<_> = (0..n)
        .map(|i| BuoyObservation {
            time: rng.random_range(0..30 * DAY),
            buoy_id: format!("B{}", i % 20),
            lat: rng.random_range(20.0..21.0),
            lon: rng.random_range(-60.0..-59.0),
            wind_ms: 7.0,
            anemometer_height_m: 4.0,
            tair_c: 20.0,
            tsea_c: 21.0,
            pres_hpa: 1013.0,
            hs_m: None,
            tp_s: None,
        })
        .collect();
    let w = MatchWindows::default();
    c.bench_function("build_matchups 4 x 5000", |b| {
        b.iter(|| {
            black_box(
                build_matchups(
                    sar.clone(),
                    buoy.clone(),
                    precip.clone(),
                    humidity.clone(),
                    &w,
                )
                .unwrap(),
            )
        })
    });
}

criterion_group!(benches, bench);
criterion_main!(benches);
