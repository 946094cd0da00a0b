//! All-pairs reference for the matchup cascade.
//!
//! Works on the unsorted input vectors and ranks candidates with an explicit
//! key instead of sorted-stream scans. Random test instances have distinct
//! positions, so ranking beyond (|Δt|, distance, time, lat, lon) is not needed.

use std::cmp::Ordering;

use seaflux::{
    classify_stability, haversine_km, wind_to_10m_buoy, BuoyObservation, GeoTimeRecord,
    MatchWindow, MatchWindows, MatchupRecord,
};

fn key_cmp(a: &[f64], b: &[f64]) -> Ordering {
    a.iter()
        .zip(b)
        .map(|(x, y)| x.total_cmp(y))
        .find(|o| o.is_ne())
        .unwrap_or(Ordering::Equal)
}

fn best_by<T>(
    items: &[T],
    at: (i64, f64, f64),
    pos: impl Fn(&T) -> (i64, f64, f64),
    w: &MatchWindow,
) -> Option<usize> {
    let mut best: Option<(usize, Vec<f64>)> = None;
    for (i, it) in items.iter().enumerate() {
        let (t, lat, lon) = pos(it);
        let dt = (t - at.0).abs();
        let d = haversine_km((at.1, at.2), (lat, lon)).unwrap();
        if dt > w.max_dt || d > w.max_dist {
            continue;
        }
        let key = vec![dt as f64, d, t as f64, lat, lon];
        if best.as_ref().is_none_or(|(_, k)| key_cmp(&key, k).is_lt()) {
            best = Some((i, key));
        }
    }
    best.map(|(i, _)| i)
}

pub fn nearest(anchor: &GeoTimeRecord, cands: &[GeoTimeRecord], w: &MatchWindow) -> Option<usize> {
    best_by(
        cands,
        (anchor.time, anchor.lat, anchor.lon),
        |c| (c.time, c.lat, c.lon),
        w,
    )
}

pub fn cascade(
    sar: &[GeoTimeRecord],
    buoy: &[BuoyObservation],
    precip: &[GeoTimeRecord],
    humidity: &[GeoTimeRecord],
    w: &MatchWindows,
) -> Vec<MatchupRecord> {
    // buoy index -> (key, sar index)
    let mut owner: Vec<Option<(Vec<f64>, usize)>> = vec![None; buoy.len()];
    for (si, s) in sar.iter().enumerate() {
        let Some(bi) = best_by(
            buoy,
            (s.time, s.lat, s.lon),
            |b| (b.time, b.lat, b.lon),
            &w.sar_buoy,
        ) else {
            continue;
        };
        let b = &buoy[bi];
        let d = haversine_km((s.lat, s.lon), (b.lat, b.lon)).unwrap();
        let key = vec![
            d,
            (b.time - s.time).abs() as f64,
            s.time as f64,
            s.lat,
            s.lon,
        ];
        if owner[bi]
            .as_ref()
            .is_none_or(|(k, _)| key_cmp(&key, k).is_lt())
        {
            owner[bi] = Some((key, si));
        }
    }
    let mut out = Vec::new();
    for (bi, o) in owner.into_iter().enumerate() {
        let Some((_, si)) = o else { continue };
        let b = &buoy[bi];
        let at = (b.time, b.lat, b.lon);
        let pos = |r: &GeoTimeRecord| (r.time, r.lat, r.lon);
        let (Some(pi), Some(hi)) = (
            best_by(precip, at, pos, &w.precip),
            best_by(humidity, at, pos, &w.humidity),
        ) else {
            continue;
        };
        let s = &sar[si];
        out.push(MatchupRecord {
            buoy: b.clone(),
            sar_time: s.time,
            sar_lat: s.lat,
            sar_lon: s.lon,
            sar_wind_10m: s.value,
            precip: precip[pi].value,
            q10: humidity[hi].value,
            stability: classify_stability(b.tsea_c, b.tair_c).unwrap(),
            buoy_wind_10m: wind_to_10m_buoy(b.wind_ms, b.anemometer_height_m).unwrap(),
        });
    }
    out.sort_by(|a, b| {
        a.buoy
            .time
            .cmp(&b.buoy.time)
            .then_with(|| a.buoy.buoy_id.cmp(&b.buoy.buoy_id))
            .then(a.buoy.lat.total_cmp(&b.buoy.lat))
            .then(a.buoy.lon.total_cmp(&b.buoy.lon))
    });
    out
}
