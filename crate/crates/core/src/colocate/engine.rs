use std::cmp::Ordering;
use std::collections::BTreeMap;

use serde::Serialize;

use super::geo::haversine_unchecked;
use super::record::total_cmp;
use super::{
    BuoyObservation, ColocateError, GeoTimeRecord, GeoTimed, MatchWindow, MatchWindows,
    MatchupRecord,
};
use crate::flux::{classify_stability, wind_to_10m_buoy};

/// A record stream sorted into its total (time, lat, lon, tie) order.
#[derive(Debug, Clone)]
pub struct SortedStream<T> {
    items: Vec<T>,
}

impl<T: GeoTimed> SortedStream<T> {
    pub fn new(mut items: Vec<T>) -> Self {
        items.sort_by(total_cmp);
        SortedStream { items }
    }

    pub fn as_slice(&self) -> &[T] {
        &self.items
    }

    pub fn len(&self) -> usize {
        self.items.len()
    }

    pub fn is_empty(&self) -> bool {
        self.items.is_empty()
    }

    /// Index of the best candidate for `anchor` within `w`.
    pub fn nearest_index<A: GeoTimed + ?Sized>(
        &self,
        anchor: &A,
        w: &MatchWindow,
    ) -> Option<usize> {
        nearest_in_time_sorted(anchor, &self.items, w).map(|(i, _)| i)
    }
}

/// Candidate ranking: smaller |Δt|, then smaller distance, then earlier time,
/// then the stream's own total order.
fn rank<A: GeoTimed + ?Sized, T: GeoTimed>(anchor: &A, c: &T) -> (i64, f64, i64) {
    let dt = (c.time() - anchor.time()).abs();
    let d = haversine_unchecked((anchor.lat(), anchor.lon()), (c.lat(), c.lon()));
    (dt, d, c.time())
}

fn better<T: GeoTimed>(a: ((i64, f64, i64), &T), b: ((i64, f64, i64), &T)) -> bool {
    let (ra, ca) = a;
    let (rb, cb) = b;
    ra.0.cmp(&rb.0)
        .then(ra.1.total_cmp(&rb.1))
        .then(ra.2.cmp(&rb.2))
        .then_with(|| total_cmp(ca, cb))
        == Ordering::Less
}

fn nearest_in_time_sorted<A: GeoTimed + ?Sized, T: GeoTimed>(
    anchor: &A,
    items: &[T],
    w: &MatchWindow,
) -> Option<(usize, f64)> {
    let t0 = anchor.time();
    let start = items.partition_point(|c| c.time() < t0 - w.max_dt);
    let mut best: Option<(usize, (i64, f64, i64))> = None;
    for (i, c) in items.iter().enumerate().skip(start) {
        if c.time() > t0 + w.max_dt {
            break;
        }
        let r = rank(anchor, c);
        if !w.admits(r.0, r.1) {
            continue;
        }
        let replace = match best {
            None => true,
            Some((j, rb)) => better((r, c), (rb, &items[j])),
        };
        if replace {
            best = Some((i, r));
        }
    }
    best.map(|(i, r)| (i, r.1))
}

/// Best candidate for `anchor` among time-sorted `candidates` within `w`.
pub fn match_nearest<'a, A: GeoTimed + ?Sized, T: GeoTimed>(
    anchor: &A,
    candidates: &'a [T],
    w: &MatchWindow,
) -> Result<Option<&'a T>, ColocateError> {
    w.validate()?;
    if let Some(i) = candidates
        .windows(2)
        .position(|p| p[1].time() < p[0].time())
    {
        return Err(ColocateError::Unsorted { index: i + 1 });
    }
    Ok(nearest_in_time_sorted(anchor, candidates, w).map(|(i, _)| &candidates[i]))
}

/// Per-stage counters of one matchup run.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct MatchStats {
    pub sar_records: usize,
    pub buoy_records: usize,
    pub precip_records: usize,
    pub humidity_records: usize,
    /// SAR records with a buoy inside the SAR↔buoy window.
    pub sar_buoy_pairs: usize,
    /// Pairs dropped because another SAR pixel was closer to the same buoy record.
    pub dropped_duplicate: usize,
    pub dropped_no_precip: usize,
    pub dropped_no_humidity: usize,
    pub matched: usize,
}

/// Runs the full SAR → buoy → precipitation → humidity cascade.
pub fn build_matchups(
    sar: Vec<GeoTimeRecord>,
    buoy: Vec<BuoyObservation>,
    precip: Vec<GeoTimeRecord>,
    humidity: Vec<GeoTimeRecord>,
    windows: &MatchWindows,
) -> Result<(Vec<MatchupRecord>, MatchStats), ColocateError> {
    windows.validate()?;
    for r in sar.iter().chain(&precip).chain(&humidity) {
        r.validate()?;
    }
    for b in &buoy {
        b.validate()?;
    }
    let mut stats = MatchStats {
        sar_records: sar.len(),
        buoy_records: buoy.len(),
        precip_records: precip.len(),
        humidity_records: humidity.len(),
        ..MatchStats::default()
    };

    let sar = SortedStream::new(sar);
    let buoy = SortedStream::new(buoy);
    let precip = SortedStream::new(precip);
    let humidity = SortedStream::new(humidity);

    // buoy index -> (distance, |dt|, sar index) of the closest SAR pixel
    let mut per_buoy: BTreeMap<usize, (f64, i64, usize)> = BTreeMap::new();
    for (si, s) in sar.as_slice().iter().enumerate() {
        let Some((bi, dist)) = nearest_in_time_sorted(s, buoy.as_slice(), &windows.sar_buoy) else {
            continue;
        };
        stats.sar_buoy_pairs += 1;
        let dt = (buoy.as_slice()[bi].time - s.time).abs();
        let cand = (dist, dt, si);
        per_buoy
            .entry(bi)
            .and_modify(|cur| {
                let closer = cand
                    .0
                    .total_cmp(&cur.0)
                    .then(cand.1.cmp(&cur.1))
                    .then(cand.2.cmp(&cur.2))
                    == Ordering::Less;
                if closer {
                    *cur = cand;
                }
            })
            .or_insert(cand);
    }
    stats.dropped_duplicate = stats.sar_buoy_pairs - per_buoy.len();

    let mut out = Vec::with_capacity(per_buoy.len());
    for (bi, (_, _, si)) in per_buoy {
        let b = &buoy.as_slice()[bi];
        let Some(pi) = precip.nearest_index(b, &windows.precip) else {
            stats.dropped_no_precip += 1;
            continue;
        };
        let Some(hi) = humidity.nearest_index(b, &windows.humidity) else {
            stats.dropped_no_humidity += 1;
            continue;
        };
        let s = &sar.as_slice()[si];
        out.push((
            bi,
            MatchupRecord {
                buoy: b.clone(),
                sar_time: s.time,
                sar_lat: s.lat,
                sar_lon: s.lon,
                sar_wind_10m: s.value,
                precip: precip.as_slice()[pi].value,
                q10: humidity.as_slice()[hi].value,
                stability: classify_stability(b.tsea_c, b.tair_c)?,
                buoy_wind_10m: wind_to_10m_buoy(b.wind_ms, b.anemometer_height_m)?,
            },
        ));
    }
    out.sort_by(|(ia, a), (ib, b)| {
        a.buoy
            .time
            .cmp(&b.buoy.time)
            .then_with(|| a.buoy.buoy_id.cmp(&b.buoy.buoy_id))
            .then(ia.cmp(ib))
    });
    stats.matched = out.len();
    Ok((out.into_iter().map(|(_, m)| m).collect(), stats))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rec(time: i64, lat: f64, lon: f64, value: f64) -> GeoTimeRecord {
        GeoTimeRecord {
            time,
            lat,
            lon,
            value,
            source_id: "t".into(),
        }
    }

    fn buoy_at(time: i64, lat: f64, lon: f64) -> BuoyObservation {
        BuoyObservation {
            time,
            buoy_id: "46001".into(),
            lat,
            lon,
            wind_ms: 7.0,
            anemometer_height_m: 4.1,
            tair_c: 14.0,
            tsea_c: 15.0,
            pres_hpa: 1012.0,
            hs_m: Some(1.5),
            tp_s: None,
        }
    }

    const W: MatchWindow = MatchWindow {
        max_dt: 300,
        max_dist: 0.25,
    };

    #[test]
    fn nothing_in_window() {
        let anchor = rec(1000, 30.0, -120.0, 0.0);
        let cands = vec![rec(1000, 31.0, -120.0, 2.0), rec(1400, 30.0, -120.0, 1.0)];
        assert!(match_nearest(&anchor, &cands, &W).unwrap().is_none());
    }

    #[test]
    fn nearest_in_time_wins() {
        let anchor = rec(1000, 30.0, -120.0, 0.0);
        // the 120 s candidate is spatially closer, time still decides
        let cands = vec![rec(1060, 30.001, -120.0, 1.0), rec(1120, 30.0, -120.0, 2.0)];
        assert_eq!(
            match_nearest(&anchor, &cands, &W).unwrap().unwrap().value,
            1.0
        );
    }

    #[test]
    fn distance_then_time_breaks_ties() {
        let anchor = rec(1000, 30.0, -120.0, 0.0);
        let cands = vec![
            rec(940, 30.001, -120.0, 1.0),
            rec(1060, 30.0005, -120.0, 2.0),
            rec(1060, 30.001, -120.0, 3.0),
        ];
        assert_eq!(
            match_nearest(&anchor, &cands, &W).unwrap().unwrap().value,
            2.0
        );
        let cands = vec![
            rec(940, 30.001, -120.0, 1.0),
            rec(1060, 30.001, -120.0, 3.0),
        ];
        assert_eq!(
            match_nearest(&anchor, &cands, &W).unwrap().unwrap().value,
            1.0
        );
    }

    #[test]
    fn unsorted_stream_is_rejected() {
        let anchor = rec(1000, 30.0, -120.0, 0.0);
        let cands = vec![rec(1100, 30.0, -120.0, 1.0), rec(1000, 30.0, -120.0, 2.0)];
        assert_eq!(
            match_nearest(&anchor, &cands, &W),
            Err(ColocateError::Unsorted { index: 1 })
        );
    }

    #[test]
    fn single_quadruple() {
        let (m, stats) = build_matchups(
            vec![rec(1000, 30.0, -120.0, 8.0)],
            vec![buoy_at(1100, 30.001, -120.0)],
            vec![rec(1300, 30.01, -120.0, 0.4)],
            vec![rec(2000, 30.1, -120.0, 0.009)],
            &MatchWindows::default(),
        )
        .unwrap();
        assert_eq!(m.len(), 1);
        assert_eq!(stats.matched, 1);
        assert_eq!(m[0].sar_wind_10m, 8.0);
        assert_eq!(m[0].precip, 0.4);
        assert_eq!(m[0].q10, 0.009);
        assert_eq!(m[0].stability.code(), 0);
        assert_eq!(m[0].buoy_wind_10m, wind_to_10m_buoy(7.0, 4.1).unwrap());
    }

    #[test]
    fn missing_humidity_drops_pair() {
        let (m, stats) = build_matchups(
            vec![rec(1000, 30.0, -120.0, 8.0)],
            vec![buoy_at(1100, 30.001, -120.0)],
            vec![rec(1300, 30.01, -120.0, 0.4)],
            vec![rec(1100 + 1801, 30.0, -120.0, 0.009)],
            &MatchWindows::default(),
        )
        .unwrap();
        assert!(m.is_empty());
        assert_eq!(stats.dropped_no_humidity, 1);
        assert_eq!(stats.sar_buoy_pairs, 1);
    }

    #[test]
    fn closest_sar_pixel_keeps_the_buoy() {
        let (m, stats) = build_matchups(
            vec![
                rec(1000, 30.002, -120.0, 8.0),
                rec(1050, 30.0005, -120.0, 9.0),
            ],
            vec![buoy_at(1100, 30.0, -120.0)],
            vec![rec(1100, 30.0, -120.0, 0.0)],
            vec![rec(1100, 30.0, -120.0, 0.01)],
            &MatchWindows::default(),
        )
        .unwrap();
        assert_eq!(m.len(), 1);
        assert_eq!(m[0].sar_wind_10m, 9.0);
        assert_eq!(stats.dropped_duplicate, 1);
    }

    #[test]
    fn empty_streams_give_empty_output() {
        let (m, stats) =
            build_matchups(vec![], vec![], vec![], vec![], &MatchWindows::default()).unwrap();
        assert!(m.is_empty());
        assert_eq!(stats, MatchStats::default());
    }

    #[test]
    fn invalid_coordinates_are_rejected() {
        let r = build_matchups(
            vec![rec(0, 95.0, 0.0, 1.0)],
            vec![],
            vec![],
            vec![],
            &MatchWindows::default(),
        );
        assert!(matches!(r, Err(ColocateError::Domain(_))));
    }
}
