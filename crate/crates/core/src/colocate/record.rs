use std::cmp::Ordering;

use serde::{Deserialize, Serialize};

use super::geo::check_position;
use super::ColocateError;
use crate::flux::StabilityClass;

/// Anything with a UTC time (integer seconds) and a position.
pub trait GeoTimed {
    fn time(&self) -> i64;
    fn lat(&self) -> f64;
    fn lon(&self) -> f64;

    /// Ordering among records that agree on time and position, so that
    /// sorting is a total order.
    fn tie_cmp(&self, _other: &Self) -> Ordering {
        Ordering::Equal
    }
}

pub(crate) fn total_cmp<T: GeoTimed>(a: &T, b: &T) -> Ordering {
    a.time()
        .cmp(&b.time())
        .then(a.lat().total_cmp(&b.lat()))
        .then(a.lon().total_cmp(&b.lon()))
        .then_with(|| a.tie_cmp(b))
}

/// Timestamped, geolocated scalar (SAR wind, rain rate, humidity…).
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GeoTimeRecord {
    pub time: i64,
    pub lat: f64,
    pub lon: f64,
    pub value: f64,
    pub source_id: String,
}

impl GeoTimeRecord {
    pub fn validate(&self) -> Result<(), ColocateError> {
        check_position(self.lat, self.lon)?;
        if !self.value.is_finite() {
            return Err(ColocateError::Domain(format!(
                "non-finite value in {} record at t = {}",
                self.source_id, self.time
            )));
        }
        Ok(())
    }
}

impl GeoTimed for GeoTimeRecord {
    fn time(&self) -> i64 {
        self.time
    }
    fn lat(&self) -> f64 {
        self.lat
    }
    fn lon(&self) -> f64 {
        self.lon
    }
    fn tie_cmp(&self, other: &Self) -> Ordering {
        self.value
            .total_cmp(&other.value)
            .then_with(|| self.source_id.cmp(&other.source_id))
    }
}

/// One moored-buoy observation as read from the buoy stream.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BuoyObservation {
    pub time: i64,
    pub buoy_id: String,
    pub lat: f64,
    pub lon: f64,
    /// Wind at anemometer height, m/s.
    pub wind_ms: f64,
    pub anemometer_height_m: f64,
    pub tair_c: f64,
    pub tsea_c: f64,
    pub pres_hpa: f64,
    pub hs_m: Option<f64>,
    pub tp_s: Option<f64>,
}

impl BuoyObservation {
    pub fn validate(&self) -> Result<(), ColocateError> {
        check_position(self.lat, self.lon)?;
        let finite = [
            self.wind_ms,
            self.anemometer_height_m,
            self.tair_c,
            self.tsea_c,
            self.pres_hpa,
        ]
        .iter()
        .all(|v| v.is_finite());
        if !finite || self.wind_ms < 0.0 {
            return Err(ColocateError::Domain(format!(
                "buoy {} at t = {}: wind and temperatures must be finite, wind >= 0",
                self.buoy_id, self.time
            )));
        }
        Ok(())
    }
}

impl GeoTimed for BuoyObservation {
    fn time(&self) -> i64 {
        self.time
    }
    fn lat(&self) -> f64 {
        self.lat
    }
    fn lon(&self) -> f64 {
        self.lon
    }
    fn tie_cmp(&self, other: &Self) -> Ordering {
        let opt = |a: Option<f64>, b: Option<f64>| match (a, b) {
            (Some(x), Some(y)) => x.total_cmp(&y),
            (a, b) => a.is_some().cmp(&b.is_some()),
        };
        self.buoy_id
            .cmp(&other.buoy_id)
            .then(self.wind_ms.total_cmp(&other.wind_ms))
            .then(
                self.anemometer_height_m
                    .total_cmp(&other.anemometer_height_m),
            )
            .then(self.tair_c.total_cmp(&other.tair_c))
            .then(self.tsea_c.total_cmp(&other.tsea_c))
            .then(self.pres_hpa.total_cmp(&other.pres_hpa))
            .then(opt(self.hs_m, other.hs_m))
            .then(opt(self.tp_s, other.tp_s))
    }
}

/// Time (seconds) and distance (km) limits of one matching step.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct MatchWindow {
    pub max_dt: i64,
    pub max_dist: f64,
}

impl MatchWindow {
    pub fn new(max_dt: i64, max_dist: f64) -> Result<Self, ColocateError> {
        let w = MatchWindow { max_dt, max_dist };
        w.validate()?;
        Ok(w)
    }

    pub fn validate(&self) -> Result<(), ColocateError> {
        if self.max_dt > 0 && self.max_dist > 0.0 && self.max_dist.is_finite() {
            Ok(())
        } else {
            Err(ColocateError::Domain(format!(
                "match window must be positive, got {} s / {} km",
                self.max_dt, self.max_dist
            )))
        }
    }

    pub fn admits(&self, dt: i64, dist_km: f64) -> bool {
        dt.abs() <= self.max_dt && dist_km <= self.max_dist
    }
}

/// The three windows of the matchup cascade.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct MatchWindows {
    pub sar_buoy: MatchWindow,
    pub precip: MatchWindow,
    pub humidity: MatchWindow,
}

impl Default for MatchWindows {
    fn default() -> Self {
        MatchWindows {
            sar_buoy: MatchWindow {
                max_dt: 300,
                max_dist: 0.25,
            },
            precip: MatchWindow {
                max_dt: 900,
                max_dist: 4.0,
            },
            humidity: MatchWindow {
                max_dt: 1800,
                max_dist: 25.0,
            },
        }
    }
}

impl MatchWindows {
    pub fn validate(&self) -> Result<(), ColocateError> {
        self.sar_buoy.validate()?;
        self.precip.validate()?;
        self.humidity.validate()
    }
}

/// One fused row of the matchup dataset.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MatchupRecord {
    pub buoy: BuoyObservation,
    pub sar_time: i64,
    pub sar_lat: f64,
    pub sar_lon: f64,
    pub sar_wind_10m: f64,
    /// Rain rate, mm/h.
    pub precip: f64,
    /// Specific humidity at 10 m, kg/kg.
    pub q10: f64,
    pub stability: StabilityClass,
    /// Buoy wind converted to 10 m with the buoy height formula.
    pub buoy_wind_10m: f64,
}

impl MatchupRecord {
    pub fn time(&self) -> i64 {
        self.buoy.time
    }
    pub fn lat(&self) -> f64 {
        self.buoy.lat
    }
    pub fn lon(&self) -> f64 {
        self.buoy.lon
    }
}
