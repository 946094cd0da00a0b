//! Spatiotemporal matchup engine.
//!
//! SAR pixels are paired with buoy records first; precipitation and humidity
//! are then attached using the buoy record (time and mooring position) as the
//! anchor. A pair missing either attachment is dropped.

mod engine;
mod geo;
mod record;

pub use engine::{build_matchups, match_nearest, MatchStats, SortedStream};
pub use geo::{haversine_km, EARTH_RADIUS_KM};
pub use record::{
    BuoyObservation, GeoTimeRecord, GeoTimed, MatchWindow, MatchWindows, MatchupRecord,
};

use thiserror::Error;

use crate::flux::FluxError;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum ColocateError {
    #[error("{0}")]
    Domain(String),
    #[error("candidate stream is not sorted by time at index {index}")]
    Unsorted { index: usize },
    #[error(transparent)]
    Flux(#[from] FluxError),
}
