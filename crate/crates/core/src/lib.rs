//! Air-sea interface fluxes from met-ocean point records.
//!
//! The crate is split along the processing chain:
//!
//! * [`flux`] — bulk Monin-Obukhov flux solver and the surface-layer helpers it uses
//!   (stability functions, height conversion, humidity, density).
//! * [`mlp`] — the small feed-forward network that maps SAR winds toward buoy winds.
//! * [`colocate`] — matchup engine joining SAR, buoy, precipitation and humidity streams.
//! * [`metrics`] — bias / RMSE / STD statistics and plot-ready histograms.

pub mod colocate;
pub mod flux;
pub mod metrics;
pub mod mlp;

pub use colocate::{
    build_matchups, haversine_km, match_nearest, BuoyObservation, ColocateError, GeoTimeRecord,
    GeoTimed, MatchStats, MatchWindow, MatchWindows, MatchupRecord, SortedStream,
};
pub use flux::{
    air_density, charnock_alpha, classify_stability, compute_fluxes, compute_fluxes_with, psi_h,
    psi_m, saturation_specific_humidity, wind_to_10m_buoy, wind_to_10m_neutral, FluxError,
    FluxResult, MetSample, PhysConstants, SolverConfig, StabilityClass,
};
pub use metrics::{bias, density_grid, rmse, std_dev, DensityGrid, MetricsError, PairedSeries};
pub use mlp::{
    init_model, load_model, loss_and_gradient, relu, save_model, train, FeatureVector, Gradients,
    MlpError, MlpModel, TrainConfig, Trained,
};
