//! Batch pipeline around the `seaflux` core: collocate SAR, buoy, rain and
//! humidity records, compute bulk fluxes from each wind source, train and
//! apply the SAR wind corrector, and report validation statistics.
//!
//! Every stage reads and writes plain CSV files in an output directory; the
//! `seaflux` binary exposes each stage as a subcommand.

pub mod commands;
pub mod config;
pub mod error;
pub mod synth;
pub mod table;

pub use config::{FluxHeights, InputPaths, Overrides, PipelineConfig};
pub use error::{CliError, Result};
