//! Bulk air-sea flux algorithm.

mod constants;
mod profile;
mod solver;
mod stability;
mod thermo;

pub use constants::PhysConstants;
pub use profile::{charnock_alpha, wind_to_10m_buoy, wind_to_10m_neutral, ALPHA_FLOOR};
pub use solver::{compute_fluxes, compute_fluxes_with, FluxResult, MetSample, SolverConfig};
pub use stability::{classify_stability, psi_h, psi_m, StabilityClass};
pub use thermo::{air_density, latent_heat_vaporization, saturation_specific_humidity};

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum FluxError {
    #[error("{name} = {value} is outside its valid domain ({expected})")]
    Domain {
        name: &'static str,
        value: f64,
        expected: &'static str,
    },
}

pub(crate) fn check_range(
    name: &'static str,
    value: f64,
    lo: f64,
    hi: f64,
    expected: &'static str,
) -> Result<(), FluxError> {
    if value.is_finite() && value >= lo && value <= hi {
        Ok(())
    } else {
        Err(FluxError::Domain {
            name,
            value,
            expected,
        })
    }
}
