//! Moist thermodynamics needed by the heat-flux closures.

use super::{check_range, FluxError, PhysConstants};

/// Buck-form saturation specific humidity (kg/kg) over pure water.
///
/// `t` in °C, `p` in hPa. Sea-surface callers multiply by 0.98 for salinity.
pub fn saturation_specific_humidity(t: f64, p: f64) -> Result<f64, FluxError> {
    check_range("t", t, -5.0, 45.0, "[-5, 45] °C")?;
    check_range("p", p, 800.0, 1100.0, "[800, 1100] hPa")?;
    Ok(qsat_unchecked(t, p))
}

pub(crate) fn qsat_unchecked(t: f64, p: f64) -> f64 {
    let es = 6.1121 * (17.502 * t / (240.97 + t)).exp();
    0.622 * es / (p - 0.378 * es)
}

/// Moist air density from virtual temperature, kg/m³.
pub fn air_density(t_air: f64, q_air: f64, p: f64) -> f64 {
    let c = PhysConstants::STANDARD;
    let tv = (t_air + 273.15) * (1.0 + 0.61 * q_air);
    100.0 * p / (c.r_dry * tv)
}

/// Latent heat of vaporization at the sea surface, J/kg.
pub fn latent_heat_vaporization(t_sea: f64) -> f64 {
    (2.501 - 0.00237 * t_sea) * 1e6
}
