//! Wind-profile height conversions and the sea-surface roughness closure.

use super::{FluxError, PhysConstants};

/// Lower bound on the Charnock coefficient. The linear form turns negative
/// below about 2.94 m/s.
pub const ALPHA_FLOOR: f64 = 0.001;

/// Literal constant and roughness of the buoy height-conversion formula.
const BUOY_NUMERATOR: f64 = 8.87403;
const BUOY_Z0: f64 = 0.0016;

/// Neutral logarithmic profile: `u_z · ln(10/z0) / ln(z/z0)`.
pub fn wind_to_10m_neutral(u_z: f64, z: f64, z0: f64) -> Result<f64, FluxError> {
    if !(z0 > 0.0 && z0.is_finite()) {
        return Err(FluxError::Domain {
            name: "z0",
            value: z0,
            expected: "> 0",
        });
    }
    if !(z > z0 && z.is_finite()) {
        return Err(FluxError::Domain {
            name: "z",
            value: z,
            expected: "> z0",
        });
    }
    check_wind(u_z)?;
    if z == PhysConstants::STANDARD.z_ref {
        return Ok(u_z);
    }
    Ok(u_z * (PhysConstants::STANDARD.z_ref / z0).ln() / (z / z0).ln())
}

/// The buoy conversion `8.87403 · u_z / ln(z / 0.0016)`, taken literally.
///
/// Not identical to [`wind_to_10m_neutral`] with `z0 = 0.0016`: the numerator
/// differs from `ln(10/0.0016)` by about 1.5 %.
pub fn wind_to_10m_buoy(u_z: f64, z: f64) -> Result<f64, FluxError> {
    if !(z > BUOY_Z0 && z.is_finite()) {
        return Err(FluxError::Domain {
            name: "z",
            value: z,
            expected: "> 0.0016 m",
        });
    }
    check_wind(u_z)?;
    Ok(BUOY_NUMERATOR * u_z / (z / BUOY_Z0).ln())
}

/// Wind-dependent Charnock coefficient `m·U10N + b`, floored at [`ALPHA_FLOOR`].
pub fn charnock_alpha(u10n: f64) -> f64 {
    charnock_alpha_with(&PhysConstants::STANDARD, u10n)
}

pub(crate) fn charnock_alpha_with(c: &PhysConstants, u10n: f64) -> f64 {
    (c.charnock_m * u10n + c.charnock_b).max(ALPHA_FLOOR)
}

fn check_wind(u: f64) -> Result<(), FluxError> {
    if u >= 0.0 && u.is_finite() {
        Ok(())
    } else {
        Err(FluxError::Domain {
            name: "u_z",
            value: u,
            expected: ">= 0",
        })
    }
}
