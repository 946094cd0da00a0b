use super::ColocateError;

pub const EARTH_RADIUS_KM: f64 = 6371.0;

pub(crate) fn check_position(lat: f64, lon: f64) -> Result<(), ColocateError> {
    if !(-90.0..=90.0).contains(&lat) {
        return Err(ColocateError::Domain(format!(
            "latitude {lat} outside [-90, 90]"
        )));
    }
    if !(-180.0..180.0).contains(&lon) {
        return Err(ColocateError::Domain(format!(
            "longitude {lon} outside [-180, 180)"
        )));
    }
    Ok(())
}

/// Great-circle distance in km between two (lat, lon) points in degrees.
pub fn haversine_km(a: (f64, f64), b: (f64, f64)) -> Result<f64, ColocateError> {
    check_position(a.0, a.1)?;
    check_position(b.0, b.1)?;
    Ok(haversine_unchecked(a, b))
}

pub(crate) fn haversine_unchecked(a: (f64, f64), b: (f64, f64)) -> f64 {
    let (phi1, phi2) = (a.0.to_radians(), b.0.to_radians());
    let dphi = phi2 - phi1;
    let dlambda = (b.1 - a.1).to_radians();
    let h = (dphi / 2.0).sin().powi(2) + phi1.cos() * phi2.cos() * (dlambda / 2.0).sin().powi(2);
    2.0 * EARTH_RADIUS_KM * h.sqrt().min(1.0).asin()
}
