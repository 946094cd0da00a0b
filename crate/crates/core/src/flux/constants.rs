use serde::{Deserialize, Serialize};

/// Physical constants used throughout the bulk algorithm.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PhysConstants {
    /// von Kármán constant.
    pub kappa: f64,
    /// Gravitational acceleration, m/s².
    pub g: f64,
    /// Specific heat of dry air at constant pressure, J/(kg·K).
    pub cp: f64,
    /// Gas constant of dry air, J/(kg·K).
    pub r_dry: f64,
    /// Kinematic viscosity of air, m²/s.
    pub nu_air: f64,
    /// Slope of the wind-dependent Charnock coefficient, s/m.
    pub charnock_m: f64,
    /// Intercept of the wind-dependent Charnock coefficient.
    pub charnock_b: f64,
    /// Reference height for neutral winds, m.
    pub z_ref: f64,
}

impl PhysConstants {
    pub const STANDARD: PhysConstants = PhysConstants {
        kappa: 0.4,
        g: 9.81,
        cp: 1004.67,
        r_dry: 287.05,
        nu_air: 1.5e-5,
        charnock_m: 0.0017,
        charnock_b: -0.005,
        z_ref: 10.0,
    };
}

impl Default for PhysConstants {
    fn default() -> Self {
        Self::STANDARD
    }
}
