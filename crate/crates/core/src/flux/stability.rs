use std::f64::consts::FRAC_PI_2;
use std::fmt;

use serde::{Deserialize, Serialize};

use super::FluxError;

/// Air-sea stability code fed to the bias-correction network.
///
/// `0` unstable (sea warmer than air), `1` neutral, `2` stable.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "u8", into = "u8")]
pub struct StabilityClass(u8);

impl StabilityClass {
    pub const UNSTABLE: StabilityClass = StabilityClass(0);
    pub const NEUTRAL: StabilityClass = StabilityClass(1);
    pub const STABLE: StabilityClass = StabilityClass(2);

    pub fn new(code: u8) -> Result<Self, FluxError> {
        if code <= 2 {
            Ok(StabilityClass(code))
        } else {
            Err(FluxError::Domain {
                name: "stability",
                value: f64::from(code),
                expected: "0, 1 or 2",
            })
        }
    }

    pub fn code(self) -> u8 {
        self.0
    }
}

impl TryFrom<u8> for StabilityClass {
    type Error = FluxError;

    fn try_from(code: u8) -> Result<Self, Self::Error> {
        StabilityClass::new(code)
    }
}

impl From<StabilityClass> for u8 {
    fn from(s: StabilityClass) -> u8 {
        s.0
    }
}

impl fmt::Display for StabilityClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// Three-way stability rule on sea and air temperature.
///
/// Equality is exact on the stored values; round upstream if needed.
pub fn classify_stability(t_sea: f64, t_air: f64) -> Result<StabilityClass, FluxError> {
    if !t_sea.is_finite() {
        return Err(FluxError::Domain {
            name: "t_sea",
            value: t_sea,
            expected: "finite",
        });
    }
    if !t_air.is_finite() {
        return Err(FluxError::Domain {
            name: "t_air",
            value: t_air,
            expected: "finite",
        });
    }
    Ok(if t_sea > t_air {
        StabilityClass::UNSTABLE
    } else if t_sea < t_air {
        StabilityClass::STABLE
    } else {
        StabilityClass::NEUTRAL
    })
}

/// Integrated Businger-Dyer stability correction for momentum.
pub fn psi_m(zeta: f64) -> f64 {
    if zeta < 0.0 {
        let x = (1.0 - 16.0 * zeta).powf(0.25);
        2.0 * ((1.0 + x) / 2.0).ln() + ((1.0 + x * x) / 2.0).ln() - 2.0 * x.atan() + FRAC_PI_2
    } else {
        -5.0 * zeta
    }
}

/// Integrated stability correction for heat and moisture.
pub fn psi_h(zeta: f64) -> f64 {
    if zeta < 0.0 {
        let y = (1.0 - 16.0 * zeta).sqrt();
        2.0 * ((1.0 + y) / 2.0).ln()
    } else {
        -5.0 * zeta
    }
}
