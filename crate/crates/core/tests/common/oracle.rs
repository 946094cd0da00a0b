//! Independent reference solver for the bulk flux equations.
//!
//! Deliberately shares no code with the library: constants, stability
//! functions and humidity are re-derived here, and the fixed point is reached
//! by heavily damped iteration over the full state instead of the library's
//! plain stopping rule.

#![allow(dead_code)]

pub struct OracleInput {
    pub u: f64,
    pub z_u: f64,
    pub t_air: f64,
    pub z_t: f64,
    pub t_sea: f64,
    pub p: f64,
    pub q: f64,
}

#[derive(Debug, Clone, Copy)]
pub struct OracleFluxes {
    pub u_star: f64,
    pub tau: f64,
    pub h: f64,
    pub e: f64,
    pub z0: f64,
    pub u10n: f64,
}

const VON_KARMAN: f64 = 0.4;
const GRAVITY: f64 = 9.81;
const CP_AIR: f64 = 1004.67;
const R_AIR: f64 = 287.05;
const VISC: f64 = 1.5e-5;

pub fn buck_qsat(t_c: f64, p_hpa: f64) -> f64 {
    let e_sat = 6.1121 * f64::exp(17.502 * t_c / (t_c + 240.97));
    0.622 * e_sat / (p_hpa - 0.378 * e_sat)
}

fn stab_momentum(zeta: f64) -> f64 {
    if zeta >= 0.0 {
        return -5.0 * zeta;
    }
    let phi_inv = f64::sqrt(f64::sqrt(1.0 - 16.0 * zeta));
    f64::ln((1.0 + phi_inv).powi(2) * (1.0 + phi_inv * phi_inv) / 8.0) - 2.0 * f64::atan(phi_inv)
        + std::f64::consts::PI / 2.0
}

fn stab_scalar(zeta: f64) -> f64 {
    if zeta >= 0.0 {
        return -5.0 * zeta;
    }
    let phi_inv = f64::sqrt(1.0 - 16.0 * zeta);
    2.0 * f64::ln(0.5 * (1.0 + phi_inv))
}

fn roughness(u_star: f64, u10n: f64) -> (f64, f64) {
    let alpha = f64::max(0.0017 * u10n - 0.005, 0.001);
    let z0 = alpha * u_star.powi(2) / GRAVITY + 0.11 * VISC / u_star;
    let reynolds = u_star * z0 / VISC;
    let z0t = f64::min(1.15e-4, 5.5e-5 / reynolds.powf(0.6));
    (z0, z0t)
}

/// Damped fixed point of the full state (u*, θ*, q*, U10N).
pub fn solve(inp: &OracleInput, iterations: usize, damping: f64) -> OracleFluxes {
    let u = inp.u.max(0.1);
    let tk = inp.t_air + 273.15;
    let tv = tk * (1.0 + 0.61 * inp.q);
    let dth = inp.t_air - inp.t_sea;
    let dq = inp.q - 0.98 * buck_qsat(inp.t_sea, inp.p);

    let mut us = VON_KARMAN * u / f64::ln(inp.z_u / 1e-4);
    let mut ts = 0.0;
    let mut qs = 0.0;
    let mut un = u;
    for _ in 0..iterations {
        let tvs = ts * (1.0 + 0.61 * inp.q) + 0.61 * tk * qs;
        let (zu_l, zt_l) = if tvs == 0.0 {
            (0.0, 0.0)
        } else {
            let obukhov = us * us * tv / (VON_KARMAN * GRAVITY * tvs);
            (
                f64::min(inp.z_u / obukhov, 50.0),
                f64::min(inp.z_t / obukhov, 50.0),
            )
        };
        let (z0, z0t) = roughness(us, un);
        let us_new = VON_KARMAN * u / (f64::ln(inp.z_u / z0) - stab_momentum(zu_l));
        let denom = f64::ln(inp.z_t / z0t) - stab_scalar(zt_l);
        let ts_new = VON_KARMAN * dth / denom;
        let qs_new = VON_KARMAN * dq / denom;
        let un_new = us_new / VON_KARMAN * f64::ln(10.0 / z0);
        us += damping * (us_new - us);
        ts += damping * (ts_new - ts);
        qs += damping * (qs_new - qs);
        un += damping * (un_new - un);
    }
    let (z0, _) = roughness(us, un);
    let rho = 100.0 * inp.p / (R_AIR * tv);
    let lv = 1e6 * (2.501 - 0.00237 * inp.t_sea);
    OracleFluxes {
        u_star: us,
        tau: rho * us * us,
        h: -rho * CP_AIR * us * ts,
        e: -rho * lv * us * qs,
        z0,
        u10n: un,
    }
}

/// Neutral closed form by nested bisection.
///
/// Outer unknown is U10N (it sets the Charnock coefficient); for a fixed U10N
/// the inner bisection solves `u* · ln(z_u / z0(u*)) = κ·u` for u*.
pub fn neutral_bisection(u: f64, z_u: f64) -> (f64, f64, f64) {
    let u = u.max(0.1);
    let inner = |u10n: f64| -> (f64, f64) {
        let alpha = f64::max(0.0017 * u10n - 0.005, 0.001);
        let z0_of = |us: f64| alpha * us * us / GRAVITY + 0.11 * VISC / us;
        let f = |us: f64| us * f64::ln(z_u / z0_of(us)) - VON_KARMAN * u;
        let (mut lo, mut hi) = (1e-4, 0.2 * u + 0.05);
        for _ in 0..200 {
            let mid = 0.5 * (lo + hi);
            if f(mid) > 0.0 {
                hi = mid;
            } else {
                lo = mid;
            }
        }
        let us = 0.5 * (lo + hi);
        (us, z0_of(us))
    };
    let g = |u10n: f64| {
        let (us, z0) = inner(u10n);
        us / VON_KARMAN * f64::ln(10.0 / z0) - u10n
    };
    let (mut lo, mut hi) = (0.0, 3.0 * u + 1.0);
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if g(mid) > 0.0 {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    let u10n = 0.5 * (lo + hi);
    let (us, z0) = inner(u10n);
    (us, z0, u10n)
}
