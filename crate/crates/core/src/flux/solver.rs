//! Iterative Monin-Obukhov bulk flux solver.

use roots::{find_root_regula_falsi, SimpleConvergency};
use serde::{Deserialize, Serialize};

use super::profile::charnock_alpha_with;
use super::stability::{psi_h, psi_m};
use super::thermo::{air_density, latent_heat_vaporization, qsat_unchecked};
use super::{check_range, FluxError, PhysConstants};

/// One collocated met-ocean observation.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct MetSample {
    /// Wind speed at `z_u`, m/s.
    pub u_wind: f64,
    /// Wind measurement height, m.
    pub z_u: f64,
    /// Air temperature at `z_t`, °C.
    pub t_air: f64,
    /// Temperature / humidity measurement height, m.
    pub z_t: f64,
    /// Sea surface temperature, °C.
    pub t_sea: f64,
    /// Surface pressure, hPa.
    pub p_air: f64,
    /// Specific humidity at `z_t`, kg/kg.
    pub q_air: f64,
    /// Significant wave height, m. Not used by the solver.
    pub hs: Option<f64>,
    /// Wave period, s. Not used by the solver.
    pub tp: Option<f64>,
}

impl MetSample {
    pub fn validate(&self) -> Result<(), FluxError> {
        check_range("u_wind", self.u_wind, 0.0, f64::MAX, ">= 0 m/s")?;
        check_positive("z_u", self.z_u)?;
        check_positive("z_t", self.z_t)?;
        check_range("p_air", self.p_air, 800.0, 1100.0, "[800, 1100] hPa")?;
        check_range("q_air", self.q_air, 0.0, 0.04, "[0, 0.04] kg/kg")?;
        check_range("t_air", self.t_air, -5.0, 45.0, "[-5, 45] °C")?;
        check_range("t_sea", self.t_sea, -5.0, 45.0, "[-5, 45] °C")?;
        Ok(())
    }
}

fn check_positive(name: &'static str, v: f64) -> Result<(), FluxError> {
    if v > 0.0 && v.is_finite() {
        Ok(())
    } else {
        Err(FluxError::Domain {
            name,
            value: v,
            expected: "> 0 m",
        })
    }
}

/// Numerical controls of the fixed-point iteration.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct SolverConfig {
    /// Stop when successive friction velocities differ by less than this, m/s.
    pub tolerance: f64,
    pub max_iterations: u32,
    /// Effective wind is never taken below this value, m/s.
    pub wind_floor: f64,
    /// Upper limit on z/L. Very stable, low-wind states have no
    /// Monin-Obukhov solution with the linear stable profile; without a cap
    /// the friction velocity decays toward zero instead of converging.
    pub zeta_max: f64,
    pub constants: PhysConstants,
}

impl Default for SolverConfig {
    fn default() -> Self {
        SolverConfig {
            tolerance: 1e-9,
            max_iterations: 50,
            wind_floor: 0.1,
            zeta_max: 50.0,
            constants: PhysConstants::STANDARD,
        }
    }
}

/// Solver output.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct FluxResult {
    /// Friction velocity, m/s.
    pub u_star: f64,
    /// Wind stress, N/m².
    pub tau: f64,
    /// Drag coefficient × 10³.
    pub cd1000: f64,
    /// Sensible heat flux, W/m², positive upward.
    pub h_sensible: f64,
    /// Latent heat flux, W/m², positive upward.
    pub e_latent: f64,
    /// Obukhov length, m. `None` when the buoyancy flux vanishes (neutral).
    pub obukhov_l: Option<f64>,
    /// Momentum roughness length, m.
    pub z0: f64,
    /// Neutral-equivalent 10 m wind, m/s.
    pub u10n: f64,
    pub theta_star: f64,
    pub q_star: f64,
    pub rho_air: f64,
    /// Wind actually used after flooring, m/s.
    pub u_eff: f64,
    pub iterations: u32,
    pub converged: bool,
}

/// Runs the solver with default tolerances and constants.
pub fn compute_fluxes(s: &MetSample) -> Result<FluxResult, FluxError> {
    compute_fluxes_with(s, &SolverConfig::default())
}

/// Iterate of the fixed point: friction velocity, stability parameter at the
/// wind height, neutral 10 m wind.
#[derive(Debug, Clone, Copy)]
struct State {
    u_star: f64,
    zeta_u: f64,
    u10n: f64,
}

struct Sweep {
    next: State,
    z0: f64,
    theta_star: f64,
    q_star: f64,
}

struct Problem<'a> {
    s: &'a MetSample,
    c: &'a PhysConstants,
    zeta_max: f64,
    u_eff: f64,
    t_k: f64,
    tv: f64,
    d_theta: f64,
    d_q: f64,
}

impl Problem<'_> {
    /// Friction velocity and neutral wind consistent with a fixed stability
    /// parameter. Roughness feedback is weak, so this contracts quickly.
    fn sweep_at(&self, zeta_u: f64, cfg: &SolverConfig) -> Option<Sweep> {
        let k = self.c.kappa;
        let u0 = k * self.u_eff / (self.s.z_u / 1e-4).ln();
        let mut x = State {
            u_star: u0,
            zeta_u,
            u10n: u0 / k * (self.c.z_ref / 1e-4).ln(),
        };
        for _ in 0..200 {
            let sw = self.sweep(&x);
            if !(sw.next.u_star > 0.0 && sw.next.u_star.is_finite()) {
                return None;
            }
            let step = (sw.next.u_star - x.u_star).abs();
            x.u_star = sw.next.u_star;
            x.u10n = sw.next.u10n;
            if step < (0.1 * cfg.tolerance).max(1e-15) {
                return Some(self.sweep(&x));
            }
        }
        None
    }

    /// Fallback for states where plain substitution does not settle: solve
    /// `g(ζ) = ζ` for the stability parameter directly. The side is fixed by
    /// the sign of the buoyancy flux; stable states can have several roots,
    /// and the one nearest neutral is taken.
    /// `guess` seeds the bracket. Each evaluation of the stability map counts
    /// against `budget`; the error carries the number spent.
    fn solve_bracketed(
        &self,
        cfg: &SolverConfig,
        guess: f64,
        budget: usize,
    ) -> Result<(Sweep, usize), usize> {
        let evals = std::cell::Cell::new(0);
        // The root finder revisits bracket ends; only new points are charged.
        let mut seen: Vec<(f64, f64)> = Vec::new();
        let mut residual = |z: f64| -> f64 {
            if let Some(&(_, r)) = seen.iter().find(|(k, _)| k.to_bits() == z.to_bits()) {
                return r;
            }
            if evals.get() >= budget {
                return f64::NAN;
            }
            evals.set(evals.get() + 1);
            let r = self
                .sweep_at(z, cfg)
                .map_or(f64::NAN, |sw| sw.next.zeta_u - z);
            seen.push((z, r));
            r
        };
        let fail = || Err(evals.get());
        let r0 = residual(0.0);
        if !r0.is_finite() {
            return fail();
        }
        let root = if r0 == 0.0 {
            0.0
        } else {
            let dir = r0.signum();
            // Beyond this both stability parameters sit at the cap and the
            // map is constant.
            let saturated = self.zeta_max * (self.s.z_u / self.s.z_t).max(1.0);
            let (mut a, mut ra) = (0.0, r0);
            let mut step = 0.25;
            if guess.is_finite() && guess * dir > 0.0 {
                let rg = residual(guess);
                if !rg.is_finite() {
                    return fail();
                }
                (a, ra) = (guess, rg);
                step = (0.25 * guess.abs()).max(0.05);
                if rg.signum() != r0.signum() {
                    // Root between neutral and the guess.
                    step = -guess * dir;
                }
            }
            loop {
                let b = a + dir * step;
                let rb = residual(b);
                if !rb.is_finite() {
                    return fail();
                }
                if rb.signum() != ra.signum() {
                    match self.illinois(a, b, &mut residual) {
                        Some(r) => break r,
                        None => return fail(),
                    }
                }
                if dir > 0.0 && b >= saturated {
                    break b + rb;
                }
                if b.abs() > 1e6 {
                    return fail();
                }
                (a, ra) = (b, rb);
                step *= 1.5;
            }
        };
        let Some(sweep) = self.sweep_at(root, cfg) else {
            return fail();
        };
        let gap = (sweep.next.zeta_u - root).abs();
        if gap <= 1e-9 * root.abs().max(1.0) {
            Ok((sweep, evals.get()))
        } else {
            fail()
        }
    }

    fn illinois(&self, a: f64, b: f64, f: &mut impl FnMut(f64) -> f64) -> Option<f64> {
        let mut conv = SimpleConvergency {
            eps: 1e-11,
            max_iter: 200,
        };
        find_root_regula_falsi(a, b, f, &mut conv).ok()
    }

    /// One pass of the profile relations starting from `x`.
    fn sweep(&self, x: &State) -> Sweep {
        let (s, c) = (self.s, self.c);
        let k = c.kappa;
        let alpha = charnock_alpha_with(c, x.u10n);
        let z0 = alpha * x.u_star * x.u_star / c.g + 0.11 * c.nu_air / x.u_star;
        let rr = x.u_star * z0 / c.nu_air;
        let z0t = (5.5e-5 * rr.powf(-0.6)).min(1.15e-4);

        let zeta_u = x.zeta_u.min(self.zeta_max);
        let zeta_t = (x.zeta_u * s.z_t / s.z_u).min(self.zeta_max);
        let scalar_profile = (s.z_t / z0t).ln() - psi_h(zeta_t);

        let u_star = k * self.u_eff / ((s.z_u / z0).ln() - psi_m(zeta_u));
        let theta_star = k * self.d_theta / scalar_profile;
        let q_star = k * self.d_q / scalar_profile;

        let tv_star = theta_star * (1.0 + 0.61 * s.q_air) + 0.61 * self.t_k * q_star;
        let zeta_next = if tv_star == 0.0 {
            0.0
        } else {
            s.z_u * k * c.g * tv_star / (u_star * u_star * self.tv)
        };
        Sweep {
            next: State {
                u_star,
                zeta_u: zeta_next,
                u10n: u_star / k * (c.z_ref / z0).ln(),
            },
            z0,
            theta_star,
            q_star,
        }
    }
}

/// Runs the solver. Plain substitution is tried first; states where it does
/// not settle (near-critical and strongly stable ones) are finished by a
/// bracketed solve for the stability parameter. Either way `iterations`
/// counts evaluations of the stability map and never exceeds the cap.
pub fn compute_fluxes_with(s: &MetSample, cfg: &SolverConfig) -> Result<FluxResult, FluxError> {
    s.validate()?;
    let c = &cfg.constants;
    let k = c.kappa;

    let t_k = s.t_air + 273.15;
    let p = Problem {
        s,
        c,
        zeta_max: cfg.zeta_max,
        u_eff: s.u_wind.max(cfg.wind_floor),
        t_k,
        tv: t_k * (1.0 + 0.61 * s.q_air),
        d_theta: s.t_air - s.t_sea,
        d_q: s.q_air - 0.98 * qsat_unchecked(s.t_sea, s.p_air),
    };

    let u0 = k * p.u_eff / (s.z_u / 1e-4).ln();
    let mut x = State {
        u_star: u0,
        zeta_u: 0.0,
        u10n: u0 / k * (c.z_ref / 1e-4).ln(),
    };
    let mut iterations = 0;
    let mut converged = false;
    let mut last = p.sweep(&x);

    // Plain substitution gets half the budget; the bracketed solve the rest.
    let plain_budget = cfg.max_iterations.div_ceil(2);
    while iterations < plain_budget {
        iterations += 1;
        last = p.sweep(&x);
        let step = (last.next.u_star - x.u_star).abs();
        x = last.next;
        if !x.u_star.is_finite() || x.u_star <= 0.0 {
            break;
        }
        if step < cfg.tolerance {
            converged = true;
            break;
        }
    }

    if !converged {
        let budget = (cfg.max_iterations - iterations) as usize;
        match p.solve_bracketed(cfg, x.zeta_u, budget) {
            Ok((sweep, evals)) => {
                iterations += evals as u32;
                converged = true;
                last = sweep;
            }
            Err(evals) => iterations += evals as u32,
        }
    }

    let u_star = last.next.u_star;
    let rho = air_density(s.t_air, s.q_air, s.p_air);
    let lv = latent_heat_vaporization(s.t_sea);
    let ratio = u_star / p.u_eff;
    let zeta = last.next.zeta_u;
    Ok(FluxResult {
        u_star,
        tau: rho * u_star * u_star,
        cd1000: 1000.0 * ratio * ratio,
        h_sensible: -rho * c.cp * u_star * last.theta_star,
        e_latent: -rho * lv * u_star * last.q_star,
        obukhov_l: if zeta == 0.0 {
            None
        } else {
            Some(s.z_u / zeta)
        },
        z0: last.z0,
        u10n: last.next.u10n,
        theta_star: last.theta_star,
        q_star: last.q_star,
        rho_air: rho,
        u_eff: p.u_eff,
        iterations,
        converged,
    })
}
