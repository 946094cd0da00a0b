mod common;

use common::oracle::{self, OracleInput};
use seaflux::{compute_fluxes, saturation_specific_humidity, wind_to_10m_neutral, MetSample};

fn sample(u: f64, z: f64, t_air: f64, t_sea: f64, q: f64) -> MetSample {
    MetSample {
        u_wind: u,
        z_u: z,
        t_air,
        z_t: z,
        t_sea,
        p_air: 1013.0,
        q_air: q,
        hs: None,
        tp: None,
    }
}

fn rel(a: f64, b: f64) -> f64 {
    ((a - b) / b).abs()
}

#[test]
fn worked_example_matches_damped_oracle() {
    let s = sample(10.0, 4.0, 18.0, 20.0, 0.010);
    let r = compute_fluxes(&s).unwrap();
    let o = oracle::solve(
        &OracleInput {
            u: 10.0,
            z_u: 4.0,
            t_air: 18.0,
            z_t: 4.0,
            t_sea: 20.0,
            p: 1013.0,
            q: 0.010,
        },
        400,
        0.5,
    );
    assert!(r.converged);
    for (a, b) in [
        (r.u_star, o.u_star),
        (r.tau, o.tau),
        (r.h_sensible, o.h),
        (r.e_latent, o.e),
    ] {
        assert!(rel(a, b) < 1e-3, "{a} vs {b}");
    }
}

#[test]
fn neutral_solution_matches_bisection() {
    for z in [4.0, 10.0] {
        let q = 0.98 * saturation_specific_humidity(15.0, 1013.0).unwrap();
        let r = compute_fluxes(&sample(8.0, z, 15.0, 15.0, q)).unwrap();
        let (us, z0, u10n) = oracle::neutral_bisection(8.0, z);
        assert_eq!(r.h_sensible, 0.0);
        assert_eq!(r.e_latent, 0.0);
        assert!(rel(r.u_star, us) < 1e-8, "{} vs {us}", r.u_star);
        assert!(rel(r.z0, z0) < 1e-6);
        assert!((r.u10n - u10n).abs() < 1e-6);
        assert!(rel(r.u10n, wind_to_10m_neutral(r.u_eff, z, r.z0).unwrap()) < 1e-9);
    }
}

#[test]
fn heat_flux_signs_follow_gradients() {
    let qs20 = saturation_specific_humidity(20.0, 1013.0).unwrap();
    for u in [1.0, 5.0, 12.0] {
        let up = compute_fluxes(&sample(u, 4.0, 18.0, 20.0, 0.7 * qs20)).unwrap();
        assert!(up.h_sensible > 0.0 && up.e_latent > 0.0);
        let down = compute_fluxes(&sample(u, 4.0, 22.0, 20.0, 0.98 * qs20 + 0.003)).unwrap();
        assert!(down.h_sensible < 0.0 && down.e_latent < 0.0);
    }
}

#[test]
fn invariants_hold_on_random_samples() {
    use rand::{Rng, SeedableRng};
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(77);
    for _ in 0..2000 {
        let t_sea: f64 = rng.random_range(0.0..30.0);
        let t_air = t_sea - rng.random_range(-5.0..5.0);
        let qs = saturation_specific_humidity(t_air, 1010.0).unwrap();
        let s = MetSample {
            u_wind: rng.random_range(0.0..25.0),
            z_u: rng.random_range(2.0..20.0),
            t_air,
            z_t: rng.random_range(2.0..20.0),
            t_sea,
            p_air: 1010.0,
            q_air: rng.random_range(0.3..1.0) * qs,
            hs: None,
            tp: None,
        };
        let r = compute_fluxes(&s).unwrap();
        assert!(r.converged && r.iterations <= 50, "{s:?}");
        assert!(r.u_star >= 0.0 && r.z0 > 0.0);
        assert!(rel(r.tau, r.rho_air * r.u_star * r.u_star) < 1e-12);
        assert!(rel(r.cd1000, 1000.0 * (r.u_star / r.u_eff).powi(2)) < 1e-12);
    }
}
