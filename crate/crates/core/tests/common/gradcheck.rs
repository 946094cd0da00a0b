//! Central finite-difference check of the analytic MLP gradient.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use seaflux::{init_model, loss_and_gradient, FeatureVector, MlpModel};

/// Finite step used for the differences.
pub const STEP: f64 = 1e-5;

/// Inputs whose hidden pre-activation lies this close to the ReLU kink are
/// redrawn: a central difference straddling the kink does not estimate the
/// derivative.
const KINK_MARGIN: f64 = 1e-3;

pub fn random_feature(rng: &mut ChaCha8Rng) -> FeatureVector {
    FeatureVector {
        sar_wind: rng.random_range(0.0..25.0),
        stability: rng.random_range(0..3) as f64,
        precip: if rng.random_bool(0.7) {
            0.0
        } else {
            rng.random_range(0.0..20.0)
        },
    }
}

fn near_kink(m: &MlpModel, f: &FeatureVector) -> bool {
    let x = m.normalize(f);
    m.w1.iter().zip(&m.b1).any(|(w, b)| {
        let z = w[0] * x[0] + w[1] * x[1] + w[2] * x[2] + b;
        z.abs() < KINK_MARGIN
    })
}

fn mse(m: &MlpModel, batch: &[(FeatureVector, f64)]) -> f64 {
    batch
        .iter()
        .map(|(f, t)| (m.forward(f) - t).powi(2))
        .sum::<f64>()
        / batch.len() as f64
}

/// Every parameter as a mutable reference, in a fixed order.
pub fn params_mut(m: &mut MlpModel) -> Vec<&mut f64> {
    let mut v: Vec<&mut f64> = m.w1.iter_mut().flat_map(|r| r.iter_mut()).collect();
    v.extend(m.b1.iter_mut());
    v.extend(m.w2.iter_mut());
    v.push(&mut m.b2);
    v
}

/// Relative error `‖g_analytic − g_numeric‖ / max(‖g_analytic‖, ‖g_numeric‖)`
/// for a seeded model with random biases and a random 16-sample batch.
pub fn relative_error(seed: u64) -> f64 {
    let mut rng = ChaCha8Rng::seed_from_u64(1000 + seed);
    let mut m = init_model(seed);
    m.norm_mean = [10.0, 1.0, 3.0];
    m.norm_std = [5.0, 0.8, 5.0];
    for b in &mut m.b1 {
        *b = rng.random_range(-0.3..0.3);
    }
    m.b2 = rng.random_range(-1.0..1.0);
    let batch: Vec<_> = (0..16)
        .map(|_| loop {
            let f = random_feature(&mut rng);
            if !near_kink(&m, &f) {
                break (f, rng.random_range(0.0..20.0));
            }
        })
        .collect();

    let (_, g) = loss_and_gradient(&m, &batch).unwrap();
    let mut analytic: Vec<f64> = g.w1.iter().flatten().copied().collect();
    analytic.extend(&g.b1);
    analytic.extend(&g.w2);
    analytic.push(g.b2);

    let numeric: Vec<f64> = (0..analytic.len())
        .map(|k| {
            let mut plus = m.clone();
            *params_mut(&mut plus)[k] += STEP;
            let mut minus = m.clone();
            *params_mut(&mut minus)[k] -= STEP;
            (mse(&plus, &batch) - mse(&minus, &batch)) / (2.0 * STEP)
        })
        .collect();

    let norm = |v: &[f64]| v.iter().map(|x| x * x).sum::<f64>().sqrt();
    let diff: Vec<f64> = analytic.iter().zip(&numeric).map(|(a, b)| a - b).collect();
    norm(&diff) / norm(&analytic).max(norm(&numeric))
}
