//! Seeded Monte Carlo estimation of the joint distribution under a model.
//!
//! Hidden variables are drawn uniformly on the sphere (inverse-CDF in the
//! polar cosine, uniform azimuth). Work is cut into fixed-size batches;
//! batch `i` owns stream `i` of a counter-based generator seeded once, and
//! batch partials are merged by fixed-order pairwise summation. The result
//! is therefore bit-identical for a given `(seed, samples)` no matter how
//! many workers run the batches.

use rand::distr::{Distribution, Uniform};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use super::{sgn, LhvError, LhvModel};
use crate::stats::{JointDistribution, Scenario};

const BATCH_SIZE: u64 = 1 << 14;

/// Monte Carlo estimates with their standard errors.
///
/// The no/no cell is reported as `1 - (sum of the other three)`, so the
/// estimates sum to exactly 1; its standard error still comes from the
/// per-sample no/no products.
#[derive(Debug, Clone, PartialEq)]
pub struct SimulationResult {
    pub estimates: JointDistribution,
    /// Sample standard deviation of each cell's per-sample weight divided
    /// by sqrt(samples); zero when `samples == 1`.
    pub standard_errors: [f64; 4],
    pub samples: u64,
    pub seed: u64,
}

#[derive(Debug, Clone, Copy, Default)]
struct Accumulator {
    sum: [f64; 4],
    sum_sq: [f64; 4],
}

impl Accumulator {
    fn merge(a: &Accumulator, b: &Accumulator) -> Accumulator {
        let mut out = Accumulator::default();
        for k in 0..4 {
            out.sum[k] = a.sum[k] + b.sum[k];
            out.sum_sq[k] = a.sum_sq[k] + b.sum_sq[k];
        }
        out
    }
}

/// Fixed-order pairwise reduction; the tree shape depends only on the
/// number of batches.
fn pairwise_merge(accs: &[Accumulator]) -> Accumulator {
    match accs.len() {
        0 => Accumulator::default(),
        1 => accs[0],
        n => {
            let (left, right) = accs.split_at(n / 2);
            Accumulator::merge(&pairwise_merge(left), &pairwise_merge(right))
        }
    }
}

/// Runs `samples` draws of the shared variable and accumulates the four
/// outcome products per draw. Bit-reproducible for fixed `(seed, samples)`
/// regardless of execution parallelism.
pub fn simulate_lhv(
    model: &LhvModel,
    s: &Scenario,
    samples: u64,
    seed: u64,
) -> Result<SimulationResult, LhvError> {
    if samples == 0 {
        return Err(LhvError::ZeroSamples);
    }
    model.check_admissible(s)?;
    let (c_a, c_b) = model.coefficients(s)?;
    let a0 = s.alice.a0();
    let b0 = s.bob.a0();
    let a = s.alice.dir().components();
    let b = s.bob.dir().components();

    let n_batches = samples.div_ceil(BATCH_SIZE);
    let partials: Vec<Accumulator> = (0..n_batches)
        .into_par_iter()
        .map(|batch| {
            let start = batch * BATCH_SIZE;
            let count = BATCH_SIZE.min(samples - start);
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            rng.set_stream(batch);
            let z_dist = Uniform::new_inclusive(-1.0f64, 1.0).expect("static bounds");
            let phi_dist = Uniform::new(0.0f64, std::f64::consts::TAU).expect("static bounds");
            let mut acc = Accumulator::default();
            for _ in 0..count {
                let z = z_dist.sample(&mut rng);
                let phi = phi_dist.sample(&mut rng);
                let st = (1.0 - z * z).max(0.0).sqrt();
                let (sin_phi, cos_phi) = phi.sin_cos();
                let lam = [st * cos_phi, st * sin_phi, z];
                let pa = 0.5 * a0 + c_a * (a[0] * lam[0] + a[1] * lam[1] + a[2] * lam[2]);
                let pb = 0.5 * b0 - c_b * sgn(b[0] * lam[0] + b[1] * lam[1] + b[2] * lam[2]);
                let w = [
                    pa * pb,
                    pa * (1.0 - pb),
                    (1.0 - pa) * pb,
                    (1.0 - pa) * (1.0 - pb),
                ];
                for k in 0..4 {
                    acc.sum[k] += w[k];
                    acc.sum_sq[k] += w[k] * w[k];
                }
            }
            acc
        })
        .collect();

    let total = pairwise_merge(&partials);
    let n = samples as f64;
    let p_yy = total.sum[0] / n;
    let p_yn = total.sum[1] / n;
    let p_ny = total.sum[2] / n;
    let p_nn = 1.0 - p_yy - p_yn - p_ny;
    let mut standard_errors = [0.0f64; 4];
    if samples > 1 {
        for k in 0..4 {
            let var = ((total.sum_sq[k] - total.sum[k] * total.sum[k] / n) / (n - 1.0)).max(0.0);
            standard_errors[k] = (var / n).sqrt();
        }
    }
    Ok(SimulationResult {
        estimates: JointDistribution {
            p_yy,
            p_yn,
            p_ny,
            p_nn,
        },
        standard_errors,
        samples,
        seed,
    })
}
