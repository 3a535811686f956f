//! Seeded Monte Carlo estimate of `μ(S)` for a predicate `S`.
//!
//! Samples are drawn in fixed chunks of `CHUNK`. Chunk `k` uses a ChaCha8
//! generator seeded with the master seed on stream `k`, so the estimate does
//! not depend on the number of worker threads.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::weighted::WeightedAliasIndex;
use rand_distr::Distribution;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::measure::{Density, SourceMeasure};

pub const MIN_SAMPLES: usize = 1000;
const CHUNK: usize = 1 << 16;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct McEstimate {
    pub estimate: f64,
    /// Sample standard deviation of the indicator over `√samples`.
    pub std_error: f64,
}

pub fn mc_integrate<P>(measure: &SourceMeasure, predicate: P, samples: usize, seed: u64) -> Result<McEstimate>
where
    P: Fn(&[f64]) -> bool + Sync,
{
    if samples < MIN_SAMPLES {
        return Err(Error::invalid(format!(
            "at least {MIN_SAMPLES} samples required, got {samples}"
        )));
    }
    let bounds = measure.bounds();
    let alias = match measure.density() {
        Density::Uniform => None,
        Density::Grid(g) => Some((
            WeightedAliasIndex::new(g.values().to_vec())
                .map_err(|e| Error::invalid(format!("density cannot be sampled: {e}")))?,
            g.shape().to_vec(),
        )),
    };
    let chunks = samples.div_ceil(CHUNK);
    let hits: u64 = (0..chunks)
        .into_par_iter()
        .map(|k| {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            rng.set_stream(k as u64);
            let count = CHUNK.min(samples - k * CHUNK);
            let mut x = vec![0.0; bounds.len()];
            let mut hits = 0u64;
            for _ in 0..count {
                match &alias {
                    None => {
                        for (xi, &(lo, hi)) in x.iter_mut().zip(bounds) {
                            *xi = lo + (hi - lo) * rng.random::<f64>();
                        }
                    }
                    Some((alias, shape)) => {
                        let mut cell = alias.sample(&mut rng);
                        for ((xi, &(lo, hi)), &m) in x.iter_mut().zip(bounds).zip(shape) {
                            let idx = cell % m;
                            cell /= m;
                            let h = (hi - lo) / m as f64;
                            *xi = lo + h * (idx as f64 + rng.random::<f64>());
                        }
                    }
                }
                hits += u64::from(predicate(&x));
            }
            hits
        })
        .sum();
    let n = samples as f64;
    let p = hits as f64 / n;
    let var = n / (n - 1.0) * p * (1.0 - p);
    Ok(McEstimate {
        estimate: p,
        std_error: (var / n).sqrt(),
    })
}
