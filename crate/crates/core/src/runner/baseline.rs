use rand::Rng;

use crate::benchfn::{make_instance, FunctionId, DOMAIN_BOUND};
use crate::error::Result;
use crate::rng::{substream, Stream};

/// Uniform random search on the benchmark box; returns the incumbent after
/// each of the `budget` evaluations.
pub fn random_search(function: FunctionId, dim: usize, seed: u64, budget: usize) -> Result<Vec<f64>> {
    let instance = make_instance(function, dim, seed)?;
    let mut rng = substream(seed, &[Stream::Baseline as u64, function.number() as u64]);
    let mut best = f64::INFINITY;
    let mut out = Vec::with_capacity(budget);
    for _ in 0..budget {
        let x: Vec<f64> = (0..dim)
            .map(|_| rng.random_range(-DOMAIN_BOUND..=DOMAIN_BOUND))
            .collect();
        best = best.min(instance.evaluate(&x)?);
        out.push(best);
    }
    Ok(out)
}
