use rand::seq::index;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};

/// round-half-up(fraction · n)
pub fn sample_size(n: usize, fraction: f64) -> Result<usize> {
    if !(fraction > 0.0 && fraction <= 1.0) {
        return Err(Error::Argument(format!(
            "fraction must lie in (0, 1], got {fraction}"
        )));
    }
    // the epsilon keeps exact halves such as 0.35 * 10 from rounding down
    let k = (fraction * n as f64 + 0.5 + 1e-9).floor() as usize;
    Ok(k.min(n))
}

/// Sorted indices of a seeded sample without replacement.
pub fn subsample_indices(n: usize, fraction: f64, seed: u64) -> Result<Vec<usize>> {
    let k = sample_size(n, fraction)?;
    if k == n {
        return Ok((0..n).collect());
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut picked = index::sample(&mut rng, n, k).into_vec();
    picked.sort_unstable();
    Ok(picked)
}

/// Order-preserving sample of exactly round-half-up(fraction · len) items.
/// Aligned corpora stay aligned when sampled with the same seed.
pub fn subsample<T: Clone>(items: &[T], fraction: f64, seed: u64) -> Result<Vec<T>> {
    Ok(subsample_indices(items.len(), fraction, seed)?
        .into_iter()
        .map(|i| items[i].clone())
        .collect())
}
