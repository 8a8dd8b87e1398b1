use rayon::prelude::*;

use crate::error::Result;

/// Seed of replicate `index` in a run with `base_seed`.
pub(crate) fn replicate_seed(base_seed: u64, index: usize) -> u64 {
    base_seed.wrapping_add(index as u64)
}

/// Runs `count` replicates on the current rayon pool and returns their outcomes in
/// replicate order, so the result does not depend on the number of worker threads.
pub(crate) fn run_replicates<T, F>(count: usize, base_seed: u64, f: F) -> Result<Vec<T>>
where
    T: Send,
    F: Fn(usize, u64) -> Result<T> + Sync,
{
    (0..count)
        .into_par_iter()
        .map(|i| f(i, replicate_seed(base_seed, i)))
        .collect()
}
