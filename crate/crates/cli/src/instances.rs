//! Seeded random yes-instances of 3-Partition.

use anyhow::{bail, Result};
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use mink_core::ThreePartitionInstance;

/// `n` triplets, each summing to `target` with every value strictly between
/// `target/4` and `target/2`, shuffled. Reproducible for a given seed.
pub fn random_yes_instance(n: usize, target: u64, seed: u64) -> Result<ThreePartitionInstance> {
    // x in (T/4, T/2) as integers: 4x > T and 2x < T
    let lo = target / 4 + 1;
    let hi = (target - 1) / 2;
    if n == 0 || lo > hi || 3 * lo > target || 3 * hi < target {
        bail!("no triplet of values strictly between T/4 and T/2 sums to T = {target}");
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut xs = Vec::with_capacity(3 * n);
    while xs.len() < 3 * n {
        let a = rng.gen_range(lo..=hi);
        let b = rng.gen_range(lo..=hi);
        let Some(c) = target.checked_sub(a + b) else { continue };
        if (lo..=hi).contains(&c) {
            xs.extend([a, b, c]);
        }
    }
    for i in (1..xs.len()).rev() {
        xs.swap(i, rng.gen_range(0..=i));
    }
    Ok(ThreePartitionInstance::new(n, xs))
}
