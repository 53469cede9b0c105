//! Seed plumbing.
//!
//! Every randomized routine in this crate takes a plain `u64` seed and turns
//! it into one or more ChaCha streams. Parallel code never shares an RNG:
//! each unit of work (an estimation iteration, a node in a batch, a
//! repetition) derives its own stream from `(seed, index)`, so results do
//! not depend on how the work is scheduled.

use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

/// Deterministic RNG from a bare seed.
pub fn seeded_rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// RNG for work unit `index` under `seed`.
///
/// Uses the ChaCha stream counter, so streams for different indices are
/// independent and the mapping is stable across thread counts.
pub fn indexed_rng(seed: u64, index: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(index);
    rng
}

/// Derive a child seed for work unit `index`.
///
/// SplitMix64 finalizer over the master seed and index. Used where a whole
/// sub-computation (not just one RNG) needs its own seed, e.g. one seed per
/// node in a k-way ordering.
pub fn derive_seed(seed: u64, index: u64) -> u64 {
    let mut z = seed ^ index.wrapping_mul(0x9E37_79B9_7F4A_7C15);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}
