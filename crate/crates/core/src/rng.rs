//! Counter-based seed derivation.
//!
//! Every random decision in a trial draws from its own substream, keyed by
//! the trial seed plus a list of tags (stream kind, function, step). Two
//! substreams never share state, so changing how many draws one consumer
//! makes cannot shift another consumer's numbers.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

/// Stream kinds used by the experiment runner.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
#[repr(u64)]
pub enum Stream {
    Instance = 1,
    Design = 2,
    GpRestarts = 3,
    AfCandidates = 4,
    ScheduleCoin = 5,
    Baseline = 6,
}

fn splitmix64(mut z: u64) -> u64 {
    z = z.wrapping_add(0x9E37_79B9_7F4A_7C15);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// Fold `tags` into `master` to get an independent 64-bit seed.
pub fn derive_seed(master: u64, tags: &[u64]) -> u64 {
    tags.iter()
        .fold(splitmix64(master), |acc, &t| splitmix64(acc ^ splitmix64(t)))
}

pub fn substream(master: u64, tags: &[u64]) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(derive_seed(master, tags))
}
