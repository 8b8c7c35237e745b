//! Seeded randomness.
//!
//! Every random stream in the crate is a ChaCha8 generator (`rand_chacha::ChaCha8Rng`)
//! seeded from a `u64`. ChaCha output is fully specified, so streams are identical across
//! platforms. Independent sub-streams (per worker chunk, per instance) get their seed from
//! [`derive_seed`], a SplitMix64 mix of the parent seed and the stream index.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

pub type FeedRng = ChaCha8Rng;

pub fn rng_from_seed(seed: u64) -> FeedRng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// SplitMix64 finalizer applied to `seed + (stream + 1) * golden_gamma`.
pub fn derive_seed(seed: u64, stream: u64) -> u64 {
    let mut z = seed.wrapping_add(stream.wrapping_add(1).wrapping_mul(0x9E37_79B9_7F4A_7C15));
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}
