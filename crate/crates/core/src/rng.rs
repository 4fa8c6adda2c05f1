//! Seed derivation.
//!
//! Every random object is a pure function of a 64-bit seed. Child seeds are
//! derived by hashing `(parent, index)` with the SplitMix64 finalizer, so trial
//! `t` of a campaign never depends on how many trials ran before it or on
//! which worker ran it.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

const GOLDEN: u64 = 0x9E37_79B9_7F4A_7C15;

/// SplitMix64 output function.
#[inline]
pub fn mix64(mut z: u64) -> u64 {
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// Child seed number `index` of `parent`.
#[inline]
pub fn derive_seed(parent: u64, index: u64) -> u64 {
    mix64(parent ^ mix64(index.wrapping_add(1).wrapping_mul(GOLDEN)))
}

/// Hash of a seed and a coordinate pair. Used for weights that are generated
/// on demand rather than stored.
#[inline]
pub fn hash3(seed: u64, a: u64, b: u64) -> u64 {
    mix64(derive_seed(seed, a) ^ b.wrapping_mul(GOLDEN).rotate_left(17))
}

/// Stream tags keep the weights, the mask and auxiliary draws of one trial
/// independent of each other.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Stream {
    Weights = 0,
    Mask = 1,
    Redraw = 2,
    Aux = 3,
}

pub fn stream_seed(seed: u64, stream: Stream) -> u64 {
    derive_seed(seed, 0x5354_0000 | stream as u64)
}

pub fn rng_from_seed(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}
