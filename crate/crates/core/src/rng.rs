//! Counter-based randomness.
//!
//! Every stochastic decision is a pure function of a 64-bit key and a
//! counter, so results never depend on iteration order or thread layout.
//! The stream is SplitMix64: output `i` is the SplitMix64 finaliser applied
//! to `key + (i + 1) * GOLDEN_GAMMA`.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

const GOLDEN_GAMMA: u64 = 0x9e37_79b9_7f4a_7c15;

/// SplitMix64 output function.
#[inline]
pub fn mix64(mut z: u64) -> u64 {
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    z ^ (z >> 31)
}

/// Derives an independent 64-bit seed from `(seed, index)`.
#[inline]
pub fn derive_seed(seed: u64, index: u64) -> u64 {
    mix64(
        mix64(seed ^ 0x5eed_0fc0_ffee)
            .wrapping_add(index.wrapping_add(1).wrapping_mul(GOLDEN_GAMMA)),
    )
}

/// Seed of trial `t` under master seed `master`.
#[inline]
pub fn trial_seed(master: u64, t: u64) -> u64 {
    derive_seed(master, t)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CounterRng {
    key: u64,
}

impl CounterRng {
    pub fn new(seed: u64) -> Self {
        CounterRng { key: mix64(seed) }
    }

    #[inline]
    pub fn bits(&self, counter: u64) -> u64 {
        mix64(
            self.key
                .wrapping_add(counter.wrapping_add(1).wrapping_mul(GOLDEN_GAMMA)),
        )
    }

    /// Uniform in `[0, 1)` with 53 bits of precision.
    #[inline]
    pub fn uniform(&self, counter: u64) -> f64 {
        (self.bits(counter) >> 11) as f64 * (1.0 / (1u64 << 53) as f64)
    }
}

/// Sequential generator for algorithms that consume an unbounded stream
/// (pairing, edge swaps). ChaCha8 keeps the sequence stable across platforms.
pub fn sequential(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}
