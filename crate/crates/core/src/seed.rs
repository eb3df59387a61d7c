//! Deterministic seed derivation.
//!
//! Every random stream in the crate is keyed by `(master, purpose, index)`
//! so results never depend on evaluation order or thread count.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

const GOLDEN: u64 = 0x9E37_79B9_7F4A_7C15;

/// SplitMix64 finalizer.
#[inline]
fn mix64(mut z: u64) -> u64 {
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// FNV-1a over the purpose tag.
fn tag_hash(tag: &str) -> u64 {
    tag.bytes().fold(0xCBF2_9CE4_8422_2325, |h, b| {
        (h ^ u64::from(b)).wrapping_mul(0x0000_0100_0000_01B3)
    })
}

/// Pure function of its arguments; identical on every platform.
pub fn derive_seed(master: u64, purpose: &str, index: u64) -> u64 {
    let keyed = mix64(master.wrapping_add(GOLDEN) ^ mix64(tag_hash(purpose)));
    mix64(keyed ^ mix64(index.wrapping_add(1).wrapping_mul(GOLDEN)))
}

/// Seeded generator used by every stochastic component.
pub fn rng_from_seed(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SeedPolicy {
    pub master: u64,
}

impl SeedPolicy {
    pub fn new(master: u64) -> Self {
        Self { master }
    }

    pub fn child(&self, purpose: &str, index: u64) -> u64 {
        derive_seed(self.master, purpose, index)
    }

    pub fn rng(&self, purpose: &str, index: u64) -> ChaCha8Rng {
        rng_from_seed(self.child(purpose, index))
    }
}
