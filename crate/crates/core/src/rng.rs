//! Deterministic, labelled RNG stream derivation.
//!
//! Every random decision in the toolkit draws from a [`ChaCha12Rng`] whose
//! seed is derived from a single master seed, a static label naming the
//! stream, and a position index. Splitting is position-based, not
//! schedule-based, so parallel trials reproduce byte-identically.
//!
//! The derivation (FNV-1a over the label, then splitmix64 expansion) is not
//! cryptographic; labels are distinct compile-time constants and the streams
//! only need to be statistically independent.

use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha12Rng;

const FNV_OFFSET: u64 = 0xcbf29ce484222325;
const FNV_PRIME: u64 = 0x100000001b3;

fn fnv1a(bytes: &[u8]) -> u64 {
    let mut h = FNV_OFFSET;
    for &b in bytes {
        h ^= b as u64;
        h = h.wrapping_mul(FNV_PRIME);
    }
    h
}

fn splitmix64(state: &mut u64) -> u64 {
    *state = state.wrapping_add(0x9e3779b97f4a7c15);
    let mut z = *state;
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58476d1ce4e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d049bb133111eb);
    z ^ (z >> 31)
}

/// Derive the RNG stream `(label, index)` from `master`.
pub fn derive(master: u64, label: &str, index: u64) -> ChaCha12Rng {
    let mut state = master
        ^ fnv1a(label.as_bytes()).rotate_left(17)
        ^ index.wrapping_mul(0x2545f4914f6cdd1d);
    let mut seed = [0u8; 32];
    for chunk in seed.chunks_exact_mut(8) {
        chunk.copy_from_slice(&splitmix64(&mut state).to_le_bytes());
    }
    ChaCha12Rng::from_seed(seed)
}

/// A labelled family of streams, one per index.
#[derive(Clone, Copy, Debug)]
pub struct StreamFamily {
    pub master: u64,
    pub label: &'static str,
}

impl StreamFamily {
    pub fn new(master: u64, label: &'static str) -> Self {
        Self { master, label }
    }

    pub fn at(&self, index: u64) -> ChaCha12Rng {
        derive(self.master, self.label, index)
    }
}
