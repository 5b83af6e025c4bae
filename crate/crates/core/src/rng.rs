//! Deterministic, parallel-safe random substreams.
//!
//! Every trial derives its own ChaCha stream from the campaign seed and the
//! trial coordinates, so results do not depend on worker count or execution
//! order. Derivation mixes the coordinates through a splitmix-style avalanche
//! rather than consuming a shared sequential generator.

use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

/// splitmix64 finalizer; every input bit avalanches across the output.
pub fn mix64(mut z: u64) -> u64 {
    z = z.wrapping_add(0x9e37_79b9_7f4a_7c15);
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    z ^ (z >> 31)
}

/// Stream labels separating the independent random uses of one trial.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum StreamLabel {
    /// Drop geometry (positions, LOS states, shadowing).
    Drop,
    /// Everything consumed inside one (drop, realization, arm) trial.
    Trial,
    /// Stand-alone consumers (self-test noise checks and the like).
    Aux,
}

impl StreamLabel {
    fn tag(self) -> u64 {
        match self {
            StreamLabel::Drop => 0xD209,
            StreamLabel::Trial => 0x7214,
            StreamLabel::Aux => 0xA001,
        }
    }
}

/// Derives a ChaCha stream keyed by `(seed, label, coords)`.
pub fn substream(seed: u64, label: StreamLabel, coords: &[u64]) -> ChaCha8Rng {
    let mut state = mix64(seed ^ mix64(label.tag()));
    for &c in coords {
        state = mix64(state ^ mix64(c.wrapping_add(0x9e37_79b9_7f4a_7c15)));
    }
    let mut key = [0u8; 32];
    let mut word = state;
    for chunk in key.chunks_mut(8) {
        word = mix64(word);
        chunk.copy_from_slice(&word.to_le_bytes());
    }
    ChaCha8Rng::from_seed(key)
}
