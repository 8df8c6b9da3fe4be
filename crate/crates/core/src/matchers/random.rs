//! Random-order window verification.

use alloc::vec::Vec;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::{Pattern, Probe};

/// Compares aligned pairs in a uniformly random order, stopping at the first
/// mismatch.
///
/// The order comes from an incremental Fisher-Yates shuffle over a persistent
/// offset buffer, so a verification that stops after `k` comparisons only
/// draws `k` random indices. Randomness is ChaCha8 seeded from a `u64`
/// (`rand_chacha::ChaCha8Rng::seed_from_u64`), making the whole sequence of
/// inspection orders a function of the seed.
#[derive(Debug, Clone)]
pub struct RandomVerifier {
    offsets: Vec<usize>,
    inspected: usize,
    rng: ChaCha8Rng,
}

impl RandomVerifier {
    /// Offsets listed in `known` are never inspected.
    pub fn new(pattern_len: usize, known: &[usize], seed: u64) -> Self {
        Self {
            offsets: (0..pattern_len).filter(|o| !known.contains(o)).collect(),
            inspected: 0,
            rng: ChaCha8Rng::seed_from_u64(seed),
        }
    }

    pub fn verify<P: Probe + ?Sized>(
        &mut self,
        pattern: &Pattern,
        text: &[u8],
        start: usize,
        probe: &mut P,
    ) -> bool {
        let p = pattern.bytes();
        let len = self.offsets.len();
        for t in 0..len {
            let pick = self.rng.gen_range(t..len);
            self.offsets.swap(t, pick);
            let off = self.offsets[t];
            probe.read(1);
            if text[start + off] != p[off] {
                self.inspected = t + 1;
                probe.verification(t, false);
                return false;
            }
        }
        self.inspected = len;
        probe.verification(len, true);
        true
    }

    /// Offsets compared by the most recent [`verify`](Self::verify), in order.
    pub fn last_inspection_order(&self) -> &[usize] {
        &self.offsets[..self.inspected]
    }
}
