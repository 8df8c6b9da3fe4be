//! Text-side record of suffix-match lengths.

use alloc::vec;
use alloc::vec::Vec;

const EMPTY: usize = usize::MAX;

/// `get(j) = k > 0` means `T[j+1-k..=j]` equals the last `k` bytes of the
/// pattern, and (for `k < n`) the byte before that run does not extend it.
///
/// The ring form keeps one slot per pattern position, keyed by `j % n`, which
/// is enough because a verification only consults positions inside its own
/// window. The full form keeps every text position and exists for tests.
#[derive(Debug, Clone)]
pub enum MTable {
    Ring { slots: Vec<(usize, usize)> },
    Full { values: Vec<usize> },
}

impl MTable {
    pub fn ring(pattern_len: usize) -> Self {
        MTable::Ring {
            slots: vec![(EMPTY, 0); pattern_len.max(1)],
        }
    }

    pub fn full(text_len: usize) -> Self {
        MTable::Full {
            values: vec![0; text_len],
        }
    }

    /// Recorded length at text position `pos`, 0 if unset.
    #[inline]
    pub fn get(&self, pos: usize) -> usize {
        match self {
            MTable::Ring { slots } => {
                let (tag, k) = slots[pos % slots.len()];
                if tag == pos {
                    k
                } else {
                    0
                }
            }
            MTable::Full { values } => values[pos],
        }
    }

    #[inline]
    pub fn set(&mut self, pos: usize, k: usize) {
        match self {
            MTable::Ring { slots } => {
                let len = slots.len();
                slots[pos % len] = (pos, k);
            }
            MTable::Full { values } => values[pos] = k,
        }
    }

    /// Non-zero entries as `(position, length)`, ascending by position.
    pub fn entries(&self) -> Vec<(usize, usize)> {
        let mut out: Vec<(usize, usize)> = match self {
            MTable::Ring { slots } => slots
                .iter()
                .copied()
                .filter(|&(tag, k)| tag != EMPTY && k > 0)
                .collect(),
            MTable::Full { values } => values
                .iter()
                .enumerate()
                .filter(|(_, &k)| k > 0)
                .map(|(j, &k)| (j, k))
                .collect(),
        };
        out.sort_unstable();
        out
    }
}
