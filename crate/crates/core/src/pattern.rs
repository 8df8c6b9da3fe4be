//! Pattern representation and the suffix profile used by the verifier.

use alloc::vec;
use alloc::vec::Vec;

use crate::{PatternError, ALPHABET};

/// An immutable, non-empty byte pattern together with per-byte occurrence
/// lists.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Pattern {
    bytes: Vec<u8>,
    delta: usize,
    occ: Vec<Vec<usize>>,
}

impl Pattern {
    /// Builds the pattern and its occurrence lists in one left-to-right scan.
    pub fn new(bytes: &[u8]) -> Result<Self, PatternError> {
        if bytes.is_empty() {
            return Err(PatternError::Empty);
        }
        let mut occ = vec![Vec::new(); ALPHABET];
        let mut delta = 0;
        for (pos, &b) in bytes.iter().enumerate() {
            let list: &mut Vec<usize> = &mut occ[b as usize];
            if list.is_empty() {
                delta += 1;
            }
            list.push(pos);
        }
        Ok(Self {
            bytes: bytes.to_vec(),
            delta,
            occ,
        })
    }

    #[inline]
    pub fn bytes(&self) -> &[u8] {
        &self.bytes
    }

    #[inline]
    pub fn len(&self) -> usize {
        self.bytes.len()
    }

    /// Always false; kept for API symmetry with slices.
    #[inline]
    pub fn is_empty(&self) -> bool {
        false
    }

    /// Number of distinct byte values in the pattern.
    #[inline]
    pub fn delta(&self) -> usize {
        self.delta
    }

    /// Ascending positions at which `byte` occurs.
    #[inline]
    pub fn occurrences(&self, byte: u8) -> &[usize] {
        &self.occ[byte as usize]
    }

    #[inline]
    pub fn contains(&self, byte: u8) -> bool {
        !self.occ[byte as usize].is_empty()
    }

    /// Distinct bytes of the pattern in ascending order.
    pub fn distinct_bytes(&self) -> impl Iterator<Item = u8> + '_ {
        (0..=u8::MAX).filter(move |&b| self.contains(b))
    }

    pub fn n_profile(&self) -> NProfile {
        NProfile::new(self)
    }
}

/// `values[i]` is the length of the longest suffix of `P[..=i]` that is also a
/// suffix of `P`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NProfile {
    values: Vec<usize>,
}

impl NProfile {
    /// Computed with the Z algorithm over the reversed pattern: the Z value at
    /// mirror position `n - 1 - i` is the longest common suffix of `P[..=i]`
    /// and `P`.
    pub fn new(pattern: &Pattern) -> Self {
        let reversed: Vec<u8> = pattern.bytes().iter().rev().copied().collect();
        let z = z_array(&reversed);
        let n = z.len();
        let values = (0..n).map(|i| z[n - 1 - i]).collect();
        Self { values }
    }

    #[inline]
    pub fn get(&self, i: usize) -> usize {
        self.values[i]
    }

    pub fn as_slice(&self) -> &[usize] {
        &self.values
    }
}

/// `z[k]` is the length of the longest common prefix of `s` and `s[k..]`, with
/// `z[0] = s.len()`.
pub fn z_array(s: &[u8]) -> Vec<usize> {
    let n = s.len();
    let mut z = vec![0; n];
    if n == 0 {
        return z;
    }
    z[0] = n;
    // [left, right) is the rightmost window known to match a prefix of s.
    let (mut left, mut right) = (0, 0);
    for k in 1..n {
        let mut len = if k < right {
            core::cmp::min(right - k, z[k - left])
        } else {
            0
        };
        while k + len < n && s[len] == s[k + len] {
            len += 1;
        }
        z[k] = len;
        if k + len > right {
            left = k;
            right = k + len;
        }
    }
    z
}
