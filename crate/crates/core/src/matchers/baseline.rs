//! Reference matchers: the exhaustive oracle and Horspool.

use alloc::vec::Vec;

use crate::{Pattern, Probe, ALPHABET};

/// Checks every placement left to right, comparing each window right to left.
pub fn naive_positions<P: Probe + ?Sized>(pattern: &Pattern, text: &[u8], probe: &mut P) -> Vec<usize> {
    let p = pattern.bytes();
    let n = p.len();
    let mut out = Vec::new();
    if n > text.len() {
        return out;
    }
    for i in 0..=text.len() - n {
        let mut j = n;
        while j > 0 {
            probe.read(1);
            if text[i + j - 1] != p[j - 1] {
                break;
            }
            j -= 1;
        }
        if j == 0 {
            out.push(i);
        }
    }
    out
}

pub fn horspool_table(p: &[u8]) -> [usize; ALPHABET] {
    let n = p.len();
    let mut table = [n; ALPHABET];
    for (i, &b) in p[..n - 1].iter().enumerate() {
        table[b as usize] = n - 1 - i;
    }
    table
}

/// Horspool's bad-character search keyed on the window's last byte.
pub fn horspool_positions<P: Probe + ?Sized>(pattern: &Pattern, text: &[u8], probe: &mut P) -> Vec<usize> {
    let p = pattern.bytes();
    let n = p.len();
    let mut out = Vec::new();
    if n > text.len() {
        return out;
    }
    let table = horspool_table(p);
    let mut i = 0;
    while i + n <= text.len() {
        let last = text[i + n - 1];
        probe.read(1);
        if last == p[n - 1] {
            let mut j = n - 1;
            while j > 0 {
                probe.read(1);
                if text[i + j - 1] != p[j - 1] {
                    break;
                }
                j -= 1;
            }
            if j == 0 {
                out.push(i);
            }
        }
        i += table[last as usize];
    }
    out
}
