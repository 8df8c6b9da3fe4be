//! Apostolico-Giancarlo window verification with a persistent M-table.

use crate::matchers::MTable;
use crate::{NProfile, Pattern, Probe};

/// Decides whether `text[start..start + n]` equals the pattern, scanning right
/// to left.
///
/// Positions where the M-table holds a recorded suffix-match length are not
/// re-read: comparing that length `k` with `N_i` either proves a mismatch,
/// proves a full match, or lets the scan jump `k` positions. Pattern offsets in
/// `known` were already compared equal by the caller and cost no read. On exit
/// the matched suffix length is stored at the window's last position.
pub fn verify_ag<P: Probe + ?Sized>(
    pattern: &Pattern,
    nprof: &NProfile,
    mtable: &mut MTable,
    text: &[u8],
    start: usize,
    known: &[usize],
    probe: &mut P,
) -> bool {
    let p = pattern.bytes();
    let n = p.len();
    let mut matched = 0;
    // `i` is one past the offset under inspection; everything at or after it
    // is known to match.
    let mut i = n;
    let success = loop {
        if i == 0 {
            break true;
        }
        let at = i - 1;
        let recorded = mtable.get(start + at);
        if recorded > 0 {
            let suffix = nprof.get(at);
            if recorded < suffix {
                i -= recorded;
                break false;
            } else if suffix == i {
                i = 0;
                break true;
            } else if recorded > suffix {
                i -= suffix;
                break false;
            } else {
                i -= recorded;
            }
        } else if known.contains(&at) {
            i -= 1;
        } else {
            probe.read(1);
            if text[start + at] == p[at] {
                matched += 1;
                i -= 1;
            } else {
                break false;
            }
        }
    };
    let suffix_len = if success { n } else { n - i };
    mtable.set(start + n - 1, suffix_len);
    probe.verification(matched, success);
    success
}
