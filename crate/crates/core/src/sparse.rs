//! Selection of the sparse anchor substring and the shift tables derived
//! from it.
//!
//! For an ordered byte pair `(u, v)` a 2-sparse candidate is a span
//! `P[start..=end]` with `P[start] = u`, `P[end] = v` and neither byte strictly
//! inside. The anchor is the longest candidate over all pairs; ties go to the
//! candidate ending furthest right, both within a pair and across pairs.

use crate::{Pattern, ALPHABET};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SparseCandidate {
    pub u: u8,
    pub v: u8,
    pub start: usize,
    pub end: usize,
}

impl SparseCandidate {
    #[inline]
    pub fn len(&self) -> usize {
        self.end - self.start + 1
    }

    #[inline]
    pub fn is_empty(&self) -> bool {
        false
    }

    /// Longer wins; equal lengths are resolved by the larger end position.
    #[inline]
    fn beats(&self, other: &SparseCandidate) -> bool {
        (self.len(), self.end) > (other.len(), other.end)
    }
}

/// Longest 2-sparse span for the ordered pair `(u, v)`, or `None` when `v`
/// never follows `u` without an intervening `u` or `v`.
///
/// A single merge scan over the two occurrence lists. When `u == v` the
/// candidates are consecutive occurrences, plus the length-1 span if the byte
/// occurs only once.
pub fn sparse_for_pair(pattern: &Pattern, u: u8, v: u8) -> Option<SparseCandidate> {
    let mut best: Option<SparseCandidate> = None;
    let mut offer = |cand: SparseCandidate| {
        if best.is_none_or(|b| !b.beats(&cand)) {
            best = Some(cand);
        }
    };

    if u == v {
        let occ = pattern.occurrences(u);
        match occ {
            [] => {}
            [only] => offer(SparseCandidate { u, v, start: *only, end: *only }),
            _ => {
                for w in occ.windows(2) {
                    offer(SparseCandidate { u, v, start: w[0], end: w[1] });
                }
            }
        }
        return best;
    }

    let (us, vs) = (pattern.occurrences(u), pattern.occurrences(v));
    let (mut iu, mut iv) = (0, 0);
    let mut last_u = None;
    while iv < vs.len() {
        if iu < us.len() && us[iu] < vs[iv] {
            last_u = Some(us[iu]);
            iu += 1;
        } else {
            if let Some(start) = last_u.take() {
                offer(SparseCandidate { u, v, start, end: vs[iv] });
            }
            iv += 1;
        }
    }
    best
}

/// The selected anchor substring `P[start..=end]`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SparseModel {
    pub start: usize,
    pub end: usize,
    pub start_byte: u8,
    pub end_byte: u8,
    member: [bool; ALPHABET],
    rightmost: [Option<usize>; ALPHABET],
}

impl SparseModel {
    /// `L`, the anchor length.
    #[inline]
    pub fn len(&self) -> usize {
        self.end - self.start + 1
    }

    #[inline]
    pub fn is_empty(&self) -> bool {
        false
    }

    /// Whether `byte` occurs within the anchor span.
    #[inline]
    pub fn contains(&self, byte: u8) -> bool {
        self.member[byte as usize]
    }

    /// Rightmost position of `byte` inside the anchor span.
    #[inline]
    pub fn rightmost(&self, byte: u8) -> Option<usize> {
        self.rightmost[byte as usize]
    }

    fn from_candidate(pattern: &Pattern, cand: SparseCandidate) -> Self {
        let mut member = [false; ALPHABET];
        let mut rightmost = [None; ALPHABET];
        for (pos, &b) in pattern.bytes()[cand.start..=cand.end]
            .iter()
            .enumerate()
        {
            member[b as usize] = true;
            rightmost[b as usize] = Some(cand.start + pos);
        }
        Self {
            start: cand.start,
            end: cand.end,
            start_byte: cand.u,
            end_byte: cand.v,
            member,
            rightmost,
        }
    }
}

/// Evaluates every ordered pair of bytes present in the pattern and keeps the
/// best candidate. `O(n * delta^2)`.
pub fn select_sparse(pattern: &Pattern) -> SparseModel {
    let mut best: Option<SparseCandidate> = None;
    for u in pattern.distinct_bytes() {
        for v in pattern.distinct_bytes() {
            if let Some(cand) = sparse_for_pair(pattern, u, v) {
                if best.is_none_or(|b| cand.beats(&b)) {
                    best = Some(cand);
                }
            }
        }
    }
    // Every byte present in the pattern yields at least a (c, c) candidate.
    let best = best.expect("non-empty pattern has a sparse candidate");
    SparseModel::from_candidate(pattern, best)
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Hash)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
#[cfg_attr(feature = "serde", serde(rename_all = "lowercase"))]
pub enum ShiftPolicy {
    /// Constant and distance based shifts as originally published. Can skip
    /// occurrences.
    Paper,
    /// Smallest shifts consistent with the text bytes read so far.
    #[default]
    Safe,
}

impl ShiftPolicy {
    pub fn name(self) -> &'static str {
        match self {
            ShiftPolicy::Paper => "paper",
            ShiftPolicy::Safe => "safe",
        }
    }
}

impl core::str::FromStr for ShiftPolicy {
    type Err = &'static str;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "paper" => Ok(ShiftPolicy::Paper),
            "safe" => Ok(ShiftPolicy::Safe),
            _ => Err("expected `paper` or `safe`"),
        }
    }
}

/// Window shifts for the three event kinds.
///
/// * `type1[c]`: the byte `c` at the anchor end did not match.
/// * `type2[d]`: the anchor end matched, the byte `d` at the anchor start did
///   not.
/// * `type3`: both anchors matched and the window was verified.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ShiftTables {
    pub policy: ShiftPolicy,
    type1: [usize; ALPHABET],
    type2: [usize; ALPHABET],
    type3: usize,
}

impl ShiftTables {
    pub fn new(pattern: &Pattern, sparse: &SparseModel, policy: ShiftPolicy) -> Self {
        match policy {
            ShiftPolicy::Paper => Self::paper(pattern, sparse),
            ShiftPolicy::Safe => Self::safe(pattern, sparse),
        }
    }

    #[inline]
    pub fn type1(&self, c: u8) -> usize {
        self.type1[c as usize]
    }

    #[inline]
    pub fn type2(&self, d: u8) -> usize {
        self.type2[d as usize]
    }

    #[inline]
    pub fn type3(&self) -> usize {
        self.type3
    }

    pub fn type1_table(&self) -> &[usize; ALPHABET] {
        &self.type1
    }

    pub fn type2_table(&self) -> &[usize; ALPHABET] {
        &self.type2
    }

    /// `type1[end_byte]` is left at 0; a type-1 event never observes it.
    fn paper(pattern: &Pattern, sparse: &SparseModel) -> Self {
        let n = pattern.len();
        let l = sparse.len();
        let mut type1 = [n; ALPHABET];
        for c in pattern.distinct_bytes() {
            type1[c as usize] = match sparse.rightmost(c) {
                Some(pos) => sparse.end - pos,
                None => l + 1,
            };
        }
        // The end byte was observed as `c`; shift by L when the start-offset
        // byte equals it and by L + 1 otherwise.
        let mut type2 = [l + 1; ALPHABET];
        type2[sparse.end_byte as usize] = l;
        let type3 = if sparse.start_byte == sparse.end_byte { l } else { l + 1 };
        Self {
            policy: ShiftPolicy::Paper,
            type1,
            type2,
            type3,
        }
    }

    fn safe(pattern: &Pattern, sparse: &SparseModel) -> Self {
        let p = pattern.bytes();
        let (start, end) = (sparse.start, sparse.end);
        // A shift of `s` realigns the text byte seen at window offset `k` with
        // pattern offset `k - s`; once `s > k` that byte is left of the window
        // and constrains nothing.
        let end_fits = |s: usize, byte: u8| s > end || p[end - s] == byte;

        let mut type1 = [end + 1; ALPHABET];
        let mut seen = [false; ALPHABET];
        for s in 1..=end {
            let c = p[end - s];
            if !seen[c as usize] {
                seen[c as usize] = true;
                type1[c as usize] = s;
            }
        }

        let mut type2 = [0usize; ALPHABET];
        let mut type3 = 0;
        for s in 1..=end + 1 {
            if !end_fits(s, sparse.end_byte) {
                continue;
            }
            if s > start {
                for slot in type2.iter_mut().filter(|slot| **slot == 0) {
                    *slot = s;
                }
                if type3 == 0 {
                    type3 = s;
                }
                break;
            }
            let d = p[start - s];
            if type2[d as usize] == 0 {
                type2[d as usize] = s;
            }
            if type3 == 0 && d == sparse.start_byte {
                type3 = s;
            }
        }
        Self {
            policy: ShiftPolicy::Safe,
            type1,
            type2,
            type3,
        }
    }
}
