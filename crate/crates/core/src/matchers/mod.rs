//! The sliding-window search driver and the matchers it dispatches to.

mod ag;
mod baseline;
mod mtable;
mod random;

use alloc::vec::Vec;

pub use ag::verify_ag;
pub use baseline::horspool_table;
pub use mtable::MTable;
pub use random::RandomVerifier;

pub use crate::metrics::EventKind;
use crate::{
    select_sparse, Counters, NProfile, NoProbe, Pattern, PatternError, Probe, ShiftPolicy,
    ShiftTables, SparseModel,
};

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Hash)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
#[cfg_attr(feature = "serde", serde(rename_all = "lowercase"))]
pub enum Algorithm {
    /// Sparse-anchor search with Apostolico-Giancarlo verification.
    #[default]
    A,
    /// Sparse-anchor search with random-order verification.
    B,
    Naive,
    Horspool,
}

impl Algorithm {
    pub fn name(self) -> &'static str {
        match self {
            Algorithm::A => "a",
            Algorithm::B => "b",
            Algorithm::Naive => "naive",
            Algorithm::Horspool => "horspool",
        }
    }

    fn uses_sparse_anchor(self) -> bool {
        matches!(self, Algorithm::A | Algorithm::B)
    }
}

impl core::str::FromStr for Algorithm {
    type Err = &'static str;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "a" | "A" => Ok(Algorithm::A),
            "b" | "B" => Ok(Algorithm::B),
            "naive" => Ok(Algorithm::Naive),
            "horspool" => Ok(Algorithm::Horspool),
            _ => Err("expected one of `a`, `b`, `naive`, `horspool`"),
        }
    }
}

/// `policy` only affects algorithms A and B; `seed` only affects B.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Hash)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct SearchConfig {
    pub algorithm: Algorithm,
    pub policy: ShiftPolicy,
    pub seed: u64,
}

impl SearchConfig {
    pub fn new(algorithm: Algorithm, policy: ShiftPolicy, seed: u64) -> Self {
        Self { algorithm, policy, seed }
    }
}

#[derive(Debug, Clone, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct MatchReport {
    /// Ascending 0-based start offsets.
    pub occurrences: Vec<usize>,
    pub counters: Counters,
    pub config: SearchConfig,
    /// Set for paper-policy sparse searches, which may miss occurrences.
    pub known_incomplete: bool,
}

/// Outcome of reading a window's anchor bytes.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Classification {
    pub kind: EventKind,
    /// Byte at the anchor end offset.
    pub c: u8,
    /// Byte at the anchor start offset; `None` when it was not read.
    pub d: Option<u8>,
    pub reads: usize,
}

/// Reads the anchor end byte, and the anchor start byte only if the end
/// matched. A single-byte anchor decides type 1 versus type 3 with one read.
pub fn classify_event(text: &[u8], window_start: usize, sparse: &SparseModel) -> Classification {
    let c = text[window_start + sparse.end];
    if c != sparse.end_byte {
        return Classification { kind: EventKind::Type1, c, d: None, reads: 1 };
    }
    if sparse.start == sparse.end {
        return Classification { kind: EventKind::Type3, c, d: Some(c), reads: 1 };
    }
    let d = text[window_start + sparse.start];
    let kind = if d != sparse.start_byte { EventKind::Type2 } else { EventKind::Type3 };
    Classification { kind, c, d: Some(d), reads: 2 }
}

pub fn naive_search(pattern: &Pattern, text: &[u8]) -> MatchReport {
    baseline_report(pattern, text, Algorithm::Naive)
}

pub fn horspool_search(pattern: &Pattern, text: &[u8]) -> MatchReport {
    baseline_report(pattern, text, Algorithm::Horspool)
}

fn baseline_report(pattern: &Pattern, text: &[u8], algorithm: Algorithm) -> MatchReport {
    let mut counters = Counters::new();
    let occurrences = match algorithm {
        Algorithm::Horspool => baseline::horspool_positions(pattern, text, &mut counters),
        _ => baseline::naive_positions(pattern, text, &mut counters),
    };
    MatchReport {
        occurrences,
        counters,
        config: SearchConfig { algorithm, ..SearchConfig::default() },
        known_incomplete: false,
    }
}

/// A preprocessed pattern: N-profile, sparse anchor, and both shift tables.
/// Immutable; one `Matcher` can serve any number of concurrent searches.
#[derive(Debug, Clone)]
pub struct Matcher {
    pattern: Pattern,
    nprofile: NProfile,
    sparse: SparseModel,
    paper: ShiftTables,
    safe: ShiftTables,
}

impl Matcher {
    pub fn new(pattern: &[u8]) -> Result<Self, PatternError> {
        Ok(Self::from_pattern(Pattern::new(pattern)?))
    }

    pub fn from_pattern(pattern: Pattern) -> Self {
        let nprofile = pattern.n_profile();
        let sparse = select_sparse(&pattern);
        let paper = ShiftTables::new(&pattern, &sparse, ShiftPolicy::Paper);
        let safe = ShiftTables::new(&pattern, &sparse, ShiftPolicy::Safe);
        Self { pattern, nprofile, sparse, paper, safe }
    }

    pub fn pattern(&self) -> &Pattern {
        &self.pattern
    }

    pub fn nprofile(&self) -> &NProfile {
        &self.nprofile
    }

    pub fn sparse(&self) -> &SparseModel {
        &self.sparse
    }

    pub fn tables(&self, policy: ShiftPolicy) -> &ShiftTables {
        match policy {
            ShiftPolicy::Paper => &self.paper,
            ShiftPolicy::Safe => &self.safe,
        }
    }

    /// Instrumented search.
    pub fn search(&self, text: &[u8], config: &SearchConfig) -> MatchReport {
        let mut counters = Counters::new();
        let occurrences = self.search_with(text, config, &mut counters);
        MatchReport {
            occurrences,
            counters,
            config: *config,
            known_incomplete: config.algorithm.uses_sparse_anchor()
                && config.policy == ShiftPolicy::Paper,
        }
    }

    /// Occurrences only, without instrumentation.
    pub fn find_all(&self, text: &[u8], config: &SearchConfig) -> Vec<usize> {
        self.search_with(text, config, &mut NoProbe)
    }

    pub fn search_with<P: Probe + ?Sized>(
        &self,
        text: &[u8],
        config: &SearchConfig,
        probe: &mut P,
    ) -> Vec<usize> {
        match config.algorithm {
            Algorithm::Naive => baseline::naive_positions(&self.pattern, text, probe),
            Algorithm::Horspool => baseline::horspool_positions(&self.pattern, text, probe),
            Algorithm::A | Algorithm::B => {
                let mut mtable = MTable::ring(self.pattern.len());
                self.sparse_search(text, config, &mut mtable, probe)
            }
        }
    }

    /// The sparse-anchor driver with a caller-supplied M-table (use
    /// [`MTable::full`] to inspect every recorded entry afterwards). Algorithm
    /// B ignores the table. Baseline algorithms are rejected with an empty
    /// result.
    pub fn sparse_search<P: Probe + ?Sized>(
        &self,
        text: &[u8],
        config: &SearchConfig,
        mtable: &mut MTable,
        probe: &mut P,
    ) -> Vec<usize> {
        let mut out = Vec::new();
        let n = self.pattern.len();
        if n > text.len() || !config.algorithm.uses_sparse_anchor() {
            return out;
        }
        let sparse = &self.sparse;
        let tables = self.tables(config.policy);
        let anchors = [sparse.start, sparse.end];
        let known: &[usize] = if sparse.start == sparse.end { &anchors[1..] } else { &anchors };
        let mut random = match config.algorithm {
            Algorithm::B => Some(RandomVerifier::new(n, known, config.seed)),
            _ => None,
        };

        let mut i = 0;
        while i + n <= text.len() {
            let event = classify_event(text, i, sparse);
            probe.read(event.reads);
            probe.event(event.kind);
            let shift = match event.kind {
                EventKind::Type1 => tables.type1(event.c),
                EventKind::Type2 => tables.type2(event.d.unwrap_or(event.c)),
                EventKind::Type3 => {
                    let found = match random.as_mut() {
                        Some(v) => v.verify(&self.pattern, text, i, probe),
                        None => verify_ag(&self.pattern, &self.nprofile, mtable, text, i, known, probe),
                    };
                    if found {
                        out.push(i);
                    }
                    tables.type3()
                }
            };
            debug_assert!(shift >= 1, "zero shift on {:?}", event);
            i += shift;
            if i + n <= text.len() {
                probe.shift(event.kind, shift);
            }
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cfg(algorithm: Algorithm, policy: ShiftPolicy) -> SearchConfig {
        SearchConfig::new(algorithm, policy, 7)
    }

    #[test]
    fn classify_trace() {
        let m = Matcher::new(b"cabab").unwrap();
        let t = b"cababcabab";
        let e = classify_event(t, 0, m.sparse());
        assert_eq!((e.kind, e.c, e.d), (EventKind::Type3, b'b', Some(b'b')));
        let e = classify_event(t, 3, m.sparse());
        assert_eq!((e.kind, e.c, e.d), (EventKind::Type2, b'b', Some(b'c')));
        let e = classify_event(t, 1, m.sparse());
        assert_eq!((e.kind, e.d, e.reads), (EventKind::Type1, None, 1));
    }

    #[test]
    fn safe_policy_finds_both() {
        let m = Matcher::new(b"cabab").unwrap();
        let r = m.search(b"cababcabab", &cfg(Algorithm::A, ShiftPolicy::Safe));
        assert_eq!(r.occurrences, [0, 5]);
        assert_eq!(r.counters.events.type3, 2);
        assert_eq!(r.counters.events.total(), 2);
        assert_eq!(r.counters.total_shift, 5);
        assert!(!r.known_incomplete);
    }

    #[test]
    fn paper_policy_misses_second() {
        let m = Matcher::new(b"cabab").unwrap();
        let r = m.search(b"cababcabab", &cfg(Algorithm::A, ShiftPolicy::Paper));
        assert_eq!(r.occurrences, [0]);
        assert_eq!(r.counters.events.type3, 1);
        assert_eq!(r.counters.events.type2, 1);
        assert_eq!(r.counters.shifts.get(&3), Some(&1));
        assert!(r.known_incomplete);
    }

    #[test]
    fn degenerate_inputs() {
        for policy in [ShiftPolicy::Safe, ShiftPolicy::Paper] {
            for algo in [Algorithm::A, Algorithm::B] {
                let m = Matcher::new(b"a").unwrap();
                assert_eq!(m.find_all(b"aaa", &cfg(algo, policy)), [0, 1, 2]);
                let m = Matcher::new(b"zz").unwrap();
                let r = m.search(b"aaaa", &cfg(algo, policy));
                assert!(r.occurrences.is_empty());
                // 'a' never occurs in the pattern, so both policies shift by 2.
                assert_eq!(r.counters.events.type1, 2);
                assert_eq!(r.counters.events.total(), 2);
                let r = m.search(b"z", &cfg(algo, policy));
                assert!(r.occurrences.is_empty());
                assert_eq!(r.counters, Counters::new());
            }
        }
    }

    #[test]
    fn baselines_through_matcher() {
        let m = Matcher::new(b"cabab").unwrap();
        for algo in [Algorithm::Naive, Algorithm::Horspool] {
            assert_eq!(m.find_all(b"cababcabab", &cfg(algo, ShiftPolicy::Safe)), [0, 5]);
        }
        assert_eq!(naive_search(m.pattern(), b"cababcabab").occurrences, [0, 5]);
        assert_eq!(horspool_search(m.pattern(), b"cababcabab").occurrences, [0, 5]);
    }
}
