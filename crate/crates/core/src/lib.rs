//! Exact string matching anchored on the longest 2-sparse substring of the
//! pattern.
//!
//! A pattern is preprocessed into a [`SparseModel`]: the longest substring
//! `P[start..=end]` whose first and last bytes occur nowhere strictly inside
//! it. The search slides a window over the text and inspects only the two
//! anchor bytes of that substring before deciding whether to shift or to run a
//! full verification. Two verifiers are provided: an Apostolico-Giancarlo
//! verifier that reuses suffix-match lengths across invocations, and a
//! random-order verifier driven by a seeded generator.
//!
//! Two shift policies exist. [`ShiftPolicy::Safe`] (the default) uses shifts
//! derived from the text bytes actually known at the time of the shift and is
//! complete. [`ShiftPolicy::Paper`] reproduces the original constant-based
//! shift rules and is known to skip occurrences on some inputs.
//!
//! All positions and offsets in this crate are 0-based.
//!
//! ```
//! use sparsematch_core::{Matcher, SearchConfig};
//!
//! let matcher = Matcher::new(b"cabab").unwrap();
//! let report = matcher.search(b"cababcabab", &SearchConfig::default());
//! assert_eq!(report.occurrences, vec![0, 5]);
//! ```
#![no_std]
#![forbid(unsafe_code)]

extern crate alloc;

mod error;
pub mod matchers;
pub mod metrics;
pub mod pattern;
pub mod sparse;

pub use error::PatternError;
pub use matchers::{
    classify_event, horspool_search, naive_search, Algorithm, EventKind, MatchReport, Matcher,
    SearchConfig,
};
pub use metrics::{Counters, NoProbe, Probe};
pub use pattern::{NProfile, Pattern};
pub use sparse::{select_sparse, sparse_for_pair, ShiftPolicy, ShiftTables, SparseCandidate, SparseModel};

/// Number of distinct byte values; every per-byte table has this many slots.
pub const ALPHABET: usize = 256;
