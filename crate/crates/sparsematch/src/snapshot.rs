//! JSON and TSV renderings of [`Counters`].
//!
//! The JSON document has a fixed key order:
//! `text_reads, events{type1,type2,type3}, verifications,
//! verification_match_lengths, shifts, total_shift, mean_shift`. Histogram keys
//! are decimal strings. `mean_shift` is derived and ignored on parse.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};
use sparsematch_core::metrics::EventCounts;
use sparsematch_core::Counters;

#[derive(Debug, Clone, Serialize, Deserialize)]
struct Snapshot {
    text_reads: u64,
    events: EventCounts,
    verifications: u64,
    verification_match_lengths: BTreeMap<usize, u64>,
    shifts: BTreeMap<usize, u64>,
    total_shift: u64,
    #[serde(default)]
    mean_shift: f64,
}

pub fn snapshot_json(counters: &Counters) -> String {
    let snap = Snapshot {
        text_reads: counters.text_reads,
        events: counters.events,
        verifications: counters.verifications,
        verification_match_lengths: counters.verification_match_lengths.clone(),
        shifts: counters.shifts.clone(),
        total_shift: counters.total_shift,
        mean_shift: counters.mean_shift(),
    };
    serde_json::to_string(&snap).expect("counters serialize")
}

pub fn parse_snapshot(json: &str) -> serde_json::Result<Counters> {
    let snap: Snapshot = serde_json::from_str(json)?;
    Ok(Counters {
        text_reads: snap.text_reads,
        events: snap.events,
        verifications: snap.verifications,
        verification_match_lengths: snap.verification_match_lengths,
        shifts: snap.shifts,
        total_shift: snap.total_shift,
    })
}

pub const TSV_COLUMNS: [&str; 9] = [
    "text_reads",
    "type1",
    "type2",
    "type3",
    "verifications",
    "failed_verifications",
    "total_shift",
    "mean_shift",
    "mean_failed_match_length",
];

/// Scalar fields in [`TSV_COLUMNS`] order, tab separated.
pub fn tsv_fields(counters: &Counters) -> String {
    let mean_match = counters
        .mean_failed_match_length()
        .map_or_else(|| "NA".to_string(), |v| format!("{v:.4}"));
    format!(
        "{}\t{}\t{}\t{}\t{}\t{}\t{}\t{:.4}\t{}",
        counters.text_reads,
        counters.events.type1,
        counters.events.type2,
        counters.events.type3,
        counters.verifications,
        counters.failed_verifications(),
        counters.total_shift,
        counters.mean_shift(),
        mean_match,
    )
}
