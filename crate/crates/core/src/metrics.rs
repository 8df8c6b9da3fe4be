//! Instrumentation shared by every matcher.
//!
//! Matchers report through the [`Probe`] trait. [`Counters`] accumulates the
//! standard figures; [`NoProbe`] compiles the instrumentation away.

use alloc::collections::BTreeMap;

/// How a window placement was classified after reading its anchor bytes.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub enum EventKind {
    /// The byte at the anchor end differs from the anchor's end byte.
    Type1,
    /// Anchor end matched, anchor start did not.
    Type2,
    /// Both anchors matched; the window is verified.
    Type3,
}

impl EventKind {
    pub const ALL: [EventKind; 3] = [EventKind::Type1, EventKind::Type2, EventKind::Type3];

    pub fn index(self) -> usize {
        match self {
            EventKind::Type1 => 0,
            EventKind::Type2 => 1,
            EventKind::Type3 => 2,
        }
    }
}

/// Receives instrumentation callbacks from a running search.
pub trait Probe {
    /// `count` text bytes were read.
    fn read(&mut self, _count: usize) {}
    fn event(&mut self, _kind: EventKind) {}
    /// A shift of `len` was applied after an event of `kind`. Shifts that move
    /// the window past the end of the text are not reported.
    fn shift(&mut self, _kind: EventKind, _len: usize) {}
    /// A verification finished. `matched` counts the text bytes compared equal
    /// before the terminating mismatch, or before success.
    fn verification(&mut self, _matched: usize, _success: bool) {}
}

/// Discards everything.
#[derive(Debug, Clone, Copy, Default)]
pub struct NoProbe;

impl Probe for NoProbe {}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct EventCounts {
    pub type1: u64,
    pub type2: u64,
    pub type3: u64,
}

impl EventCounts {
    pub fn get(&self, kind: EventKind) -> u64 {
        match kind {
            EventKind::Type1 => self.type1,
            EventKind::Type2 => self.type2,
            EventKind::Type3 => self.type3,
        }
    }

    fn get_mut(&mut self, kind: EventKind) -> &mut u64 {
        match kind {
            EventKind::Type1 => &mut self.type1,
            EventKind::Type2 => &mut self.type2,
            EventKind::Type3 => &mut self.type3,
        }
    }

    pub fn total(&self) -> u64 {
        self.type1 + self.type2 + self.type3
    }
}

/// Per-search totals.
///
/// `verification_match_lengths` only holds failed verifications: the key is
/// the number of bytes that matched before the mismatch. Successful ones are
/// `verifications` minus the histogram total.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct Counters {
    pub text_reads: u64,
    pub events: EventCounts,
    pub verifications: u64,
    pub verification_match_lengths: BTreeMap<usize, u64>,
    pub shifts: BTreeMap<usize, u64>,
    pub total_shift: u64,
}

impl Counters {
    pub fn new() -> Self {
        Self::default()
    }

    /// Adds every field of `other` into `self`.
    pub fn merge(&mut self, other: &Counters) {
        self.text_reads += other.text_reads;
        self.events.type1 += other.events.type1;
        self.events.type2 += other.events.type2;
        self.events.type3 += other.events.type3;
        self.verifications += other.verifications;
        for (&k, &v) in &other.verification_match_lengths {
            *self.verification_match_lengths.entry(k).or_insert(0) += v;
        }
        for (&k, &v) in &other.shifts {
            *self.shifts.entry(k).or_insert(0) += v;
        }
        self.total_shift += other.total_shift;
    }

    /// `total_shift / events`, or 0 with no events.
    pub fn mean_shift(&self) -> f64 {
        let events = self.events.total();
        if events == 0 {
            0.0
        } else {
            self.total_shift as f64 / events as f64
        }
    }

    pub fn failed_verifications(&self) -> u64 {
        self.verification_match_lengths.values().sum()
    }

    /// Mean matched bytes per failed verification, or `None` if none failed.
    pub fn mean_failed_match_length(&self) -> Option<f64> {
        let failed = self.failed_verifications();
        if failed == 0 {
            return None;
        }
        let sum: u64 = self
            .verification_match_lengths
            .iter()
            .map(|(&k, &v)| k as u64 * v)
            .sum();
        Some(sum as f64 / failed as f64)
    }
}

impl Probe for Counters {
    #[inline]
    fn read(&mut self, count: usize) {
        self.text_reads += count as u64;
    }

    #[inline]
    fn event(&mut self, kind: EventKind) {
        *self.events.get_mut(kind) += 1;
    }

    #[inline]
    fn shift(&mut self, _kind: EventKind, len: usize) {
        *self.shifts.entry(len).or_insert(0) += 1;
        self.total_shift += len as u64;
    }

    #[inline]
    fn verification(&mut self, matched: usize, success: bool) {
        self.verifications += 1;
        if !success {
            *self.verification_match_lengths.entry(matched).or_insert(0) += 1;
        }
    }
}

impl<P: Probe + ?Sized> Probe for &mut P {
    fn read(&mut self, count: usize) {
        (**self).read(count)
    }
    fn event(&mut self, kind: EventKind) {
        (**self).event(kind)
    }
    fn shift(&mut self, kind: EventKind, len: usize) {
        (**self).shift(kind, len)
    }
    fn verification(&mut self, matched: usize, success: bool) {
        (**self).verification(matched, success)
    }
}
