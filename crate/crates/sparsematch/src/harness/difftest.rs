//! Randomized differential testing against the exhaustive oracle.

use std::collections::BTreeSet;
use std::ops::RangeInclusive;

use rand::Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use sparsematch_core::{naive_search, Algorithm, Matcher, Pattern, SearchConfig, ShiftPolicy};

use super::corpus::{plant, trial_rng, uniform_from};

/// The smallest known input on which paper-policy shifts skip an occurrence.
pub const WITNESS: (&[u8], &[u8]) = (b"cabab", b"cababcabab");

#[derive(Debug, Clone)]
pub struct DiffConfig {
    /// Uniform trials per alphabet size.
    pub trials: u64,
    pub seed: u64,
    pub alphabet_sizes: Vec<usize>,
    pub pattern_len: RangeInclusive<usize>,
    pub text_len: RangeInclusive<usize>,
    /// Trials per alphabet size in which copies of the pattern are planted
    /// into the text.
    pub planted_trials: u64,
    pub planted_pattern_len: RangeInclusive<usize>,
    pub algorithms: Vec<Algorithm>,
    pub policies: Vec<ShiftPolicy>,
    /// Fixed `(pattern, text)` cases run before the random ones, unshrunk.
    pub extra_cases: Vec<(Vec<u8>, Vec<u8>)>,
    /// Upper bound on shrunk discrepancies kept in the report.
    pub max_reported: usize,
}

impl Default for DiffConfig {
    fn default() -> Self {
        Self {
            trials: 1000,
            seed: 0,
            alphabet_sizes: vec![2, 4, 26, 64],
            pattern_len: 1..=32,
            text_len: 0..=512,
            planted_trials: 0,
            planted_pattern_len: 1..=128,
            algorithms: vec![Algorithm::A, Algorithm::B],
            policies: vec![ShiftPolicy::Safe],
            extra_cases: Vec::new(),
            max_reported: 20,
        }
    }
}

/// One input on which a matcher disagreed with the oracle.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Discrepancy {
    #[serde(with = "hex")]
    pub pattern: Vec<u8>,
    #[serde(with = "hex")]
    pub text: Vec<u8>,
    pub config: SearchConfig,
    pub expected: Vec<usize>,
    pub actual: Vec<usize>,
}

impl Discrepancy {
    /// Runs the case again; `true` if the matcher still disagrees with the
    /// oracle in the same way.
    pub fn replay(&self) -> bool {
        match check(&self.pattern, &self.text, &self.config) {
            Some((expected, actual)) => expected == self.expected && actual == self.actual,
            None => false,
        }
    }

    /// One JSON object per line; byte strings are hex encoded.
    pub fn to_json_line(&self) -> String {
        serde_json::to_string(self).expect("discrepancy serializes")
    }

    pub fn from_json_line(line: &str) -> serde_json::Result<Self> {
        serde_json::from_str(line)
    }

    fn key(&self) -> (Vec<u8>, Vec<u8>, &'static str, &'static str) {
        (
            self.pattern.clone(),
            self.text.clone(),
            self.config.algorithm.name(),
            self.config.policy.name(),
        )
    }
}

#[derive(Debug, Clone, Default)]
pub struct DiffReport {
    /// `(pattern, text)` inputs generated or supplied.
    pub cases: u64,
    /// Matcher runs compared against the oracle.
    pub runs: u64,
    /// Runs that disagreed, before deduplication.
    pub discrepancy_count: u64,
    /// Shrunk, deduplicated reproductions, at most `max_reported`.
    pub discrepancies: Vec<Discrepancy>,
    /// Safe-policy algorithm A runs that read more than `4m + 2n` text bytes.
    pub read_bound_violations: u64,
    /// Largest `reads / (4m + 2n)` seen over safe-policy algorithm A runs.
    pub max_read_ratio: f64,
}

impl DiffReport {
    pub fn is_clean(&self) -> bool {
        self.discrepancy_count == 0
    }
}

/// `Some((expected, actual))` when the configured matcher disagrees with the
/// oracle.
fn check(pattern: &[u8], text: &[u8], config: &SearchConfig) -> Option<(Vec<usize>, Vec<usize>)> {
    let matcher = Matcher::new(pattern).ok()?;
    let expected = naive_search(matcher.pattern(), text).occurrences;
    let actual = matcher.find_all(text, config);
    (expected != actual).then_some((expected, actual))
}

/// Removes chunks of halving size while the predicate keeps holding.
fn shrink_bytes(bytes: &mut Vec<u8>, min_len: usize, fails: impl Fn(&[u8]) -> bool) -> bool {
    let mut changed = false;
    let mut chunk = (bytes.len() / 2).max(1);
    loop {
        let mut at = 0;
        while at < bytes.len() {
            let end = (at + chunk).min(bytes.len());
            if bytes.len() - (end - at) < min_len {
                at = end;
                continue;
            }
            let candidate: Vec<u8> = bytes[..at].iter().chain(&bytes[end..]).copied().collect();
            if fails(&candidate) {
                *bytes = candidate;
                changed = true;
            } else {
                at = end;
            }
        }
        if chunk == 1 {
            return changed;
        }
        chunk /= 2;
    }
}

fn shrink(pattern: &[u8], text: &[u8], config: SearchConfig) -> Discrepancy {
    let (mut p, mut t) = (pattern.to_vec(), text.to_vec());
    for _ in 0..8 {
        let t_changed = shrink_bytes(&mut t, 0, |cand| check(&p, cand, &config).is_some());
        let p_changed = shrink_bytes(&mut p, 1, |cand| check(cand, &t, &config).is_some());
        if !t_changed && !p_changed {
            break;
        }
    }
    let (expected, actual) = check(&p, &t, &config).expect("shrinking preserves the failure");
    Discrepancy { pattern: p, text: t, config, expected, actual }
}

struct Trial {
    pattern: Vec<u8>,
    text: Vec<u8>,
    seed: u64,
}

struct TrialOutcome {
    runs: u64,
    failures: Vec<(SearchConfig, Vec<usize>, Vec<usize>)>,
    read_bound_violations: u64,
    max_read_ratio: f64,
}

fn run_trial(cfg: &DiffConfig, trial: &Trial) -> TrialOutcome {
    let mut out = TrialOutcome {
        runs: 0,
        failures: Vec::new(),
        read_bound_violations: 0,
        max_read_ratio: 0.0,
    };
    let Ok(pattern) = Pattern::new(&trial.pattern) else {
        return out;
    };
    let expected = naive_search(&pattern, &trial.text).occurrences;
    let matcher = Matcher::from_pattern(pattern);
    for &algorithm in &cfg.algorithms {
        for &policy in &cfg.policies {
            let config = SearchConfig::new(algorithm, policy, trial.seed);
            let report = matcher.search(&trial.text, &config);
            out.runs += 1;
            if algorithm == Algorithm::A && policy == ShiftPolicy::Safe {
                let bound = 4 * trial.text.len() + 2 * trial.pattern.len();
                let reads = report.counters.text_reads as usize;
                if reads > bound {
                    out.read_bound_violations += 1;
                }
                out.max_read_ratio = out.max_read_ratio.max(reads as f64 / bound as f64);
            }
            if report.occurrences != expected {
                out.failures.push((config, expected.clone(), report.occurrences));
            }
        }
    }
    out
}

fn generate(cfg: &DiffConfig, index: u64) -> Trial {
    let per_alphabet = cfg.trials + cfg.planted_trials;
    let alphabet = cfg.alphabet_sizes[(index / per_alphabet) as usize];
    let planted = index % per_alphabet >= cfg.trials;
    let mut rng = trial_rng(cfg.seed, index);
    let seed = rng.gen();
    if planted {
        let n = rng.gen_range(cfg.planted_pattern_len.clone());
        let lo = (*cfg.text_len.start()).max(n);
        let m = rng.gen_range(lo..=(*cfg.text_len.end()).max(lo));
        let pattern = uniform_from(&mut rng, alphabet, n);
        let mut text = uniform_from(&mut rng, alphabet, m);
        let copies = rng.gen_range(1..=3);
        plant(&mut rng, &mut text, &pattern, copies);
        Trial { pattern, text, seed }
    } else {
        let n = rng.gen_range(cfg.pattern_len.clone());
        let m = rng.gen_range(cfg.text_len.clone());
        let pattern = uniform_from(&mut rng, alphabet, n);
        let text = uniform_from(&mut rng, alphabet, m);
        Trial { pattern, text, seed }
    }
}

/// Runs every configured matcher against the oracle on the extra cases and
/// on `(trials + planted_trials) * alphabet_sizes.len()` generated inputs.
pub fn run_differential(cfg: &DiffConfig) -> DiffReport {
    let extra: Vec<Trial> = cfg
        .extra_cases
        .iter()
        .map(|(p, t)| Trial { pattern: p.clone(), text: t.clone(), seed: cfg.seed })
        .collect();
    let generated = (cfg.trials + cfg.planted_trials) * cfg.alphabet_sizes.len() as u64;

    let outcomes: Vec<TrialOutcome> = (0..extra.len() as u64 + generated)
        .into_par_iter()
        .map(|index| match extra.get(index as usize) {
            Some(trial) => run_trial(cfg, trial),
            None => run_trial(cfg, &generate(cfg, index - extra.len() as u64)),
        })
        .collect();

    let mut report = DiffReport { cases: extra.len() as u64 + generated, ..DiffReport::default() };
    let mut seen = BTreeSet::new();
    for (index, outcome) in outcomes.into_iter().enumerate() {
        report.runs += outcome.runs;
        report.read_bound_violations += outcome.read_bound_violations;
        report.max_read_ratio = report.max_read_ratio.max(outcome.max_read_ratio);
        for (config, expected, actual) in outcome.failures {
            report.discrepancy_count += 1;
            if report.discrepancies.len() >= cfg.max_reported {
                continue;
            }
            // Generated inputs are not retained; regenerate the failing one.
            let found = match extra.get(index) {
                Some(t) => Discrepancy {
                    pattern: t.pattern.clone(),
                    text: t.text.clone(),
                    config,
                    expected,
                    actual,
                },
                None => {
                    let t = generate(cfg, (index - extra.len()) as u64);
                    shrink(&t.pattern, &t.text, config)
                }
            };
            if seen.insert(found.key()) {
                report.discrepancies.push(found);
            }
        }
    }
    report
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn safe_small_run_is_clean() {
        let cfg = DiffConfig { trials: 300, planted_trials: 100, ..DiffConfig::default() };
        let report = run_differential(&cfg);
        assert_eq!(report.cases, 400 * 4);
        assert_eq!(report.runs, 400 * 4 * 2);
        assert!(report.is_clean(), "{:?}", report.discrepancies);
        assert_eq!(report.read_bound_violations, 0);
    }

    #[test]
    fn paper_witness_is_reported_verbatim() {
        let cfg = DiffConfig {
            trials: 50,
            policies: vec![ShiftPolicy::Paper],
            algorithms: vec![Algorithm::A],
            extra_cases: vec![(WITNESS.0.to_vec(), WITNESS.1.to_vec())],
            ..DiffConfig::default()
        };
        let report = run_differential(&cfg);
        let first = &report.discrepancies[0];
        assert_eq!(first.pattern, b"cabab");
        assert_eq!(first.text, b"cababcabab");
        assert_eq!(first.expected, [0, 5]);
        assert_eq!(first.actual, [0]);
        assert!(report.discrepancies.iter().all(Discrepancy::replay));
    }

    #[test]
    fn shrunk_discrepancies_replay_and_round_trip() {
        let cfg = DiffConfig {
            trials: 500,
            alphabet_sizes: vec![2, 4],
            policies: vec![ShiftPolicy::Paper],
            ..DiffConfig::default()
        };
        let report = run_differential(&cfg);
        assert!(report.discrepancy_count > 0);
        assert!(!report.discrepancies.is_empty());
        for d in &report.discrepancies {
            assert!(d.replay());
            assert!(d.actual.iter().all(|o| d.expected.contains(o)));
            assert!(d.text.len() <= 512);
            let line = d.to_json_line();
            assert!(!line.contains('\n'));
            assert_eq!(&Discrepancy::from_json_line(&line).unwrap(), d);
        }
        // Deterministic given the seed.
        let again = run_differential(&cfg);
        assert_eq!(again.discrepancies, report.discrepancies);
        assert_eq!(again.discrepancy_count, report.discrepancy_count);
    }

    #[test]
    fn pattern_longer_than_text_is_clean() {
        let cfg = DiffConfig {
            trials: 200,
            pattern_len: 10..=20,
            text_len: 0..=9,
            policies: vec![ShiftPolicy::Safe, ShiftPolicy::Paper],
            ..DiffConfig::default()
        };
        let report = run_differential(&cfg);
        assert!(report.is_clean());
    }

    #[test]
    fn json_line_shape() {
        let d = Discrepancy {
            pattern: b"ab".to_vec(),
            text: b"\x00b".to_vec(),
            config: SearchConfig::new(Algorithm::A, ShiftPolicy::Paper, 3),
            expected: vec![0],
            actual: vec![],
        };
        assert_eq!(
            d.to_json_line(),
            r#"{"pattern":"6162","text":"0062","config":{"algorithm":"a","policy":"paper","seed":3},"expected":[0],"actual":[]}"#
        );
    }
}
