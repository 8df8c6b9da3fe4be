//! Statistical experiments over uniform random patterns and texts.
//!
//! Each experiment produces one row per `(n, alphabet, algorithm, policy)`
//! combination (the sparse-length experiment has no algorithm or policy).
//! Patterns and texts are drawn independently; trial `t` of row `r` uses the
//! ChaCha8 stream `(r << 32) | t` of the configured seed.

use rayon::prelude::*;
use serde::Deserialize;
use sparsematch_core::{
    Algorithm, Counters, EventKind, Matcher, Probe, SearchConfig, ShiftPolicy,
};
use thiserror::Error;

use super::corpus::{trial_rng, uniform_from};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Experiment {
    SparseLength,
    ShiftExpectation,
    VerifyCost,
    ReadCost,
}

impl Experiment {
    pub const ALL: [Experiment; 4] = [
        Experiment::SparseLength,
        Experiment::ShiftExpectation,
        Experiment::VerifyCost,
        Experiment::ReadCost,
    ];
}

/// Parameters shared by all experiments; also the `bench --config` file
/// schema (TOML).
#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ExperimentConfig {
    pub alphabet_sizes: Vec<usize>,
    pub pattern_lengths: Vec<usize>,
    pub text_length: usize,
    pub trials: usize,
    pub seed: u64,
    #[serde(default = "default_policies")]
    pub policies: Vec<ShiftPolicy>,
    #[serde(default = "default_algorithms")]
    pub algorithms: Vec<Algorithm>,
    #[serde(default = "default_experiments")]
    pub experiments: Vec<Experiment>,
}

fn default_policies() -> Vec<ShiftPolicy> {
    vec![ShiftPolicy::Safe]
}

fn default_algorithms() -> Vec<Algorithm> {
    vec![Algorithm::A]
}

fn default_experiments() -> Vec<Experiment> {
    Experiment::ALL.to_vec()
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ConfigError {
    #[error("alphabet size {0} outside 1..=256")]
    Alphabet(usize),
    #[error("`{0}` must be non-empty")]
    Empty(&'static str),
    #[error("`{0}` must be at least 1")]
    Zero(&'static str),
    #[error("experiments only run sparse-anchor algorithms (a, b), got {0}")]
    Algorithm(&'static str),
}

impl ExperimentConfig {
    pub fn validate(&self) -> Result<(), ConfigError> {
        if self.alphabet_sizes.is_empty() {
            return Err(ConfigError::Empty("alphabet_sizes"));
        }
        if self.pattern_lengths.is_empty() {
            return Err(ConfigError::Empty("pattern_lengths"));
        }
        if self.policies.is_empty() {
            return Err(ConfigError::Empty("policies"));
        }
        if self.algorithms.is_empty() {
            return Err(ConfigError::Empty("algorithms"));
        }
        if let Some(&bad) = self.alphabet_sizes.iter().find(|&&a| !(1..=256).contains(&a)) {
            return Err(ConfigError::Alphabet(bad));
        }
        if self.pattern_lengths.contains(&0) {
            return Err(ConfigError::Zero("pattern_lengths"));
        }
        if self.trials == 0 {
            return Err(ConfigError::Zero("trials"));
        }
        if self.text_length == 0 {
            return Err(ConfigError::Zero("text_length"));
        }
        if let Some(bad) = self.algorithms.iter().find(|a| !matches!(a, Algorithm::A | Algorithm::B)) {
            return Err(ConfigError::Algorithm(bad.name()));
        }
        Ok(())
    }

    /// `(row index, n, alphabet)` in a fixed order: alphabet-major.
    fn grid(&self) -> impl Iterator<Item = (u64, usize, usize)> + '_ {
        self.alphabet_sizes
            .iter()
            .flat_map(move |&a| self.pattern_lengths.iter().map(move |&n| (n, a)))
            .enumerate()
            .map(|(i, (n, a))| (i as u64, n, a))
    }

    fn searches(&self) -> impl Iterator<Item = (Algorithm, ShiftPolicy)> + '_ {
        self.algorithms
            .iter()
            .flat_map(move |&a| self.policies.iter().map(move |&p| (a, p)))
    }
}

fn stream(row: u64, trial: usize) -> u64 {
    (row << 32) | trial as u64
}

fn median(values: &mut [f64]) -> f64 {
    values.sort_by(f64::total_cmp);
    let mid = values.len() / 2;
    if values.len().is_multiple_of(2) {
        (values[mid - 1] + values[mid]) / 2.0
    } else {
        values[mid]
    }
}

fn mean(values: &[f64]) -> f64 {
    values.iter().sum::<f64>() / values.len() as f64
}

fn fmt_opt(v: Option<f64>) -> String {
    v.map_or_else(|| "NA".into(), |v| format!("{v:.4}"))
}

/// A TSV table: a `# name` comment line, a header line, then rows.
#[derive(Debug, Clone, PartialEq)]
pub struct Table {
    pub name: &'static str,
    pub header: Vec<&'static str>,
    pub rows: Vec<Vec<String>>,
}

impl Table {
    pub fn to_tsv(&self) -> String {
        let mut out = format!("# {}\n{}\n", self.name, self.header.join("\t"));
        for row in &self.rows {
            out.push_str(&row.join("\t"));
            out.push('\n');
        }
        out
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SparseLengthRow {
    pub n: usize,
    pub alphabet: usize,
    pub trials: usize,
    pub sparse_min: usize,
    pub sparse_median: f64,
    pub sparse_mean: f64,
    pub delta_min: usize,
    pub delta_median: f64,
    pub delta_mean: f64,
    /// Median of `L / sqrt(n)`.
    pub ratio_median: f64,
    /// Patterns with `L < delta`. Always expected to be 0.
    pub below_delta: usize,
}

impl SparseLengthRow {
    pub fn table(rows: &[SparseLengthRow]) -> Table {
        Table {
            name: "sparse-length (uniform patterns; protocol chosen by this harness)",
            header: vec![
                "n", "alphabet", "trials", "L_min", "L_median", "L_mean", "delta_min",
                "delta_median", "delta_mean", "L_over_sqrt_n_median", "L_lt_delta",
            ],
            rows: rows
                .iter()
                .map(|r| {
                    vec![
                        r.n.to_string(),
                        r.alphabet.to_string(),
                        r.trials.to_string(),
                        r.sparse_min.to_string(),
                        format!("{:.1}", r.sparse_median),
                        format!("{:.4}", r.sparse_mean),
                        r.delta_min.to_string(),
                        format!("{:.1}", r.delta_median),
                        format!("{:.4}", r.delta_mean),
                        format!("{:.4}", r.ratio_median),
                        r.below_delta.to_string(),
                    ]
                })
                .collect(),
        }
    }
}

/// Distribution of the anchor length `L` and of `delta` over random patterns.
pub fn experiment_sparse_length(cfg: &ExperimentConfig) -> Vec<SparseLengthRow> {
    cfg.grid()
        .map(|(row, n, alphabet)| {
            let samples: Vec<(usize, usize)> = (0..cfg.trials)
                .into_par_iter()
                .map(|t| {
                    let p = uniform_from(&mut trial_rng(cfg.seed, stream(row, t)), alphabet, n);
                    let m = Matcher::new(&p).expect("n >= 1");
                    (m.sparse().len(), m.pattern().delta())
                })
                .collect();
            let mut ls: Vec<f64> = samples.iter().map(|s| s.0 as f64).collect();
            let mut ds: Vec<f64> = samples.iter().map(|s| s.1 as f64).collect();
            let mut ratios: Vec<f64> = ls.iter().map(|l| l / (n as f64).sqrt()).collect();
            SparseLengthRow {
                n,
                alphabet,
                trials: cfg.trials,
                sparse_min: samples.iter().map(|s| s.0).min().unwrap(),
                sparse_mean: mean(&ls),
                sparse_median: median(&mut ls),
                delta_min: samples.iter().map(|s| s.1).min().unwrap(),
                delta_mean: mean(&ds),
                delta_median: median(&mut ds),
                ratio_median: median(&mut ratios),
                below_delta: samples.iter().filter(|(l, d)| l < d).count(),
            }
        })
        .collect()
}

/// Counters plus per-event-kind shift totals.
#[derive(Debug, Clone, Default)]
struct ShiftTally {
    counters: Counters,
    shift_count: [u64; 3],
    shift_sum: [u64; 3],
}

impl Probe for ShiftTally {
    fn read(&mut self, count: usize) {
        self.counters.read(count);
    }
    fn event(&mut self, kind: EventKind) {
        self.counters.event(kind);
    }
    fn shift(&mut self, kind: EventKind, len: usize) {
        self.counters.shift(kind, len);
        self.shift_count[kind.index()] += 1;
        self.shift_sum[kind.index()] += len as u64;
    }
    fn verification(&mut self, matched: usize, success: bool) {
        self.counters.verification(matched, success);
    }
}

impl ShiftTally {
    fn merge(&mut self, other: &ShiftTally) {
        self.counters.merge(&other.counters);
        for k in 0..3 {
            self.shift_count[k] += other.shift_count[k];
            self.shift_sum[k] += other.shift_sum[k];
        }
    }
}

/// One random pattern and text per trial, searched with every configured
/// `(algorithm, policy)`. Returns per-search tallies and the per-trial
/// `(L, min(L, alphabet))`.
fn run_searches(
    cfg: &ExperimentConfig,
    row: u64,
    n: usize,
    alphabet: usize,
) -> (Vec<ShiftTally>, Vec<(usize, usize)>) {
    let searches: Vec<_> = cfg.searches().collect();
    let per_trial: Vec<(Vec<ShiftTally>, (usize, usize))> = (0..cfg.trials)
        .into_par_iter()
        .map(|t| {
            let mut rng = trial_rng(cfg.seed, stream(row, t));
            let p = uniform_from(&mut rng, alphabet, n);
            let text = uniform_from(&mut rng, alphabet, cfg.text_length);
            let m = Matcher::new(&p).expect("n >= 1");
            let tallies = searches
                .iter()
                .map(|&(algorithm, policy)| {
                    let mut tally = ShiftTally::default();
                    let config = SearchConfig::new(algorithm, policy, stream(row, t));
                    m.search_with(&text, &config, &mut tally);
                    tally
                })
                .collect();
            let l = m.sparse().len();
            (tallies, (l, l.min(alphabet)))
        })
        .collect();
    let mut totals = vec![ShiftTally::default(); searches.len()];
    let mut sparse = Vec::with_capacity(per_trial.len());
    for (tallies, ls) in per_trial {
        for (total, t) in totals.iter_mut().zip(&tallies) {
            total.merge(t);
        }
        sparse.push(ls);
    }
    (totals, sparse)
}

#[derive(Debug, Clone, PartialEq)]
pub struct ShiftExpectationRow {
    pub n: usize,
    pub alphabet: usize,
    pub algorithm: Algorithm,
    pub policy: ShiftPolicy,
    pub events: [u64; 3],
    /// Mean applied shift after each event kind, `None` if none was applied.
    pub mean_shift_by_kind: [Option<f64>; 3],
    pub mean_shift: f64,
    pub mean_min_l_alphabet: f64,
}

impl ShiftExpectationRow {
    pub fn table(rows: &[ShiftExpectationRow]) -> Table {
        Table {
            name: "shift-expectation",
            header: vec![
                "n", "alphabet", "algorithm", "policy", "type1", "type2", "type3",
                "mean_shift_type1", "mean_shift_type2", "mean_shift_type3", "mean_shift",
                "mean_min_L_alphabet",
            ],
            rows: rows
                .iter()
                .map(|r| {
                    vec![
                        r.n.to_string(),
                        r.alphabet.to_string(),
                        r.algorithm.name().into(),
                        r.policy.name().into(),
                        r.events[0].to_string(),
                        r.events[1].to_string(),
                        r.events[2].to_string(),
                        fmt_opt(r.mean_shift_by_kind[0]),
                        fmt_opt(r.mean_shift_by_kind[1]),
                        fmt_opt(r.mean_shift_by_kind[2]),
                        format!("{:.4}", r.mean_shift),
                        format!("{:.4}", r.mean_min_l_alphabet),
                    ]
                })
                .collect(),
        }
    }
}

/// Mean window shift per event kind on uniform random texts.
pub fn experiment_shift_expectation(cfg: &ExperimentConfig) -> Vec<ShiftExpectationRow> {
    let mut rows = Vec::new();
    for (row, n, alphabet) in cfg.grid() {
        let (tallies, sparse) = run_searches(cfg, row, n, alphabet);
        let mean_min = mean(&sparse.iter().map(|s| s.1 as f64).collect::<Vec<_>>());
        for ((algorithm, policy), tally) in cfg.searches().zip(tallies) {
            let by_kind = std::array::from_fn(|k| {
                (tally.shift_count[k] > 0)
                    .then(|| tally.shift_sum[k] as f64 / tally.shift_count[k] as f64)
            });
            let applied: u64 = tally.shift_count.iter().sum();
            rows.push(ShiftExpectationRow {
                n,
                alphabet,
                algorithm,
                policy,
                events: EventKind::ALL.map(|k| tally.counters.events.get(k)),
                mean_shift_by_kind: by_kind,
                mean_shift: if applied == 0 {
                    0.0
                } else {
                    tally.counters.total_shift as f64 / applied as f64
                },
                mean_min_l_alphabet: mean_min,
            });
        }
    }
    rows
}

#[derive(Debug, Clone, PartialEq)]
pub struct VerifyCostRow {
    pub n: usize,
    pub alphabet: usize,
    pub algorithm: Algorithm,
    pub policy: ShiftPolicy,
    pub verifications: u64,
    pub failed: u64,
    /// Mean bytes matched before the mismatch over failed verifications.
    pub mean_matched: Option<f64>,
    /// `1 / (alphabet - 1)`; infinite for a unary alphabet.
    pub expected: f64,
}

impl VerifyCostRow {
    pub fn table(rows: &[VerifyCostRow]) -> Table {
        Table {
            name: "verify-cost",
            header: vec![
                "n", "alphabet", "algorithm", "policy", "verifications", "failed",
                "mean_matched", "expected_geometric",
            ],
            rows: rows
                .iter()
                .map(|r| {
                    vec![
                        r.n.to_string(),
                        r.alphabet.to_string(),
                        r.algorithm.name().into(),
                        r.policy.name().into(),
                        r.verifications.to_string(),
                        r.failed.to_string(),
                        fmt_opt(r.mean_matched),
                        format!("{:.4}", r.expected),
                    ]
                })
                .collect(),
        }
    }
}

/// Bytes matched per failed verification, excluding the two anchor bytes that
/// triggered it.
pub fn experiment_verify_cost(cfg: &ExperimentConfig) -> Vec<VerifyCostRow> {
    let mut rows = Vec::new();
    for (row, n, alphabet) in cfg.grid() {
        let (tallies, _) = run_searches(cfg, row, n, alphabet);
        for ((algorithm, policy), tally) in cfg.searches().zip(tallies) {
            let c = &tally.counters;
            rows.push(VerifyCostRow {
                n,
                alphabet,
                algorithm,
                policy,
                verifications: c.verifications,
                failed: c.failed_verifications(),
                mean_matched: c.mean_failed_match_length(),
                expected: 1.0 / (alphabet as f64 - 1.0),
            });
        }
    }
    rows
}

#[derive(Debug, Clone, PartialEq)]
pub struct ReadCostRow {
    pub n: usize,
    pub alphabet: usize,
    pub algorithm: Algorithm,
    pub policy: ShiftPolicy,
    pub text_length: usize,
    pub mean_sparse_len: f64,
    pub mean_min_l_alphabet: f64,
    /// Total text reads divided by total text length over all trials.
    pub reads_per_char: f64,
}

impl ReadCostRow {
    pub fn table(rows: &[ReadCostRow]) -> Table {
        Table {
            name: "read-cost",
            header: vec![
                "n", "alphabet", "algorithm", "policy", "text_length", "mean_L",
                "mean_min_L_alphabet", "reads_per_char", "inverse_min_L_alphabet",
            ],
            rows: rows
                .iter()
                .map(|r| {
                    vec![
                        r.n.to_string(),
                        r.alphabet.to_string(),
                        r.algorithm.name().into(),
                        r.policy.name().into(),
                        r.text_length.to_string(),
                        format!("{:.4}", r.mean_sparse_len),
                        format!("{:.4}", r.mean_min_l_alphabet),
                        format!("{:.6}", r.reads_per_char),
                        format!("{:.6}", 1.0 / r.mean_min_l_alphabet),
                    ]
                })
                .collect(),
        }
    }
}

/// Text reads per text byte.
pub fn experiment_read_cost(cfg: &ExperimentConfig) -> Vec<ReadCostRow> {
    let mut rows = Vec::new();
    for (row, n, alphabet) in cfg.grid() {
        let (tallies, sparse) = run_searches(cfg, row, n, alphabet);
        let mean_l = mean(&sparse.iter().map(|s| s.0 as f64).collect::<Vec<_>>());
        let mean_min = mean(&sparse.iter().map(|s| s.1 as f64).collect::<Vec<_>>());
        for ((algorithm, policy), tally) in cfg.searches().zip(tallies) {
            rows.push(ReadCostRow {
                n,
                alphabet,
                algorithm,
                policy,
                text_length: cfg.text_length,
                mean_sparse_len: mean_l,
                mean_min_l_alphabet: mean_min,
                reads_per_char: tally.counters.text_reads as f64
                    / (cfg.text_length * cfg.trials) as f64,
            });
        }
    }
    rows
}

/// Runs every experiment listed in the config and renders its table.
pub fn run_experiments(cfg: &ExperimentConfig) -> Vec<Table> {
    cfg.experiments
        .iter()
        .map(|e| match e {
            Experiment::SparseLength => SparseLengthRow::table(&experiment_sparse_length(cfg)),
            Experiment::ShiftExpectation => {
                ShiftExpectationRow::table(&experiment_shift_expectation(cfg))
            }
            Experiment::VerifyCost => VerifyCostRow::table(&experiment_verify_cost(cfg)),
            Experiment::ReadCost => ReadCostRow::table(&experiment_read_cost(cfg)),
        })
        .collect()
}
