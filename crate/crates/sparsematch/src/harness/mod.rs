//! Corpus generation, differential testing and the statistical experiments.
//!
//! Every trial draws from its own ChaCha8 stream, selected by trial index on
//! top of the run seed, so results do not depend on how trials are scheduled
//! across threads.

mod corpus;
mod difftest;
mod experiments;

pub use corpus::{gen_pattern, gen_uniform, plant, symbol, trial_rng, CorpusError};
pub use difftest::{run_differential, DiffConfig, DiffReport, Discrepancy, WITNESS};
pub use experiments::{
    experiment_read_cost, experiment_shift_expectation, experiment_sparse_length,
    experiment_verify_cost, run_experiments, ConfigError, Experiment, ExperimentConfig, ReadCostRow,
    ShiftExpectationRow, SparseLengthRow, Table, VerifyCostRow,
};
