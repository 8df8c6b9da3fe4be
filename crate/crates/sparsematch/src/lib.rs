//! Command-line front end, structured output formats and the experiment
//! harness for [`sparsematch_core`].

pub mod cli;
pub mod harness;
pub mod snapshot;

pub use sparsematch_core as core;
