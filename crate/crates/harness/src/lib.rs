//! Experiment harness for the ATM-MOEA/D optimiser: run configuration,
//! seeded replications, batch comparisons with rank-sum statistics, and
//! machine-readable CSV/JSON artifacts.

pub mod artifacts;
pub mod batch;
pub mod config;
pub mod runner;
pub mod stats;

pub use config::{load_batch_file, BatchSpec, RunSpec};
pub use runner::{run, RunResult};
