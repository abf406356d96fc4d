//! Core algorithms for decomposition-based multi-objective optimisation with
//! a weight adaptation trigger mechanism.
//!
//! The crate is `no_std` (with `alloc`) so the solver can be embedded anywhere;
//! IO, file formats and the CLI live in the companion `atm-moead` crate.

#![cfg_attr(not(test), no_std)]

extern crate alloc;

pub mod atm;
pub mod engine;
pub mod error;
pub mod indicators;
pub mod pareto;
pub mod problems;
pub mod rng;
pub mod runner;
pub mod solution;
pub mod variation;
pub mod weights;

pub use engine::{Algorithm, EngineState, RunConfig};
pub use error::Error;
pub use rng::RandomSource;
pub use solution::Solution;
