//! SRA3: a two-archive, multi-indicator optimizer for many-objective
//! problems, together with the DTLZ and WFG benchmark suites, hypervolume
//! and IGD metrics, rank-sum comparisons, and an experiment runner.
//!
//! All objectives are minimized.

pub mod analysis;
pub mod error;
pub mod experiment;
pub mod indicators;
pub mod metrics;
pub mod pareto;
pub mod problems;
pub mod rng;
pub mod sra3;
pub mod variation;

pub use error::{Error, Result};
pub use pareto::{Archive, Individual, ObjectiveVector};
pub use problems::{ProblemName, ProblemSpec};
pub use rng::RandomSource;
pub use sra3::{run, NormalizationVariant, RunOutcome, Sra3Config};
