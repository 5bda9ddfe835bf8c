//! Experiment plumbing: statistical tests, exact enumeration oracles,
//! deterministic RNG streams, pipeline runners and the convergence
//! comparison used by the CLI and the acceptance tests.

pub mod config;
pub mod convergence;
pub mod enumerate;
pub mod exact;
pub mod pipeline;
pub mod rng;
pub mod stats;

pub use config::{ExperimentConfig, PipelineKind};
pub use convergence::{run_convergence, ComparisonReport, TimeComparison};
pub use enumerate::enumerate_conditioned_trees;
pub use pipeline::{collect_stats, replicate_masses, MassStats};
pub use rng::replicate_rng;
pub use stats::{chi_square_uniform_p, ks_two_sample, pearson};
