//! Simulation and verification toolkit for edge fragmentation of critical
//! branching trees conditioned on their total size.
//!
//! The pipeline: an offspring law ([`offspring`]) drives a conditioned
//! tree sampler ([`gwtree`]); greedy minimum-weight exploration turns a
//! tree plus i.i.d. edge weights into coding walks whose strict descending
//! records cut the tree into fragments ([`prim`], [`fragmentation`]).
//! A continuum counterpart rescales bridge walks into excursions and reads
//! fragment masses from drifted record gaps ([`continuum`]), while
//! [`intensity`] evaluates the limiting dislocation intensity numerically.
//! [`harness`] holds exact enumeration oracles, statistical tests, and the
//! replicated convergence experiments behind the command-line tool.

pub mod continuum;
pub mod error;
pub mod figure;
pub mod fragmentation;
pub mod gwtree;
pub mod harness;
pub mod intensity;
pub mod offspring;
pub mod prim;

pub use error::{Error, Result};
