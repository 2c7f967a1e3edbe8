//! Maximum colorful subtree solvers for fragmentation DAGs.
//!
//! [`graph`] holds the colored DAG and solution types, [`heuristics`] and
//! [`exact`] the solvers, [`postprocess`] the dangling-edge cleanups,
//! [`builder`] turns spectra into candidate graphs and [`ranking`] ranks
//! candidates and evaluates methods over a corpus.

pub mod builder;
pub mod error;
pub mod exact;
pub mod format;
pub mod graph;
pub mod heuristics;
pub mod method;
pub mod par;
pub mod postprocess;
pub mod random;
pub mod ranking;
pub mod union_find;

pub use error::{Error, Result};
pub use graph::{Checks, ColoredDag, DagBuilder, NodeId, SubtreeSolution, Violation};
pub use heuristics::Heuristic;
pub use method::{Method, SolveOptions};
pub use par::Execution;
