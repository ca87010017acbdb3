//! Single-source bottleneck path (widest path) library.
//!
//! The headline solver is a randomized divide-and-conquer algorithm that
//! runs in expected O(m√log n) comparisons: sample thresholds among the
//! restricted edge weights, split the nodes into levels by a lazily
//! evaluated bucket Dijkstra, and recurse per level. Heap-based Dijkstra
//! baselines and brute-force oracles are included for cross-checking, plus
//! counter instrumentation that verifies the counting arguments behind the
//! time bound on every run.

pub mod baselines;
mod error;
pub mod gen;
pub mod graph;
pub mod key;
pub mod single_restricted;
pub mod solver;
pub mod split;
pub mod stats;
pub mod textio;
pub mod tree;

#[cfg(test)]
pub(crate) mod testutil;

pub use error::{Error, Result};
pub use graph::{
    csssbp_to_ssbp, ssbp_to_csssbp, weakly_connected_components, BottleneckResult,
    CsssbpInstance, Graph, NodeId, SsbpInstance,
};
pub use key::{Capacity, Key, Weight};
pub use solver::{default_k, solve_csssbp, solve_ssbp, SolverConfig};
pub use stats::{check_bounds, CounterSet, SolveStats};
