//! Exact anti-Ramsey computations for 5- and 6-cycles in generalized
//! Petersen graphs.
//!
//! The anti-Ramsey number `Ar(G, H)` is the largest number of colors in an
//! edge coloring of the host graph `G` that admits no rainbow copy of `H`
//! (a copy whose edges all receive distinct colors). This crate computes
//! `Ar(P_{n,k}, C_d)` for `d` in `{5, 6}` exactly, and ships every value
//! with machine-checkable certificates in both directions:
//!
//! * a rainbow-free edge coloring attaining the value (lower bound), and
//! * a combinatorial structure proving no coloring does better (upper
//!   bound): either a maximum vertex-disjoint cycle packing or a
//!   minimum-excess covering partition of the copy hypergraph.
//!
//! The pipeline: [`petersen`] builds the host graph, [`census`] lists the
//! copies of the target cycle (closed-form catalogs with an enumeration
//! fallback), [`hypergraph`] folds the copies into the copy hypergraph
//! (one vertex per copy, one hyperedge per host edge), and [`engine`]
//! dispatches to the [`packing`] route when every host edge lies in at
//! most two copies, or to the [`cover`] branch-and-bound sweep otherwise.
//! [`coloring`] holds the coloring side: rainbow verification, a
//! brute-force oracle for tiny instances, and the closed-form catalog
//! colorings reachable through `construction`.

#![forbid(unsafe_code)]

pub mod bits;
pub mod census;
pub mod coloring;
pub mod cover;
pub mod engine;
pub mod error;
pub mod hypergraph;
pub mod multigraph;
pub mod packing;
pub mod partitions;
pub mod petersen;

pub use error::Error;

/// Crate-wide result alias.
pub type Result<T> = std::result::Result<T, Error>;

/// Default cap on search nodes for the packing and covering solvers.
pub const DEFAULT_NODE_BUDGET: u64 = 10_000_000;
