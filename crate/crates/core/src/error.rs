//! Error taxonomy shared by every module in the crate.
//!
//! Three families matter to callers:
//!
//! * input errors (bad vertices, bad parameters, malformed certificates),
//! * normal typed signals that steer the engine (`NoCopies`, `DeadEdges`,
//!   `RankTooHigh`, `NoCatalog`), and
//! * resource exhaustion (`Budget`), which carries the best bracket known
//!   at the moment the search ran out of nodes. Exhausting a node budget
//!   is distinct from the mathematical outcome "no cover exists within an
//!   excess budget"; the latter is a normal result, not an error.

use thiserror::Error;

/// All errors produced by the crate.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// A vertex index was outside `0..vertex_count`.
    #[error("vertex {vertex} out of range: graph has {vertex_count} vertices")]
    VertexOutOfRange { vertex: usize, vertex_count: usize },

    /// An edge id was outside `0..edge_count`.
    #[error("edge {edge} out of range: graph has {edge_count} edges")]
    EdgeOutOfRange { edge: usize, edge_count: usize },

    /// `n` below the smallest generalized Petersen parameter.
    #[error("n must be at least 3, got {n}")]
    InvalidN { n: usize },

    /// `k` outside `1..=floor((n-1)/2)` even after the `k -> n-k` reduction.
    #[error("k must satisfy 1 <= k <= floor((n-1)/2) = {max_k} for n = {n}, got {k}")]
    InvalidK { n: usize, k: usize, max_k: usize },

    /// Cycle length without closed-form support (only 5 and 6 are wired up).
    #[error("unsupported cycle length {d}: only C5 and C6 are supported")]
    UnsupportedCycleLength { d: usize },

    /// Cycle length too short to form a cycle in a simple host graph.
    #[error("cycle length must be at least 3, got {d}")]
    CycleLengthTooShort { d: usize },

    /// No closed-form copy catalog covers this parameter triple; callers
    /// should fall back to explicit enumeration.
    #[error("no copy catalog for (n, k, d) = ({n}, {k}, {d}); use enumeration instead")]
    NoCatalog { n: usize, k: usize, d: usize },

    /// The host graph contains no copy of the target cycle, so the
    /// anti-Ramsey number equals the edge count by definition.
    #[error("no copies: Ar = |E(G)| by definition")]
    NoCopies,

    /// Some host edges lie in no copy; they must be split off first.
    #[error("{} dead edge(s) lie in no copy; split them off with delete_edges first", edges.len())]
    DeadEdges { edges: Vec<usize> },

    /// The copy hypergraph has a hyperedge of size above two, so it cannot
    /// be viewed as a multigraph. A normal signal, not a failure.
    #[error("hyperedge rank {rank} exceeds 2; the packing route does not apply")]
    RankTooHigh { rank: usize },

    /// A barrier test needs at least two class members.
    #[error("barrier test requires a class with at least 2 members, got {size}")]
    SingletonClass { size: usize },

    /// An edge is missing a color (or has the reserved color 0).
    #[error("edge {edge} has no color")]
    UncoloredEdge { edge: usize },

    /// A covering certificate does not cover every copy.
    #[error("certificate does not cover all copies: {missing} of {total} copies uncovered")]
    IncompleteCover { missing: usize, total: usize },

    /// Exhaustive oracles refuse instances beyond their size guard.
    #[error("instance too large for the exhaustive oracle: m = {m} exceeds the {max_m} guard")]
    TooLargeForOracle { m: usize, max_m: usize },

    /// A named construction id that the catalog does not know.
    #[error("unknown construction id {id:?}")]
    UnknownConstruction { id: String },

    /// A known construction id applied outside its parameter range.
    #[error("construction {id} requires {requirement}; got (n, k) = ({n}, {k})")]
    ConstructionOutOfRange {
        id: String,
        requirement: String,
        n: usize,
        k: usize,
    },

    /// A search ran out of its node budget. `quantity` names the bracketed
    /// value (`"h"`, `"M"`, or `"Ar"`); the true value lies in
    /// `[lo, hi]`.
    #[error("node budget {budget} exhausted after {explored} nodes; {quantity} is in [{lo}, {hi}]")]
    Budget {
        explored: u64,
        budget: u64,
        quantity: &'static str,
        lo: usize,
        hi: usize,
    },

    /// Structurally invalid input that fits no finer category.
    #[error("malformed input: {0}")]
    Malformed(String),
}

impl Error {
    /// True for resource exhaustion, the only error class that maps to a
    /// retry-with-bigger-budget exit path.
    #[must_use]
    pub fn is_budget(&self) -> bool {
        matches!(self, Error::Budget { .. })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn budget_error_is_distinguishable() {
        let err = Error::Budget {
            explored: 10,
            budget: 10,
            quantity: "h",
            lo: 3,
            hi: 7,
        };
        assert!(err.is_budget());
        assert!(!Error::NoCopies.is_budget());
    }

    #[test]
    fn messages_name_the_offending_entity() {
        let err = Error::EdgeOutOfRange {
            edge: 12,
            edge_count: 9,
        };
        assert!(err.to_string().contains("12"));
        assert!(err.to_string().contains('9'));
    }
}
