//! Generalized Petersen graph construction and parameter handling.
//!
//! `P_{n,k}` has `2n` vertices: outer `u_0..u_{n-1}` (indices `0..n`) and
//! inner `v_0..v_{n-1}` (indices `n..2n`). Its `3n` edges use a fixed id
//! layout that the rest of the crate leans on:
//!
//! * outer edge `i` is `u_i u_{i+1}` with id `i`,
//! * spoke `i` is `u_i v_i` with id `n + i`,
//! * inner edge `i` is `v_i v_{i+k}` with id `2n + i`,
//!
//! all indices mod `n`. Parameters with `k > floor((n-1)/2)` are reduced
//! through the isomorphism `P_{n,k} = P_{n,n-k}` and the reduction is
//! recorded so callers can surface a notice.

use crate::error::Error;
use crate::multigraph::Multigraph;
use crate::Result;

/// Validated, normalized parameters of a generalized Petersen graph.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PetersenParams {
    n: usize,
    k: usize,
    normalized_from: Option<usize>,
}

impl PetersenParams {
    /// Validates `(n, k)`, reducing `k` to `n - k` when that lands inside
    /// the canonical range `1..=floor((n-1)/2)`.
    pub fn new(n: usize, k: usize) -> Result<Self> {
        if n < 3 {
            return Err(Error::InvalidN { n });
        }
        let max_k = (n - 1) / 2;
        if (1..=max_k).contains(&k) {
            return Ok(Self {
                n,
                k,
                normalized_from: None,
            });
        }
        if k < n {
            let reduced = n - k;
            if (1..=max_k).contains(&reduced) {
                return Ok(Self {
                    n,
                    k: reduced,
                    normalized_from: Some(k),
                });
            }
        }
        Err(Error::InvalidK { n, k, max_k })
    }

    /// Number of outer (equivalently inner) vertices.
    #[must_use]
    pub fn n(&self) -> usize {
        self.n
    }

    /// Inner step after normalization.
    #[must_use]
    pub fn k(&self) -> usize {
        self.k
    }

    /// The original `k` when the parameters were reduced via
    /// `P_{n,k} = P_{n,n-k}`, otherwise `None`.
    #[must_use]
    pub fn normalized_from(&self) -> Option<usize> {
        self.normalized_from
    }
}

/// Index of outer vertex `u_i`.
#[must_use]
pub fn u(n: usize, i: usize) -> usize {
    i % n
}

/// Index of inner vertex `v_i`.
#[must_use]
pub fn v(n: usize, i: usize) -> usize {
    n + i % n
}

/// Edge id of outer edge `u_i u_{i+1}`.
#[must_use]
pub fn outer_id(n: usize, i: usize) -> usize {
    i % n
}

/// Edge id of spoke `u_i v_i`.
#[must_use]
pub fn spoke_id(n: usize, i: usize) -> usize {
    n + i % n
}

/// Edge id of inner edge `v_i v_{i+k}`.
#[must_use]
pub fn inner_id(n: usize, i: usize) -> usize {
    2 * n + i % n
}

/// Edge id joining two vertex indices of `P_{n,k}`, if they are adjacent.
#[must_use]
pub fn edge_between(n: usize, k: usize, x: usize, y: usize) -> Option<usize> {
    let (x, y) = (x % (2 * n), y % (2 * n));
    if x == y {
        return None;
    }
    match (x < n, y < n) {
        (true, true) => {
            if (x + 1) % n == y {
                Some(outer_id(n, x))
            } else if (y + 1) % n == x {
                Some(outer_id(n, y))
            } else {
                None
            }
        }
        (true, false) => (x == y - n).then(|| spoke_id(n, x)),
        (false, true) => (y == x - n).then(|| spoke_id(n, y)),
        (false, false) => {
            let (a, b) = (x - n, y - n);
            if (a + k) % n == b {
                Some(inner_id(n, a))
            } else if (b + k) % n == a {
                Some(inner_id(n, b))
            } else {
                None
            }
        }
    }
}

/// Builds the host multigraph of `P_{n,k}` with the fixed id layout and
/// human-readable labels (`u3`, `v7`, `outer3`, `spoke0`, `inner5`).
#[must_use]
pub fn generate(params: &PetersenParams) -> Multigraph {
    let (n, k) = (params.n(), params.k());
    let mut endpoints = Vec::with_capacity(3 * n);
    let mut edge_labels = Vec::with_capacity(3 * n);
    for i in 0..n {
        endpoints.push((u(n, i), u(n, i + 1)));
        edge_labels.push(format!("outer{i}"));
    }
    for i in 0..n {
        endpoints.push((u(n, i), v(n, i)));
        edge_labels.push(format!("spoke{i}"));
    }
    for i in 0..n {
        endpoints.push((v(n, i), v(n, i + k)));
        edge_labels.push(format!("inner{i}"));
    }
    let mut vertex_labels = Vec::with_capacity(2 * n);
    for i in 0..n {
        vertex_labels.push(format!("u{i}"));
    }
    for i in 0..n {
        vertex_labels.push(format!("v{i}"));
    }
    Multigraph::with_labels(2 * n, &endpoints, vertex_labels, edge_labels)
        .expect("petersen layout is always well-formed")
}

/// Exact divisibility test for whether `P_{n,k}` contains a copy of `C_d`,
/// for `d` in `{5, 6}`. Works on normalized parameters.
pub fn has_cycle_closed_form(params: &PetersenParams, d: usize) -> Result<bool> {
    let (n, k) = (params.n(), params.k());
    match d {
        5 => Ok(n == 3 || n == 5 || k == 2 || 5 * k == n || 5 * k == 2 * n || 2 * k + 1 == n),
        6 => Ok(k == 1 || k == 3 || 6 * k == n || 3 * k == n + 1 || 3 * k + 1 == n || 2 * k + 2 == n),
        _ => Err(Error::UnsupportedCycleLength { d }),
    }
}
