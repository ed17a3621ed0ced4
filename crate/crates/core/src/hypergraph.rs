//! The copy hypergraph: one vertex per copy, one hyperedge per host edge.
//!
//! For a host graph with copy set Ψ, hyperedge `F_j` collects the indices
//! of the copies that use host edge `j`. Two derived parameters steer the
//! solver: the rank `r` (largest hyperedge) and the overlap `s` (largest
//! pairwise hyperedge intersection). When `r ≤ 2` the hypergraph IS a
//! multigraph (size-1 hyperedges become loops) and the cycle-packing route
//! applies; otherwise the covering-partition search takes over.

use serde::{Deserialize, Serialize};

use crate::bits::{Bits, MAX_BITS};
use crate::census::CopySet;
use crate::error::Error;
use crate::multigraph::Multigraph;
use crate::Result;

/// Copy hypergraph `H` with `l` vertices (copies) and one hyperedge per
/// host edge.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CopyHypergraph {
    l: usize,
    d: Option<usize>,
    hyperedges: Vec<Vec<usize>>,
    vsets: Vec<Bits>,
    at_vertex: Vec<Vec<usize>>,
    copy_labels: Vec<String>,
    rank: usize,
    overlap: usize,
}

#[derive(Serialize, Deserialize)]
struct CopyHypergraphJson {
    l: usize,
    hyperedges: Vec<Vec<usize>>,
}

impl CopyHypergraph {
    /// Builds the hypergraph of a host graph and its copy set. Every host
    /// edge must lie in some copy; split dead edges off first.
    pub fn build(g: &Multigraph, psi: &CopySet) -> Result<Self> {
        if psi.host_edge_count() != g.edge_count() {
            return Err(Error::Malformed(format!(
                "copy set references a host with {} edges, graph has {}",
                psi.host_edge_count(),
                g.edge_count()
            )));
        }
        if psi.is_empty() {
            return Err(Error::NoCopies);
        }
        let l = psi.len();
        let m = g.edge_count();
        let mut hyperedges: Vec<Vec<usize>> = vec![Vec::new(); m];
        for copy in psi.copies() {
            for &e in &copy.edge_ids {
                hyperedges[e].push(copy.index);
            }
        }
        let dead: Vec<usize> = (0..m).filter(|&e| hyperedges[e].is_empty()).collect();
        if !dead.is_empty() {
            return Err(Error::DeadEdges { edges: dead });
        }
        let labels = psi.copies().iter().map(|c| c.label.clone()).collect();
        Self::assemble(l, Some(psi.d()), hyperedges, labels)
    }

    /// Builds a hypergraph from raw hyperedges, for generic instances and
    /// tests. Hyperedges must be nonempty; vertices of degree < 2 are
    /// allowed (they simply admit no covering partition).
    pub fn from_hyperedges(l: usize, hyperedges: Vec<Vec<usize>>) -> Result<Self> {
        if l == 0 {
            return Err(Error::NoCopies);
        }
        let dead: Vec<usize> = hyperedges
            .iter()
            .enumerate()
            .filter(|(_, f)| f.is_empty())
            .map(|(j, _)| j)
            .collect();
        if !dead.is_empty() {
            return Err(Error::DeadEdges { edges: dead });
        }
        let labels = (0..l).map(|i| format!("x{i}")).collect();
        Self::assemble(l, None, hyperedges, labels)
    }

    fn assemble(
        l: usize,
        d: Option<usize>,
        mut hyperedges: Vec<Vec<usize>>,
        copy_labels: Vec<String>,
    ) -> Result<Self> {
        if l > MAX_BITS {
            return Err(Error::Malformed(format!(
                "{l} copies exceed the supported maximum of {MAX_BITS}"
            )));
        }
        let mut vsets = Vec::with_capacity(hyperedges.len());
        let mut at_vertex: Vec<Vec<usize>> = vec![Vec::new(); l];
        for (j, f) in hyperedges.iter_mut().enumerate() {
            f.sort_unstable();
            if f.windows(2).any(|w| w[0] == w[1]) {
                return Err(Error::Malformed(format!(
                    "hyperedge {j} repeats a copy index"
                )));
            }
            if let Some(&v) = f.iter().find(|&&v| v >= l) {
                return Err(Error::VertexOutOfRange {
                    vertex: v,
                    vertex_count: l,
                });
            }
            vsets.push(Bits::from_indices(f));
            for &v in f.iter() {
                at_vertex[v].push(j);
            }
        }
        let (rank, overlap) = compute_rank_overlap(&hyperedges, &vsets);
        Ok(Self {
            l,
            d,
            hyperedges,
            vsets,
            at_vertex,
            copy_labels,
            rank,
            overlap,
        })
    }

    /// Number of hypergraph vertices (copies).
    #[must_use]
    pub fn l(&self) -> usize {
        self.l
    }

    /// Number of hyperedges (host edges).
    #[must_use]
    pub fn m(&self) -> usize {
        self.hyperedges.len()
    }

    /// Cycle length of the originating census, when built from one.
    #[must_use]
    pub fn d(&self) -> Option<usize> {
        self.d
    }

    /// Hyperedge `j` as a sorted copy-index slice.
    pub fn hyperedge(&self, j: usize) -> Result<&[usize]> {
        self.hyperedges
            .get(j)
            .map(Vec::as_slice)
            .ok_or(Error::EdgeOutOfRange {
                edge: j,
                edge_count: self.hyperedges.len(),
            })
    }

    /// Hyperedge `j` as a bitset. Panics only on ids from a foreign graph;
    /// use [`Self::hyperedge`] for fallible access.
    #[must_use]
    pub fn vset(&self, j: usize) -> Bits {
        self.vsets[j]
    }

    /// Hyperedges containing copy `v`, ascending.
    pub fn edges_at(&self, v: usize) -> Result<&[usize]> {
        self.at_vertex
            .get(v)
            .map(Vec::as_slice)
            .ok_or(Error::VertexOutOfRange {
                vertex: v,
                vertex_count: self.l,
            })
    }

    /// Number of hyperedges containing copy `v`. The sum over all copies
    /// equals `d·l` when the hypergraph came from a cycle census.
    pub fn degree(&self, v: usize) -> Result<usize> {
        Ok(self.edges_at(v)?.len())
    }

    /// Label of copy `v` (family label from the census, `x{v}` otherwise).
    pub fn copy_label(&self, v: usize) -> Result<&str> {
        self.copy_labels
            .get(v)
            .map(String::as_str)
            .ok_or(Error::VertexOutOfRange {
                vertex: v,
                vertex_count: self.l,
            })
    }

    /// All copy labels in index order.
    #[must_use]
    pub fn copy_labels(&self) -> &[String] {
        &self.copy_labels
    }

    /// `(r, s)`: maximum hyperedge size and maximum pairwise intersection
    /// size. With a single hyperedge there is no pair, so `s = 0`.
    #[must_use]
    pub fn rank_and_overlap(&self) -> (usize, usize) {
        (self.rank, self.overlap)
    }

    /// Reinterprets a rank-≤ 2 hypergraph as a multigraph on the copies:
    /// a size-2 hyperedge becomes an ordinary edge, a size-1 hyperedge a
    /// loop; edge ids are preserved. Rank ≥ 3 is a typed signal telling
    /// the caller to use the covering search instead.
    pub fn as_multigraph(&self) -> Result<Multigraph> {
        if self.rank > 2 {
            return Err(Error::RankTooHigh { rank: self.rank });
        }
        let endpoints: Vec<(usize, usize)> = self
            .hyperedges
            .iter()
            .map(|f| match f.as_slice() {
                [v] => (*v, *v),
                [a, b] => (*a, *b),
                _ => unreachable!("rank checked above and hyperedges are nonempty"),
            })
            .collect();
        let edge_labels = (0..self.m()).map(|j| format!("F{j}")).collect();
        Multigraph::with_labels(self.l, &endpoints, self.copy_labels.clone(), edge_labels)
    }

    /// Serializes to `{"l", "hyperedges"}`.
    #[must_use]
    pub fn to_json(&self) -> String {
        let shadow = CopyHypergraphJson {
            l: self.l,
            hyperedges: self.hyperedges.clone(),
        };
        serde_json::to_string_pretty(&shadow).expect("hypergraph serialization cannot fail")
    }

    /// Parses the canonical JSON shape.
    pub fn from_json(text: &str) -> Result<Self> {
        let shadow: CopyHypergraphJson = serde_json::from_str(text)
            .map_err(|e| Error::Malformed(format!("bad hypergraph JSON: {e}")))?;
        Self::from_hyperedges(shadow.l, shadow.hyperedges)
    }
}

fn compute_rank_overlap(hyperedges: &[Vec<usize>], vsets: &[Bits]) -> (usize, usize) {
    let rank = hyperedges.iter().map(Vec::len).max().unwrap_or(0);
    let mut overlap = 0;
    for i in 0..vsets.len() {
        for j in i + 1..vsets.len() {
            overlap = overlap.max(vsets[i].intersect_count(&vsets[j]));
        }
    }
    (rank, overlap)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::census::{catalog_cycles, dead_edges, enumerate_cycles};
    use crate::petersen::{generate, PetersenParams};

    fn hypergraph(n: usize, k: usize, d: usize) -> CopyHypergraph {
        let p = PetersenParams::new(n, k).unwrap();
        let g = generate(&p);
        let psi = catalog_cycles(&p, d).unwrap();
        CopyHypergraph::build(&g, &psi).unwrap()
    }

    fn assert_hyperedge(h: &CopyHypergraph, j: usize, expected: &mut Vec<usize>) {
        expected.sort_unstable();
        assert_eq!(h.hyperedge(j).unwrap(), expected.as_slice(), "hyperedge {j}");
    }

    #[test]
    fn p31_c5_hyperedges_follow_the_closed_form() {
        // Copies: x_a = family-1 copy a, y_a = family-2 copy a (offset 3).
        let h = hypergraph(3, 1, 5);
        assert_eq!((h.l(), h.m()), (6, 9));
        let x = |a: usize| a % 3;
        let y = |a: usize| 3 + a % 3;
        for a in 0..3 {
            assert_hyperedge(&h, a, &mut vec![x(a), x(a + 1), y(a)]);
            assert_hyperedge(&h, 3 + a, &mut vec![x(a + 1), x(a + 2), y(a), y(a + 2)]);
            assert_hyperedge(&h, 6 + a, &mut vec![x(a + 2), y(a + 1), y(a + 2)]);
        }
        assert_eq!(h.rank_and_overlap(), (4, 2));
        let total: usize = (0..h.l()).map(|v| h.degree(v).unwrap()).sum();
        assert_eq!(total, 5 * h.l());
    }

    #[test]
    fn p61_c6_hyperedges_follow_the_closed_form() {
        // Copies: x_a = hexagon family (6), y = outer rim, z = inner rim.
        let h = hypergraph(6, 1, 6);
        assert_eq!((h.l(), h.m()), (8, 18));
        let x = |a: usize| a % 6;
        let (y, z) = (6, 7);
        for a in 0..6 {
            assert_hyperedge(&h, a, &mut vec![x(a), x(a + 5), y]);
            assert_hyperedge(&h, 6 + a, &mut vec![x(a), x(a + 4)]);
            assert_hyperedge(&h, 12 + a, &mut vec![x(a), x(a + 5), z]);
        }
        assert_eq!(h.rank_and_overlap(), (3, 2));
        assert_eq!(
            h.as_multigraph().unwrap_err(),
            Error::RankTooHigh { rank: 3 }
        );
    }

    #[test]
    fn p83_c6_rank_and_overlap() {
        let h = hypergraph(8, 3, 6);
        assert_eq!((h.l(), h.m()), (24, 24));
        let x = |a: usize| a % 8;
        let y = |a: usize| 8 + a % 8;
        let z = |a: usize| 16 + a % 8;
        for a in 0..8 {
            assert_hyperedge(
                &h,
                a,
                &mut vec![x(a), x(a + 6), x(a + 7), y(a), y(a + 1), z(a)],
            );
            assert_hyperedge(
                &h,
                8 + a,
                &mut vec![x(a), x(a + 5), y(a + 1), y(a + 7), z(a), z(a + 7)],
            );
            assert_hyperedge(
                &h,
                16 + a,
                &mut vec![x(a), y(a + 4), y(a + 7), z(a), z(a + 2), z(a + 5)],
            );
        }
        assert_eq!(h.rank_and_overlap(), (6, 3));
        let total: usize = (0..h.l()).map(|v| h.degree(v).unwrap()).sum();
        assert_eq!(total, 6 * h.l());
    }

    #[test]
    fn p10_3_c6_hyperedges_follow_the_closed_form() {
        let h = hypergraph(10, 3, 6);
        assert_eq!((h.l(), h.m()), (20, 30));
        let x = |a: usize| a % 10;
        let y = |a: usize| 10 + a % 10;
        for a in 0..10 {
            assert_hyperedge(&h, a, &mut vec![x(a), x(a + 8), x(a + 9), y(a)]);
            assert_hyperedge(&h, 10 + a, &mut vec![x(a), x(a + 7), y(a), y(a + 9)]);
            assert_hyperedge(&h, 20 + a, &mut vec![x(a), y(a + 3), y(a + 6), y(a + 9)]);
        }
        assert_eq!(h.rank_and_overlap(), (4, 2));
    }

    #[test]
    fn p18_3_c6_hyperedges_follow_the_closed_form() {
        let h = hypergraph(18, 3, 6);
        assert_eq!((h.l(), h.m()), (21, 54));
        let x = |a: usize| a % 18;
        for a in 0..18 {
            assert_hyperedge(&h, a, &mut vec![x(a + 16), x(a + 17), x(a)]);
            assert_hyperedge(&h, 18 + a, &mut vec![x(a), x(a + 15)]);
            assert_hyperedge(&h, 36 + a, &mut vec![x(a), 18 + a % 3]);
        }
        assert_eq!(h.rank_and_overlap(), (3, 2));
    }

    #[test]
    fn dead_edge_split_turns_p51_c5_into_pure_loops() {
        let p = PetersenParams::new(5, 1).unwrap();
        let g = generate(&p);
        let psi = catalog_cycles(&p, 5).unwrap();
        // Building on the full host fails: the spokes lie in no copy.
        assert_eq!(
            CopyHypergraph::build(&g, &psi).unwrap_err(),
            Error::DeadEdges {
                edges: vec![5, 6, 7, 8, 9]
            }
        );
        let dead = dead_edges(&g, &psi).unwrap();
        let (core, map) = g.delete_edges(&dead).unwrap();
        let h = CopyHypergraph::build(&core, &psi.remap(&map).unwrap()).unwrap();
        assert_eq!((h.l(), h.m()), (2, 10));
        assert_eq!(h.rank_and_overlap(), (1, 1));
        let mg = h.as_multigraph().unwrap();
        assert_eq!(mg.loop_count(), 10);
        assert_eq!(mg.vertex_label(0).unwrap(), "G1");
    }

    #[test]
    fn empty_census_is_rejected() {
        let p = PetersenParams::new(7, 1).unwrap();
        let g = generate(&p);
        let psi = enumerate_cycles(&g, 5).unwrap();
        assert_eq!(CopyHypergraph::build(&g, &psi).unwrap_err(), Error::NoCopies);
    }

    #[test]
    fn raw_hyperedges_validate_indices() {
        let err = CopyHypergraph::from_hyperedges(3, vec![vec![0, 3]]).unwrap_err();
        assert_eq!(
            err,
            Error::VertexOutOfRange {
                vertex: 3,
                vertex_count: 3
            }
        );
        let err = CopyHypergraph::from_hyperedges(3, vec![vec![0, 1], vec![]]).unwrap_err();
        assert_eq!(err, Error::DeadEdges { edges: vec![1] });
    }

    #[test]
    fn single_hyperedge_has_zero_overlap() {
        let h = CopyHypergraph::from_hyperedges(4, vec![vec![0, 1, 2, 3]]).unwrap();
        assert_eq!(h.rank_and_overlap(), (4, 0));
    }

    #[test]
    fn json_roundtrip_preserves_structure() {
        let h = hypergraph(5, 2, 6);
        let back = CopyHypergraph::from_json(&h.to_json()).unwrap();
        assert_eq!(back.l(), h.l());
        assert_eq!(back.m(), h.m());
        assert_eq!(back.rank_and_overlap(), h.rank_and_overlap());
        for j in 0..h.m() {
            assert_eq!(back.hyperedge(j).unwrap(), h.hyperedge(j).unwrap());
        }
    }
}
