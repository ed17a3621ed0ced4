//! Exact maximum vertex-disjoint cycle packing, the quantity `M(G)` that
//! turns rank-2 instances into closed-form answers.
//!
//! Cycles of length 2 are pairs of parallel edges; loops never count. The
//! search restricts itself to minimal cycles (no cycle on a proper subset
//! of the vertices): every maximum packing converts into one that uses
//! only minimal cycles by repeatedly replacing a cycle that has a chord,
//! or a doubled consecutive pair, with the smaller cycle inside it, so
//! the count is unaffected while the candidate set stays tiny.

use serde::{Deserialize, Serialize};

use crate::bits::{Bits, MAX_BITS};
use crate::error::Error;
use crate::multigraph::Multigraph;
use crate::Result;

/// A maximum packing: `count` vertex-disjoint cycles, each given by its
/// sorted edge ids.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CyclePacking {
    /// Number of packed cycles, the value `M`.
    #[serde(rename = "M")]
    pub count: usize,
    /// The packed cycles, each a sorted list of edge ids, listed in
    /// ascending lexicographic order.
    pub cycles: Vec<Vec<usize>>,
}

impl CyclePacking {
    /// Serializes to `{"M", "cycles"}`.
    #[must_use]
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("packing serialization cannot fail")
    }

    /// Parses the canonical JSON shape.
    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::Malformed(format!("bad packing JSON: {e}")))
    }
}

/// Computes `M(G)` exactly with a branch-and-bound over minimal cycles,
/// together with a deterministic certificate: the lexicographically least
/// maximum packing over canonical minimal-cycle representatives (cycles
/// as sorted edge-id lists, packings compared as sorted lists of cycles).
///
/// `node_budget` caps branch nodes; exceeding it yields a typed resource
/// error carrying the bracket known so far.
pub fn max_disjoint_cycles(g: &Multigraph, node_budget: u64) -> Result<CyclePacking> {
    if g.vertex_count() > MAX_BITS {
        return Err(Error::Malformed(format!(
            "{} vertices exceed the supported maximum of {MAX_BITS}",
            g.vertex_count()
        )));
    }
    let mut cands = minimal_cycles(g)?;
    if cands.is_empty() {
        return Ok(CyclePacking {
            count: 0,
            cycles: Vec::new(),
        });
    }
    // Branch order: shortest cycles first, then lexicographic.
    cands.sort_by(|a, b| (a.len(), a).cmp(&(b.len(), b)));
    let vbits: Vec<Bits> = cands.iter().map(|c| cycle_vertices(g, c)).collect();
    let mut at_vertex: Vec<Vec<usize>> = vec![Vec::new(); g.vertex_count()];
    for (i, vb) in vbits.iter().enumerate() {
        for v in vb.iter() {
            at_vertex[v].push(i);
        }
    }
    let all = Bits::all_below(g.vertex_count());
    let min_len = cands.iter().map(Vec::len).min().unwrap_or(2);
    let mut union_all = Bits::empty();
    for vb in &vbits {
        union_all = union_all.union(vb);
    }
    let mut search = PackSearch {
        vbits: &vbits,
        at_vertex: &at_vertex,
        nodes: 0,
        budget: node_budget,
        root_hi: union_all.count() / min_len,
        best_overall: 0,
    };
    let m = search.solve(all, None)?;

    // Lexicographically least certificate: commit the smallest candidate
    // whose removal still leaves room for the remaining cycles; committed
    // cycles come out ascending, so one pass suffices.
    let mut order: Vec<usize> = (0..cands.len()).collect();
    order.sort_by(|&a, &b| cands[a].cmp(&cands[b]));
    let mut avail = all;
    let mut need = m;
    let mut cycles = Vec::with_capacity(m);
    for ci in order {
        if need == 0 {
            break;
        }
        if !vbits[ci].is_subset(&avail) {
            continue;
        }
        let rest = avail.minus(&vbits[ci]);
        if need == 1 || search.solve(rest, Some(need - 1))? >= need - 1 {
            cycles.push(cands[ci].clone());
            avail = rest;
            need -= 1;
        }
    }
    if need != 0 {
        return Err(Error::Malformed(
            "internal error: packing certificate reconstruction failed".into(),
        ));
    }
    Ok(CyclePacking { count: m, cycles })
}

/// Checks a packing against its host: every listed cycle is a genuine
/// loop-free cycle of length ≥ 2 and the cycles are pairwise
/// vertex-disjoint.
pub fn verify_packing(g: &Multigraph, packing: &CyclePacking) -> Result<()> {
    if packing.count != packing.cycles.len() {
        return Err(Error::Malformed(format!(
            "packing claims {} cycles but lists {}",
            packing.count,
            packing.cycles.len()
        )));
    }
    let mut used = vec![false; g.vertex_count()];
    for cycle in &packing.cycles {
        for v in check_cycle(g, cycle)? {
            if used[v] {
                return Err(Error::Malformed(format!(
                    "packed cycles share vertex {v}"
                )));
            }
            used[v] = true;
        }
    }
    Ok(())
}

/// Validates one cycle given as edge ids and returns its vertices.
fn check_cycle(g: &Multigraph, edges: &[usize]) -> Result<Vec<usize>> {
    if edges.len() < 2 {
        return Err(Error::Malformed(format!(
            "a packed cycle needs at least 2 edges, got {}",
            edges.len()
        )));
    }
    let mut sorted = edges.to_vec();
    sorted.sort_unstable();
    if sorted.windows(2).any(|w| w[0] == w[1]) {
        return Err(Error::Malformed("a packed cycle repeats an edge".into()));
    }
    let mut incidence: std::collections::BTreeMap<usize, Vec<(usize, usize)>> =
        std::collections::BTreeMap::new();
    for (slot, &e) in edges.iter().enumerate() {
        let (a, b) = g.endpoints(e)?;
        if a == b {
            return Err(Error::Malformed(format!(
                "loop {e} cannot participate in a cycle"
            )));
        }
        incidence.entry(a).or_default().push((slot, b));
        incidence.entry(b).or_default().push((slot, a));
    }
    if incidence.len() != edges.len() {
        return Err(Error::Malformed(
            "a packed cycle must touch exactly as many vertices as edges".into(),
        ));
    }
    if incidence.values().any(|inc| inc.len() != 2) {
        return Err(Error::Malformed(
            "every vertex of a packed cycle must have degree exactly 2".into(),
        ));
    }
    // Walk the cycle to rule out two disjoint closed parts.
    let start = *incidence.keys().next().expect("nonempty cycle");
    let mut used_slot = vec![false; edges.len()];
    let mut current = start;
    let mut steps = 0;
    loop {
        let Some(&(slot, next)) = incidence[&current]
            .iter()
            .find(|(slot, _)| !used_slot[*slot])
        else {
            break;
        };
        used_slot[slot] = true;
        current = next;
        steps += 1;
    }
    if steps != edges.len() || current != start {
        return Err(Error::Malformed(
            "packed edges do not form a single closed cycle".into(),
        ));
    }
    Ok(incidence.keys().copied().collect())
}

fn cycle_vertices(g: &Multigraph, edges: &[usize]) -> Bits {
    let mut bits = Bits::empty();
    for &e in edges {
        let (a, b) = g.endpoints(e).expect("candidate edges are valid");
        bits.insert(a);
        bits.insert(b);
    }
    bits
}

/// Enumerates the minimal cycles: one canonical 2-cycle (two smallest
/// edge ids) per parallel pair, plus every chordless cycle of length ≥ 3
/// none of whose consecutive pairs is doubled.
fn minimal_cycles(g: &Multigraph) -> Result<Vec<Vec<usize>>> {
    let nv = g.vertex_count();
    let mut pair_edges: std::collections::BTreeMap<(usize, usize), Vec<usize>> =
        std::collections::BTreeMap::new();
    for e in g.edges() {
        if e.a != e.b {
            let key = (e.a.min(e.b), e.a.max(e.b));
            pair_edges.entry(key).or_default().push(e.id);
        }
    }
    let mut adj: Vec<Vec<usize>> = vec![Vec::new(); nv];
    for &(a, b) in pair_edges.keys() {
        adj[a].push(b);
        adj[b].push(a);
    }
    for list in &mut adj {
        list.sort_unstable();
    }
    let single = |a: usize, b: usize| -> Option<usize> {
        let ids = pair_edges.get(&(a.min(b), a.max(b)))?;
        if ids.len() == 1 {
            Some(ids[0])
        } else {
            None
        }
    };
    let adjacent = |a: usize, b: usize| adj[a].binary_search(&b).is_ok();

    let mut out: Vec<Vec<usize>> = Vec::new();
    for ids in pair_edges.values() {
        if ids.len() >= 2 {
            out.push(vec![ids[0], ids[1]]);
        }
    }

    // Depth-first enumeration of chordless cycles rooted at their minimum
    // vertex. A vertex adjacent to the root can only close the cycle:
    // anything longer through it would carry a chord back to the root.
    fn extend(
        path: &mut Vec<usize>,
        root: usize,
        adj: &[Vec<usize>],
        adjacent: &dyn Fn(usize, usize) -> bool,
        single: &dyn Fn(usize, usize) -> Option<usize>,
        out: &mut Vec<Vec<usize>>,
    ) {
        let last = *path.last().expect("path is never empty");
        if path.len() >= 3 && adjacent(last, root) {
            if path[1] < last {
                if let Some(close) = single(last, root) {
                    let mut edges: Vec<usize> = path
                        .windows(2)
                        .map(|w| single(w[0], w[1]).expect("traversed single edges"))
                        .collect();
                    edges.push(close);
                    edges.sort_unstable();
                    out.push(edges);
                }
            }
            return;
        }
        let internal_end = path.len().saturating_sub(1);
        for &w in &adj[last] {
            if w <= root || path.contains(&w) || single(last, w).is_none() {
                continue;
            }
            if (1..internal_end).any(|idx| adjacent(path[idx], w)) {
                continue;
            }
            path.push(w);
            extend(path, root, adj, adjacent, single, out);
            path.pop();
        }
    }

    for root in 0..nv {
        let mut path = vec![root];
        extend(&mut path, root, &adj, &adjacent, &single, &mut out);
    }
    Ok(out)
}

struct PackSearch<'a> {
    vbits: &'a [Bits],
    at_vertex: &'a [Vec<usize>],
    nodes: u64,
    budget: u64,
    root_hi: usize,
    best_overall: usize,
}

impl PackSearch<'_> {
    /// Exact maximum packing size within `avail`; with a target, returns
    /// early as soon as the target is met (the caller only compares
    /// against it).
    fn solve(&mut self, avail: Bits, target: Option<usize>) -> Result<usize> {
        let track = target.is_none();
        let mut best = 0;
        self.descend(avail, 0, &mut best, target, track)?;
        Ok(best)
    }

    fn descend(
        &mut self,
        avail: Bits,
        count: usize,
        best: &mut usize,
        target: Option<usize>,
        track: bool,
    ) -> Result<()> {
        if count > *best {
            *best = count;
            if track {
                self.best_overall = self.best_overall.max(count);
            }
        }
        if target.is_some_and(|t| *best >= t) {
            return Ok(());
        }
        self.nodes += 1;
        if self.nodes > self.budget {
            return Err(Error::Budget {
                explored: self.nodes,
                budget: self.budget,
                quantity: "M",
                lo: self.best_overall,
                hi: self.root_hi,
            });
        }
        let mut usable_union = Bits::empty();
        let mut min_len = usize::MAX;
        for vb in self.vbits {
            if vb.is_subset(&avail) {
                usable_union = usable_union.union(vb);
                min_len = min_len.min(vb.count());
            }
        }
        if usable_union.is_empty() {
            return Ok(());
        }
        let bound = count + usable_union.count() / min_len;
        if bound <= *best || target.is_some_and(|t| bound < t) {
            return Ok(());
        }
        // Vertices on no usable candidate can never matter again.
        let avail = usable_union;
        let v = avail.iter().next().expect("nonempty usable union");
        for &ci in &self.at_vertex[v] {
            if self.vbits[ci].is_subset(&avail) {
                self.descend(avail.minus(&self.vbits[ci]), count + 1, best, target, track)?;
                if target.is_some_and(|t| *best >= t) {
                    return Ok(());
                }
            }
        }
        let mut skip = avail;
        skip.remove(v);
        self.descend(skip, count, best, target, track)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::census::catalog_cycles;
    use crate::hypergraph::CopyHypergraph;
    use crate::petersen::{generate, PetersenParams};

    fn copy_graph(n: usize, k: usize, d: usize) -> Multigraph {
        let p = PetersenParams::new(n, k).unwrap();
        let g = generate(&p);
        let psi = catalog_cycles(&p, d).unwrap();
        CopyHypergraph::build(&g, &psi)
            .unwrap()
            .as_multigraph()
            .unwrap()
    }

    #[test]
    fn parallel_pair_is_a_two_cycle() {
        let g = Multigraph::new(3, &[(0, 1), (0, 1), (1, 2)]).unwrap();
        let p = max_disjoint_cycles(&g, 1_000).unwrap();
        assert_eq!(p.count, 1);
        assert_eq!(p.cycles, vec![vec![0, 1]]);
        verify_packing(&g, &p).unwrap();
    }

    #[test]
    fn loops_never_pack() {
        let endpoints: Vec<(usize, usize)> =
            (0..10).map(|i| (i / 5, i / 5)).collect();
        let g = Multigraph::new(2, &endpoints).unwrap();
        let p = max_disjoint_cycles(&g, 1_000).unwrap();
        assert_eq!(p.count, 0);
        assert!(p.cycles.is_empty());
    }

    #[test]
    fn two_disjoint_triangles_both_pack() {
        let g = Multigraph::new(
            6,
            &[(0, 1), (1, 2), (0, 2), (3, 4), (4, 5), (3, 5)],
        )
        .unwrap();
        let p = max_disjoint_cycles(&g, 10_000).unwrap();
        assert_eq!(p.count, 2);
        assert_eq!(p.cycles, vec![vec![0, 1, 2], vec![3, 4, 5]]);
        verify_packing(&g, &p).unwrap();
    }

    #[test]
    fn tripled_triangle_packs_once_via_smallest_pair() {
        let g = Multigraph::new(
            3,
            &[
                (0, 1),
                (1, 2),
                (0, 2),
                (0, 1),
                (1, 2),
                (0, 2),
                (0, 1),
                (1, 2),
                (0, 2),
            ],
        )
        .unwrap();
        let p = max_disjoint_cycles(&g, 10_000).unwrap();
        assert_eq!(p.count, 1);
        assert_eq!(p.cycles, vec![vec![0, 3]]);
    }

    #[test]
    fn hexagon_copy_graph_of_p71_packs_three_cycles() {
        let g = copy_graph(7, 1, 6);
        let p = max_disjoint_cycles(&g, 1_000_000).unwrap();
        assert_eq!(p.count, 3);
        verify_packing(&g, &p).unwrap();
    }

    #[test]
    fn pentagon_copy_graph_of_p94_packs_three_cycles() {
        let g = copy_graph(9, 4, 5);
        let p = max_disjoint_cycles(&g, 1_000_000).unwrap();
        assert_eq!(p.count, 3);
    }

    #[test]
    fn pentagon_copy_graph_of_p10_2_packs_four_cycles() {
        let g = copy_graph(10, 2, 5);
        let p = max_disjoint_cycles(&g, 1_000_000).unwrap();
        assert_eq!(p.count, 4);
        verify_packing(&g, &p).unwrap();
    }

    #[test]
    fn exhausted_budget_reports_a_bracket() {
        let g = Multigraph::new(
            6,
            &[(0, 1), (1, 2), (0, 2), (3, 4), (4, 5), (3, 5)],
        )
        .unwrap();
        let err = max_disjoint_cycles(&g, 1).unwrap_err();
        match err {
            Error::Budget {
                quantity, lo, hi, ..
            } => {
                assert_eq!(quantity, "M");
                assert!(lo <= hi);
            }
            other => panic!("expected budget error, got {other:?}"),
        }
    }

    #[test]
    fn verifier_rejects_vertex_sharing() {
        let g = Multigraph::new(
            5,
            &[(0, 1), (1, 2), (0, 2), (2, 3), (3, 4), (2, 4)],
        )
        .unwrap();
        let bogus = CyclePacking {
            count: 2,
            cycles: vec![vec![0, 1, 2], vec![3, 4, 5]],
        };
        assert!(matches!(
            verify_packing(&g, &bogus),
            Err(Error::Malformed(_))
        ));
    }

    #[test]
    fn verifier_rejects_open_paths() {
        let g = Multigraph::new(4, &[(0, 1), (1, 2), (2, 3)]).unwrap();
        let bogus = CyclePacking {
            count: 1,
            cycles: vec![vec![0, 1, 2]],
        };
        assert!(matches!(
            verify_packing(&g, &bogus),
            Err(Error::Malformed(_))
        ));
    }

    #[test]
    fn packing_json_roundtrip() {
        let p = CyclePacking {
            count: 2,
            cycles: vec![vec![0, 1, 2], vec![5, 9]],
        };
        assert_eq!(CyclePacking::from_json(&p.to_json()).unwrap(), p);
        assert!(p.to_json().contains("\"M\""));
    }
}
