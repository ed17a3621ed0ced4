//! Cycle census: the set of copies of `C_d` inside a host graph.
//!
//! Copies can come from two sources that must agree: a closed-form
//! catalog for the generalized Petersen parameter families that have one
//! (labels follow the family naming, e.g. `G1[3]`), and a brute-force
//! enumeration over the host graph (labels `enum`). A copy is stored as a
//! sorted list of host edge ids; equality between the two sources means
//! equality as sets of edge sets.

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use crate::error::Error;
use crate::multigraph::{EdgeIdMap, Multigraph};
use crate::petersen::{self, PetersenParams};
use crate::Result;

/// One copy of the target cycle, as a sorted list of host edge ids.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Copy {
    /// Dense copy index inside the owning [`CopySet`].
    pub index: usize,
    /// Sorted host edge ids of the copy; always exactly `d` of them.
    pub edge_ids: Vec<usize>,
    /// Family label, e.g. `G1[3]`, `G2`, or `enum`.
    pub label: String,
}

/// The census of all copies of `C_d` in a host graph.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CopySet {
    d: usize,
    host_edge_count: usize,
    copies: Vec<Copy>,
}

#[derive(Serialize, Deserialize)]
struct CopyJson {
    label: String,
    edges: Vec<usize>,
}

#[derive(Serialize, Deserialize)]
struct CopySetJson {
    d: usize,
    copies: Vec<CopyJson>,
}

impl CopySet {
    /// Builds a copy set from `(label, edge ids)` entries, validating that
    /// every copy has exactly `d` distinct in-range edges.
    pub fn new(d: usize, host_edge_count: usize, entries: Vec<(String, Vec<usize>)>) -> Result<Self> {
        if d < 3 {
            return Err(Error::CycleLengthTooShort { d });
        }
        let mut copies = Vec::with_capacity(entries.len());
        for (index, (label, mut edge_ids)) in entries.into_iter().enumerate() {
            edge_ids.sort_unstable();
            if edge_ids.windows(2).any(|w| w[0] == w[1]) {
                return Err(Error::Malformed(format!(
                    "copy {label} repeats an edge id"
                )));
            }
            if edge_ids.len() != d {
                return Err(Error::Malformed(format!(
                    "copy {label} has {} edges, expected {d}",
                    edge_ids.len()
                )));
            }
            if let Some(&edge) = edge_ids.iter().find(|&&e| e >= host_edge_count) {
                return Err(Error::EdgeOutOfRange {
                    edge,
                    edge_count: host_edge_count,
                });
            }
            copies.push(Copy {
                index,
                edge_ids,
                label,
            });
        }
        Ok(Self {
            d,
            host_edge_count,
            copies,
        })
    }

    /// Target cycle length.
    #[must_use]
    pub fn d(&self) -> usize {
        self.d
    }

    /// Edge count of the host graph the copies reference.
    #[must_use]
    pub fn host_edge_count(&self) -> usize {
        self.host_edge_count
    }

    /// Number of copies.
    #[must_use]
    pub fn len(&self) -> usize {
        self.copies.len()
    }

    /// True when no copy exists.
    #[must_use]
    pub fn is_empty(&self) -> bool {
        self.copies.is_empty()
    }

    /// All copies in index order.
    #[must_use]
    pub fn copies(&self) -> &[Copy] {
        &self.copies
    }

    /// The copies as a set of edge sets, the canonical comparison form.
    #[must_use]
    pub fn edge_sets(&self) -> BTreeSet<Vec<usize>> {
        self.copies.iter().map(|c| c.edge_ids.clone()).collect()
    }

    /// Checks every copy against the host graph: its edges must form a
    /// single closed cycle on exactly `d` vertices, each of degree 2.
    pub fn validate(&self, g: &Multigraph) -> Result<()> {
        if self.host_edge_count != g.edge_count() {
            return Err(Error::Malformed(format!(
                "copy set references a host with {} edges, graph has {}",
                self.host_edge_count,
                g.edge_count()
            )));
        }
        for copy in &self.copies {
            validate_cycle(g, &copy.edge_ids, self.d).map_err(|e| match e {
                Error::Malformed(msg) => {
                    Error::Malformed(format!("copy {}: {msg}", copy.label))
                }
                other => other,
            })?;
        }
        Ok(())
    }

    /// Rewrites edge ids through a deletion map. Fails if any copy uses a
    /// deleted edge.
    pub fn remap(&self, map: &EdgeIdMap) -> Result<Self> {
        let mut entries = Vec::with_capacity(self.copies.len());
        for copy in &self.copies {
            let mut edges = Vec::with_capacity(copy.edge_ids.len());
            for &old in &copy.edge_ids {
                let new = map
                    .old_to_new
                    .get(old)
                    .copied()
                    .flatten()
                    .ok_or_else(|| {
                        Error::Malformed(format!(
                            "copy {} uses edge {old}, which was deleted",
                            copy.label
                        ))
                    })?;
                edges.push(new);
            }
            entries.push((copy.label.clone(), edges));
        }
        Self::new(self.d, map.new_to_old.len(), entries)
    }

    /// Serializes to `{"d", "copies": [{"label", "edges"}]}`.
    #[must_use]
    pub fn to_json(&self) -> String {
        let shadow = CopySetJson {
            d: self.d,
            copies: self
                .copies
                .iter()
                .map(|c| CopyJson {
                    label: c.label.clone(),
                    edges: c.edge_ids.clone(),
                })
                .collect(),
        };
        serde_json::to_string_pretty(&shadow).expect("copy set serialization cannot fail")
    }

    /// Parses the canonical JSON shape; `host_edge_count` restores the
    /// context the schema omits.
    pub fn from_json(text: &str, host_edge_count: usize) -> Result<Self> {
        let shadow: CopySetJson = serde_json::from_str(text)
            .map_err(|e| Error::Malformed(format!("bad copy set JSON: {e}")))?;
        Self::new(
            shadow.d,
            host_edge_count,
            shadow
                .copies
                .into_iter()
                .map(|c| (c.label, c.edges))
                .collect(),
        )
    }
}

fn validate_cycle(g: &Multigraph, edge_ids: &[usize], d: usize) -> Result<()> {
    use std::collections::BTreeMap;
    let mut adj: BTreeMap<usize, Vec<(usize, usize)>> = BTreeMap::new();
    for &e in edge_ids {
        let (a, b) = g.endpoints(e)?;
        if a == b {
            return Err(Error::Malformed(format!("edge {e} is a loop")));
        }
        adj.entry(a).or_default().push((b, e));
        adj.entry(b).or_default().push((a, e));
    }
    if adj.len() != d {
        return Err(Error::Malformed(format!(
            "touches {} vertices, expected {d}",
            adj.len()
        )));
    }
    if let Some((v, nb)) = adj.iter().find(|(_, nb)| nb.len() != 2) {
        return Err(Error::Malformed(format!(
            "vertex {v} has induced degree {}, expected 2",
            nb.len()
        )));
    }
    // Walk the cycle from the smallest vertex and require one closed tour.
    let start = *adj.keys().next().expect("copy has at least one edge");
    let mut used = BTreeSet::new();
    let mut at = start;
    loop {
        let &(next, via) = adj[&at]
            .iter()
            .find(|&&(_, e)| !used.contains(&e))
            .ok_or_else(|| Error::Malformed("edges do not form one closed cycle".into()))?;
        used.insert(via);
        at = next;
        if at == start {
            break;
        }
    }
    if used.len() != d {
        return Err(Error::Malformed(
            "edges split into more than one cycle".into(),
        ));
    }
    Ok(())
}

/// Enumerates every copy of `C_d` in the host graph by rooted depth-first
/// search, deduplicated on sorted edge ids and emitted in lexicographic
/// order with label `enum`.
pub fn enumerate_cycles(g: &Multigraph, d: usize) -> Result<CopySet> {
    if d < 3 {
        return Err(Error::CycleLengthTooShort { d });
    }
    let mut found: BTreeSet<Vec<usize>> = BTreeSet::new();
    let mut path_vertices: Vec<usize> = Vec::with_capacity(d);
    let mut path_edges: Vec<usize> = Vec::with_capacity(d);
    for start in 0..g.vertex_count() {
        path_vertices.push(start);
        extend_cycle_search(g, d, start, &mut path_vertices, &mut path_edges, &mut found);
        path_vertices.pop();
    }
    let entries = found
        .into_iter()
        .map(|edges| ("enum".to_string(), edges))
        .collect();
    CopySet::new(d, g.edge_count(), entries)
}

fn extend_cycle_search(
    g: &Multigraph,
    d: usize,
    start: usize,
    path_vertices: &mut Vec<usize>,
    path_edges: &mut Vec<usize>,
    found: &mut BTreeSet<Vec<usize>>,
) {
    let at = *path_vertices.last().expect("path is never empty");
    if path_vertices.len() == d {
        // Close the cycle back to the root.
        for &e in g.incident_edges(at).expect("vertex from the graph itself") {
            let (a, b) = g.endpoints(e).expect("incident edge exists");
            let other = if a == at { b } else { a };
            if other == start && !path_edges.contains(&e) {
                let mut cycle = path_edges.clone();
                cycle.push(e);
                cycle.sort_unstable();
                found.insert(cycle);
            }
        }
        return;
    }
    for &e in g.incident_edges(at).expect("vertex from the graph itself") {
        let (a, b) = g.endpoints(e).expect("incident edge exists");
        let other = if a == at { b } else { a };
        if other <= start || path_vertices.contains(&other) || a == b {
            continue;
        }
        path_vertices.push(other);
        path_edges.push(e);
        extend_cycle_search(g, d, start, path_vertices, path_edges, found);
        path_edges.pop();
        path_vertices.pop();
    }
}

/// Host edges that lie in no copy, in ascending id order.
pub fn dead_edges(g: &Multigraph, psi: &CopySet) -> Result<Vec<usize>> {
    if psi.host_edge_count() != g.edge_count() {
        return Err(Error::Malformed(format!(
            "copy set references a host with {} edges, graph has {}",
            psi.host_edge_count(),
            g.edge_count()
        )));
    }
    let mut alive = vec![false; g.edge_count()];
    for copy in psi.copies() {
        for &e in &copy.edge_ids {
            alive[e] = true;
        }
    }
    Ok((0..g.edge_count()).filter(|&e| !alive[e]).collect())
}

// ======================================================================
// Closed-form copy catalogs
// ======================================================================

struct CatalogBuilder {
    n: usize,
    k: usize,
    entries: Vec<(String, Vec<usize>)>,
}

impl CatalogBuilder {
    fn new(n: usize, k: usize) -> Self {
        Self {
            n,
            k,
            entries: Vec::new(),
        }
    }

    /// Adds one copy given its vertex tour; consecutive vertices (and the
    /// wrap-around pair) must be adjacent in `P_{n,k}`.
    fn add(&mut self, label: String, verts: &[usize]) {
        let len = verts.len();
        let mut ids = Vec::with_capacity(len);
        for i in 0..len {
            let e = petersen::edge_between(self.n, self.k, verts[i], verts[(i + 1) % len])
                .unwrap_or_else(|| {
                    panic!(
                        "catalog tour for {label} leaves the graph between {} and {}",
                        verts[i],
                        verts[(i + 1) % len]
                    )
                });
            ids.push(e);
        }
        self.entries.push((label, ids));
    }

    fn into_copy_set(self, d: usize) -> Result<CopySet> {
        CopySet::new(d, 3 * self.n, self.entries)
    }
}

/// Closed-form catalog of all copies of `C_d` in `P_{n,k}` for the
/// parameter families that have one. Returns [`Error::NoCatalog`] when the
/// triple falls outside every family; callers then use
/// [`enumerate_cycles`].
pub fn catalog_cycles(params: &PetersenParams, d: usize) -> Result<CopySet> {
    let (n, k) = (params.n(), params.k());
    match d {
        5 => catalog_c5(n, k),
        6 => catalog_c6(n, k),
        _ => Err(Error::UnsupportedCycleLength { d }),
    }
}

fn catalog_c5(n: usize, k: usize) -> Result<CopySet> {
    let u = |i: usize| petersen::u(n, i);
    let v = |i: usize| petersen::v(n, i);
    let mut b = CatalogBuilder::new(n, k);
    match (n, k) {
        (3, 1) => {
            for i in 0..3 {
                b.add(format!("G1[{i}]"), &[u(i), u(i + 1), v(i + 1), v(i + 2), u(i + 2)]);
            }
            for i in 0..3 {
                b.add(format!("G2[{i}]"), &[u(i), u(i + 1), v(i + 1), v(i + 2), v(i)]);
            }
        }
        (5, 1) => {
            b.add("G1".into(), &[u(0), u(1), u(2), u(3), u(4)]);
            b.add("G2".into(), &[v(0), v(1), v(2), v(3), v(4)]);
        }
        (5, 2) => {
            for i in 0..5 {
                b.add(format!("G1[{i}]"), &[u(i), u(i + 1), v(i + 1), v(i + 3), v(i)]);
            }
            for i in 0..5 {
                b.add(format!("G2[{i}]"), &[u(i), u(i + 1), u(i + 2), v(i + 2), v(i)]);
            }
            b.add("G3".into(), &[u(0), u(1), u(2), u(3), u(4)]);
            b.add("G4".into(), &[v(0), v(2), v(4), v(1), v(3)]);
        }
        (10, 2) => {
            for i in 0..10 {
                b.add(format!("G1[{i}]"), &[u(i), u(i + 1), u(i + 2), v(i + 2), v(i)]);
            }
            b.add("G2".into(), &[v(0), v(2), v(4), v(6), v(8)]);
            b.add("G3".into(), &[v(1), v(3), v(5), v(7), v(9)]);
        }
        _ if k == 2 && n >= 6 && n != 10 => {
            for i in 0..n {
                b.add(format!("G[{i}]"), &[u(i), u(i + 1), u(i + 2), v(i + 2), v(i)]);
            }
        }
        _ if k >= 3 && (5 * k == n || 5 * k == 2 * n) => {
            // The inner edges split into n/5 pentagons; nothing else closes
            // in five steps.
            for i in 0..n / 5 {
                b.add(
                    format!("G[{i}]"),
                    &[v(i), v(i + k), v(i + 2 * k), v(i + 3 * k), v(i + 4 * k)],
                );
            }
        }
        _ if k >= 3 && 2 * k + 1 == n => {
            for i in 0..n {
                b.add(format!("G[{i}]"), &[u(i), u(i + 1), v(i + 1), v(i + 1 + k), v(i)]);
            }
        }
        _ => return Err(Error::NoCatalog { n, k, d: 5 }),
    }
    b.into_copy_set(5)
}

fn catalog_c6(n: usize, k: usize) -> Result<CopySet> {
    let u = |i: usize| petersen::u(n, i);
    let v = |i: usize| petersen::v(n, i);
    let mut b = CatalogBuilder::new(n, k);
    match (n, k) {
        (3, 1) => {
            for i in 0..3 {
                b.add(
                    format!("G[{i}]"),
                    &[u(i), u(i + 1), u(i + 2), v(i + 2), v(i + 1), v(i)],
                );
            }
        }
        (4, 1) => {
            for i in 0..4 {
                b.add(
                    format!("G1[{i}]"),
                    &[u(i), u(i + 1), v(i + 1), v(i + 2), v(i + 3), v(i)],
                );
            }
            for i in 0..4 {
                b.add(
                    format!("G2[{i}]"),
                    &[u(i), u(i + 1), u(i + 2), v(i + 2), v(i + 1), v(i)],
                );
            }
            for i in 0..4 {
                b.add(
                    format!("G3[{i}]"),
                    &[u(i), u(i + 1), u(i + 2), v(i + 2), v(i + 3), v(i)],
                );
            }
            for i in 0..4 {
                b.add(
                    format!("G4[{i}]"),
                    &[u(i), u(i + 1), u(i + 2), u(i + 3), v(i + 3), v(i)],
                );
            }
        }
        (6, 1) => {
            for i in 0..6 {
                b.add(
                    format!("G1[{i}]"),
                    &[u(i), u(i + 1), u(i + 2), v(i + 2), v(i + 1), v(i)],
                );
            }
            b.add("G2".into(), &[u(0), u(1), u(2), u(3), u(4), u(5)]);
            b.add("G3".into(), &[v(0), v(1), v(2), v(3), v(4), v(5)]);
        }
        _ if k == 1 && n >= 5 => {
            for i in 0..n {
                b.add(
                    format!("G[{i}]"),
                    &[u(i), u(i + 1), u(i + 2), v(i + 2), v(i + 1), v(i)],
                );
            }
        }
        (5, 2) => {
            for i in 0..5 {
                b.add(
                    format!("G1[{i}]"),
                    &[u(i), u(i + 1), v(i + 1), v(i + 4), v(i + 2), v(i)],
                );
            }
            for i in 0..5 {
                b.add(
                    format!("G2[{i}]"),
                    &[u(i), u(i + 1), u(i + 2), u(i + 3), v(i + 3), v(i)],
                );
            }
        }
        (6, 2) => {
            for i in 0..6 {
                b.add(
                    format!("G1[{i}]"),
                    &[u(i), u(i + 1), v(i + 1), v(i + 3), v(i + 5), u(i + 5)],
                );
            }
            b.add("G2".into(), &[u(0), u(1), u(2), u(3), u(4), u(5)]);
        }
        (7, 2) => {
            for i in 0..7 {
                b.add(
                    format!("G[{i}]"),
                    &[u(i), u(i + 1), v(i + 1), v(i + 3), v(i + 5), v(i)],
                );
            }
        }
        (12, 2) => {
            for i in 0..2 {
                b.add(
                    format!("G[{i}]"),
                    &[v(i), v(i + 2), v(i + 4), v(i + 6), v(i + 8), v(i + 10)],
                );
            }
        }
        (8, 3) => {
            for i in 0..8 {
                b.add(
                    format!("G1[{i}]"),
                    &[u(i), u(i + 1), u(i + 2), u(i + 3), v(i + 3), v(i)],
                );
            }
            for i in 0..8 {
                b.add(
                    format!("G2[{i}]"),
                    &[u(i), u(i + 1), v(i + 1), v(i + 4), v(i + 7), u(i + 7)],
                );
            }
            for i in 0..8 {
                b.add(
                    format!("G3[{i}]"),
                    &[u(i), u(i + 1), v(i + 1), v(i + 6), v(i + 3), v(i)],
                );
            }
        }
        (10, 3) => {
            for i in 0..10 {
                b.add(
                    format!("G1[{i}]"),
                    &[u(i), u(i + 1), u(i + 2), u(i + 3), v(i + 3), v(i)],
                );
            }
            for i in 0..10 {
                b.add(
                    format!("G2[{i}]"),
                    &[u(i), u(i + 1), v(i + 1), v(i + 4), v(i + 7), v(i)],
                );
            }
        }
        (18, 3) => {
            for i in 0..18 {
                b.add(
                    format!("G1[{i}]"),
                    &[u(i), u(i + 1), u(i + 2), u(i + 3), v(i + 3), v(i)],
                );
            }
            for j in 0..3 {
                b.add(
                    format!("G2[{j}]"),
                    &[v(j), v(j + 3), v(j + 6), v(j + 9), v(j + 12), v(j + 15)],
                );
            }
        }
        _ if k == 3 && n >= 7 => {
            for i in 0..n {
                b.add(
                    format!("G[{i}]"),
                    &[u(i), u(i + 1), u(i + 2), u(i + 3), v(i + 3), v(i)],
                );
            }
        }
        _ if k >= 4 && 6 * k == n => {
            // The inner edges split into n/6 hexagons.
            for i in 0..n / 6 {
                b.add(
                    format!("G[{i}]"),
                    &[v(i), v(i + k), v(i + 2 * k), v(i + 3 * k), v(i + 4 * k), v(i + 5 * k)],
                );
            }
        }
        _ if k >= 4 && 3 * k + 1 == n => {
            for i in 0..n {
                b.add(
                    format!("G[{i}]"),
                    &[u(i), u(i + 1), v(i + 1), v(i + 1 + k), v(i + 1 + 2 * k), v(i)],
                );
            }
        }
        _ if k >= 4 && 3 * k == n + 1 => {
            for i in 0..n {
                b.add(
                    format!("G[{i}]"),
                    &[u(i), v(i), v(i + k), v(i + 2 * k), v(i + 1), u(i + 1)],
                );
            }
        }
        _ if k >= 4 && 2 * k + 2 == n => {
            for i in 0..n {
                b.add(
                    format!("G[{i}]"),
                    &[
                        u(i),
                        u(i + 1),
                        v(i + 1),
                        v(i + 1 + k),
                        v(i + 1 + 2 * k),
                        u(i + 1 + 2 * k),
                    ],
                );
            }
        }
        _ => return Err(Error::NoCatalog { n, k, d: 6 }),
    }
    b.into_copy_set(6)
}
