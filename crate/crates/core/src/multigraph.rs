//! Immutable labeled multigraphs with dense edge ids.
//!
//! The host graphs and the reduced hypergraph views both live here. A
//! multigraph is fixed at construction: `vertex_count` vertices named by
//! index, edges named by dense ids `0..edge_count` in insertion order,
//! with parallel edges and loops allowed. The only "mutation" is
//! [`Multigraph::delete_edges`], which returns a fresh graph plus the id
//! remapping.

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use crate::error::Error;
use crate::Result;

/// One edge: endpoints, dense id, and a free-form text label.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct EdgeRecord {
    /// Dense id, equal to the edge's position in [`Multigraph::edges`].
    pub id: usize,
    /// First endpoint (loops have `a == b`).
    pub a: usize,
    /// Second endpoint.
    pub b: usize,
    /// Human-readable label, may be empty.
    pub label: String,
}

/// Edge id translation returned by [`Multigraph::delete_edges`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EdgeIdMap {
    /// `old_to_new[old] = Some(new)` for surviving edges, `None` for deleted.
    pub old_to_new: Vec<Option<usize>>,
    /// `new_to_old[new] = old`.
    pub new_to_old: Vec<usize>,
}

/// An immutable multigraph with labeled vertices and edges.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Multigraph {
    vertex_count: usize,
    edges: Vec<EdgeRecord>,
    vertex_labels: Vec<String>,
    /// Sorted incident edge ids per vertex; a loop appears once.
    incidence: Vec<Vec<usize>>,
}

#[derive(Serialize, Deserialize)]
struct MultigraphJson {
    vertex_count: usize,
    edges: Vec<EdgeRecord>,
    vertex_labels: Vec<String>,
}

impl Multigraph {
    /// Builds a multigraph from endpoint pairs, with empty labels.
    pub fn new(vertex_count: usize, endpoints: &[(usize, usize)]) -> Result<Self> {
        let vertex_labels = vec![String::new(); vertex_count];
        let edge_labels = vec![String::new(); endpoints.len()];
        Self::with_labels(vertex_count, endpoints, vertex_labels, edge_labels)
    }

    /// Builds a multigraph with explicit vertex and edge labels.
    ///
    /// Label vectors must match the vertex and edge counts; endpoints must
    /// be in range.
    pub fn with_labels(
        vertex_count: usize,
        endpoints: &[(usize, usize)],
        vertex_labels: Vec<String>,
        edge_labels: Vec<String>,
    ) -> Result<Self> {
        if vertex_labels.len() != vertex_count {
            return Err(Error::Malformed(format!(
                "expected {} vertex labels, got {}",
                vertex_count,
                vertex_labels.len()
            )));
        }
        if edge_labels.len() != endpoints.len() {
            return Err(Error::Malformed(format!(
                "expected {} edge labels, got {}",
                endpoints.len(),
                edge_labels.len()
            )));
        }
        let mut edges = Vec::with_capacity(endpoints.len());
        for (id, (&(a, b), label)) in endpoints.iter().zip(edge_labels).enumerate() {
            for v in [a, b] {
                if v >= vertex_count {
                    return Err(Error::VertexOutOfRange {
                        vertex: v,
                        vertex_count,
                    });
                }
            }
            edges.push(EdgeRecord { id, a, b, label });
        }
        let incidence = build_incidence(vertex_count, &edges);
        Ok(Self {
            vertex_count,
            edges,
            vertex_labels,
            incidence,
        })
    }

    /// Number of vertices.
    #[must_use]
    pub fn vertex_count(&self) -> usize {
        self.vertex_count
    }

    /// Number of edges.
    #[must_use]
    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    /// All edges in id order.
    #[must_use]
    pub fn edges(&self) -> &[EdgeRecord] {
        &self.edges
    }

    /// Endpoints of an edge.
    pub fn endpoints(&self, edge: usize) -> Result<(usize, usize)> {
        let rec = self.edge_record(edge)?;
        Ok((rec.a, rec.b))
    }

    /// True when the edge is a loop.
    pub fn is_loop(&self, edge: usize) -> Result<bool> {
        let rec = self.edge_record(edge)?;
        Ok(rec.a == rec.b)
    }

    /// Number of loops in the graph.
    #[must_use]
    pub fn loop_count(&self) -> usize {
        self.edges.iter().filter(|e| e.a == e.b).count()
    }

    /// The label of a vertex.
    pub fn vertex_label(&self, vertex: usize) -> Result<&str> {
        self.check_vertex(vertex)?;
        Ok(&self.vertex_labels[vertex])
    }

    /// The label of an edge.
    pub fn edge_label(&self, edge: usize) -> Result<&str> {
        Ok(&self.edge_record(edge)?.label)
    }

    /// Sorted ids of edges incident to `vertex`; a loop appears once.
    pub fn incident_edges(&self, vertex: usize) -> Result<&[usize]> {
        self.check_vertex(vertex)?;
        Ok(&self.incidence[vertex])
    }

    /// Returns a new multigraph without the listed edges, together with the
    /// old-to-new edge id mapping. Duplicate ids in `drop` are tolerated.
    pub fn delete_edges(&self, drop: &[usize]) -> Result<(Self, EdgeIdMap)> {
        let mut dropped = BTreeSet::new();
        for &edge in drop {
            self.edge_record(edge)?;
            dropped.insert(edge);
        }
        let mut old_to_new = vec![None; self.edges.len()];
        let mut new_to_old = Vec::with_capacity(self.edges.len() - dropped.len());
        let mut edges = Vec::with_capacity(self.edges.len() - dropped.len());
        for rec in &self.edges {
            if dropped.contains(&rec.id) {
                continue;
            }
            let new_id = edges.len();
            old_to_new[rec.id] = Some(new_id);
            new_to_old.push(rec.id);
            edges.push(EdgeRecord {
                id: new_id,
                a: rec.a,
                b: rec.b,
                label: rec.label.clone(),
            });
        }
        let incidence = build_incidence(self.vertex_count, &edges);
        Ok((
            Self {
                vertex_count: self.vertex_count,
                edges,
                vertex_labels: self.vertex_labels.clone(),
                incidence,
            },
            EdgeIdMap {
                old_to_new,
                new_to_old,
            },
        ))
    }

    /// Serializes to the canonical JSON shape:
    /// `{"vertex_count", "edges": [{"id","a","b","label"}], "vertex_labels"}`.
    #[must_use]
    pub fn to_json(&self) -> String {
        let shadow = MultigraphJson {
            vertex_count: self.vertex_count,
            edges: self.edges.clone(),
            vertex_labels: self.vertex_labels.clone(),
        };
        serde_json::to_string_pretty(&shadow).expect("multigraph serialization cannot fail")
    }

    /// Parses the canonical JSON shape and revalidates every invariant.
    pub fn from_json(text: &str) -> Result<Self> {
        let shadow: MultigraphJson =
            serde_json::from_str(text).map_err(|e| Error::Malformed(format!("bad graph JSON: {e}")))?;
        let endpoints: Vec<(usize, usize)> = shadow.edges.iter().map(|e| (e.a, e.b)).collect();
        let edge_labels: Vec<String> = shadow.edges.iter().map(|e| e.label.clone()).collect();
        for (pos, rec) in shadow.edges.iter().enumerate() {
            if rec.id != pos {
                return Err(Error::Malformed(format!(
                    "edge ids must be dense and ordered: position {pos} has id {}",
                    rec.id
                )));
            }
        }
        Self::with_labels(shadow.vertex_count, &endpoints, shadow.vertex_labels, edge_labels)
    }

    /// Graphviz DOT export, one line per edge, labels included.
    #[must_use]
    pub fn to_dot(&self) -> String {
        let mut out = String::from("graph g {\n");
        for (v, label) in self.vertex_labels.iter().enumerate() {
            if label.is_empty() {
                out.push_str(&format!("  {v};\n"));
            } else {
                out.push_str(&format!("  {v} [label=\"{label}\"];\n"));
            }
        }
        for rec in &self.edges {
            if rec.label.is_empty() {
                out.push_str(&format!("  {} -- {} [id={}];\n", rec.a, rec.b, rec.id));
            } else {
                out.push_str(&format!(
                    "  {} -- {} [id={}, label=\"{}\"];\n",
                    rec.a, rec.b, rec.id, rec.label
                ));
            }
        }
        out.push_str("}\n");
        out
    }

    fn check_vertex(&self, vertex: usize) -> Result<()> {
        if vertex >= self.vertex_count {
            return Err(Error::VertexOutOfRange {
                vertex,
                vertex_count: self.vertex_count,
            });
        }
        Ok(())
    }

    fn edge_record(&self, edge: usize) -> Result<&EdgeRecord> {
        self.edges.get(edge).ok_or(Error::EdgeOutOfRange {
            edge,
            edge_count: self.edges.len(),
        })
    }
}

fn build_incidence(vertex_count: usize, edges: &[EdgeRecord]) -> Vec<Vec<usize>> {
    let mut incidence = vec![Vec::new(); vertex_count];
    for rec in edges {
        incidence[rec.a].push(rec.id);
        if rec.b != rec.a {
            incidence[rec.b].push(rec.id);
        }
    }
    // Insertion already visits edges in id order, so each list is sorted.
    incidence
}

#[cfg(test)]
mod tests {
    use super::*;

    fn triangle_with_loop() -> Multigraph {
        // Edges: 0: (0,1), 1: (1,2), 2: (2,0), 3: loop at 1, 4: parallel (0,1).
        Multigraph::new(3, &[(0, 1), (1, 2), (2, 0), (1, 1), (0, 1)]).unwrap()
    }

    #[test]
    fn incidence_lists_loop_once() {
        let g = triangle_with_loop();
        assert_eq!(g.incident_edges(1).unwrap(), &[0, 1, 3, 4]);
        assert_eq!(g.incident_edges(0).unwrap(), &[0, 2, 4]);
        assert_eq!(g.loop_count(), 1);
    }

    #[test]
    fn incidence_sum_counts_loops_once() {
        let g = triangle_with_loop();
        let total: usize = (0..g.vertex_count())
            .map(|v| g.incident_edges(v).unwrap().len())
            .sum();
        assert_eq!(total, 2 * g.edge_count() - g.loop_count());
    }

    #[test]
    fn vertex_out_of_range_is_an_input_error() {
        let g = triangle_with_loop();
        assert_eq!(
            g.incident_edges(3).unwrap_err(),
            Error::VertexOutOfRange {
                vertex: 3,
                vertex_count: 3
            }
        );
        let empty = Multigraph::new(0, &[]).unwrap();
        assert!(matches!(
            empty.incident_edges(0),
            Err(Error::VertexOutOfRange { .. })
        ));
    }

    #[test]
    fn delete_edges_remaps_ids_densely() {
        let g = triangle_with_loop();
        let (h, map) = g.delete_edges(&[1, 3]).unwrap();
        assert_eq!(h.edge_count(), 3);
        assert_eq!(map.old_to_new, vec![Some(0), None, Some(1), None, Some(2)]);
        assert_eq!(map.new_to_old, vec![0, 2, 4]);
        assert_eq!(h.endpoints(1).unwrap(), (2, 0));
        // Deleting nothing is the identity on ids.
        let (same, id_map) = g.delete_edges(&[]).unwrap();
        assert_eq!(same, g);
        assert_eq!(id_map.new_to_old, vec![0, 1, 2, 3, 4]);
    }

    #[test]
    fn delete_unknown_edge_is_an_input_error() {
        let g = triangle_with_loop();
        assert_eq!(
            g.delete_edges(&[9]).unwrap_err(),
            Error::EdgeOutOfRange {
                edge: 9,
                edge_count: 5
            }
        );
    }

    #[test]
    fn json_roundtrip_preserves_everything() {
        let g = Multigraph::with_labels(
            2,
            &[(0, 1), (1, 1)],
            vec!["left".into(), "right".into()],
            vec!["bridge".into(), "curl".into()],
        )
        .unwrap();
        let back = Multigraph::from_json(&g.to_json()).unwrap();
        assert_eq!(back, g);
        assert_eq!(back.edge_label(1).unwrap(), "curl");
    }

    #[test]
    fn json_rejects_sparse_ids() {
        let text = r#"{
            "vertex_count": 2,
            "edges": [{"id": 1, "a": 0, "b": 1, "label": ""}],
            "vertex_labels": ["", ""]
        }"#;
        assert!(matches!(
            Multigraph::from_json(text),
            Err(Error::Malformed(_))
        ));
    }

    #[test]
    fn dot_has_one_line_per_edge() {
        let g = triangle_with_loop();
        let dot = g.to_dot();
        let edge_lines = dot.lines().filter(|l| l.contains("--")).count();
        assert_eq!(edge_lines, g.edge_count());
    }
}
