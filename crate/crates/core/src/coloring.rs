//! Edge colorings of host graphs: the rainbow-freeness checker, the
//! catalog of bespoke lower-bound constructions, the cover-to-coloring
//! bridge, and a small exhaustive oracle.
//!
//! A coloring assigns every host edge a color from `1..=color_count`,
//! using every color at least once. A copy is *rainbow* when all of its
//! edges carry pairwise distinct colors; the quantity of interest is the
//! largest color count that still admits a coloring with no rainbow copy.

use serde::{Deserialize, Serialize};

use crate::census::CopySet;
use crate::cover::CoverCertificate;
use crate::error::Error;
use crate::multigraph::Multigraph;
use crate::partitions;
use crate::petersen::{inner_id, outer_id, spoke_id};
use crate::Result;

/// Upper guard for [`brute_force_ar`]: partition counts explode past this.
pub const ORACLE_MAX_EDGES: usize = 12;

/// A surjective edge coloring: `assignment[e]` is the color of edge `e`,
/// colors are exactly `1..=color_count`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EdgeColoring {
    assignment: Vec<usize>,
    color_count: usize,
}

#[derive(Serialize, Deserialize)]
struct ColoringJson {
    colors: usize,
    assignment: Vec<usize>,
}

impl EdgeColoring {
    /// Wraps an explicit assignment, checking that no edge is uncolored
    /// (color 0) and that the used colors are exactly `1..=max`.
    pub fn new(assignment: Vec<usize>) -> Result<Self> {
        let mut max = 0;
        for (e, &c) in assignment.iter().enumerate() {
            if c == 0 {
                return Err(Error::UncoloredEdge { edge: e });
            }
            max = max.max(c);
        }
        let mut used = vec![false; max + 1];
        for &c in &assignment {
            used[c] = true;
        }
        if let Some(gap) = (1..=max).find(|&c| !used[c]) {
            return Err(Error::Malformed(format!(
                "color {gap} is unused but color {max} is; colors must be 1..=count with no gaps"
            )));
        }
        Ok(Self {
            assignment,
            color_count: max,
        })
    }

    /// Number of colors (all of `1..=color_count` occur).
    pub fn color_count(&self) -> usize {
        self.color_count
    }

    /// Number of colored edges.
    pub fn edge_count(&self) -> usize {
        self.assignment.len()
    }

    /// The color of each edge, indexed by edge id.
    pub fn assignment(&self) -> &[usize] {
        &self.assignment
    }

    /// Color of one edge.
    pub fn color(&self, edge: usize) -> Result<usize> {
        self.assignment
            .get(edge)
            .copied()
            .ok_or(Error::EdgeOutOfRange {
                edge,
                edge_count: self.assignment.len(),
            })
    }

    /// Edges of each color, indexed by `color - 1`; classes are sorted.
    pub fn color_classes(&self) -> Vec<Vec<usize>> {
        let mut classes = vec![Vec::new(); self.color_count];
        for (e, &c) in self.assignment.iter().enumerate() {
            classes[c - 1].push(e);
        }
        classes
    }

    /// Serializes as `{"colors": …, "assignment": […]}`.
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(&ColoringJson {
            colors: self.color_count,
            assignment: self.assignment.clone(),
        })
        .expect("coloring serialization cannot fail")
    }

    /// Parses the [`EdgeColoring::to_json`] format, re-validating.
    pub fn from_json(text: &str) -> Result<Self> {
        let raw: ColoringJson =
            serde_json::from_str(text).map_err(|e| Error::Malformed(format!("coloring: {e}")))?;
        let coloring = Self::new(raw.assignment)?;
        if coloring.color_count != raw.colors {
            return Err(Error::Malformed(format!(
                "coloring claims {} colors but uses {}",
                raw.colors, coloring.color_count
            )));
        }
        Ok(coloring)
    }
}

/// Outcome of a rainbow scan over a copy family.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum RainbowCheck {
    /// Every copy repeats at least one color.
    NoRainbow,
    /// The lowest-indexed copy whose edges are pairwise distinctly colored.
    RainbowFound {
        copy_index: usize,
        label: String,
        edges: Vec<usize>,
    },
}

impl RainbowCheck {
    /// True when no rainbow copy exists.
    pub fn is_ok(&self) -> bool {
        matches!(self, RainbowCheck::NoRainbow)
    }
}

/// Scans the copies in index order and reports the first rainbow one, if
/// any. Every host edge must be colored.
pub fn verify_no_rainbow(
    g: &Multigraph,
    psi: &CopySet,
    coloring: &EdgeColoring,
) -> Result<RainbowCheck> {
    if coloring.edge_count() < g.edge_count() {
        return Err(Error::UncoloredEdge {
            edge: coloring.edge_count(),
        });
    }
    if coloring.edge_count() > g.edge_count() {
        return Err(Error::Malformed(format!(
            "coloring has {} entries for a host with {} edges",
            coloring.edge_count(),
            g.edge_count()
        )));
    }
    psi.validate(g)?;
    for copy in psi.copies() {
        let edges = &copy.edge_ids;
        let rainbow = edges.iter().enumerate().all(|(i, &e)| {
            edges[i + 1..]
                .iter()
                .all(|&f| coloring.assignment[e] != coloring.assignment[f])
        });
        if rainbow {
            return Ok(RainbowCheck::RainbowFound {
                copy_index: copy.index,
                label: copy.label.clone(),
                edges: edges.clone(),
            });
        }
    }
    Ok(RainbowCheck::NoRainbow)
}

/// Turns a complete covering certificate into a coloring: each partition
/// class becomes one color (classes in canonical order get colors
/// `1, 2, …`), so the color count is `m − h`. Every copy holds some class
/// twice, hence repeats a color.
pub fn coloring_from_cover(
    g: &Multigraph,
    psi: &CopySet,
    certificate: &CoverCertificate,
) -> Result<EdgeColoring> {
    if !certificate.complete() {
        return Err(Error::IncompleteCover {
            missing: psi.len() - certificate.covered().len(),
            total: psi.len(),
        });
    }
    let partition = certificate.partition();
    if partition.m() != g.edge_count() {
        return Err(Error::Malformed(format!(
            "certificate partitions {} edges but the host has {}",
            partition.m(),
            g.edge_count()
        )));
    }
    let mut assignment = vec![0; partition.m()];
    for (i, class) in partition.classes().iter().enumerate() {
        for &e in class {
            assignment[e] = i + 1;
        }
    }
    let coloring = EdgeColoring::new(assignment)?;
    match verify_no_rainbow(g, psi, &coloring)? {
        RainbowCheck::NoRainbow => Ok(coloring),
        RainbowCheck::RainbowFound { copy_index, .. } => Err(Error::Malformed(format!(
            "certificate does not match the copy family: copy {copy_index} is rainbow"
        ))),
    }
}

/// One displayed lower-bound construction: which edge classes share a
/// color, in color order, for host `P_{n,k}`. All remaining edges get
/// fresh colors in edge-id order.
fn construction_classes(id: &str, n: usize, k: usize) -> Result<Vec<Vec<usize>>> {
    let require = |ok: bool, requirement: &str| -> Result<()> {
        if ok {
            Ok(())
        } else {
            Err(Error::ConstructionOutOfRange {
                id: id.to_string(),
                requirement: requirement.to_string(),
                n,
                k,
            })
        }
    };
    // Shorthands: edges incident to an outer vertex u_i / inner vertex v_i.
    let at_u = |n: usize, i: usize| {
        vec![
            outer_id(n, (i + n - 1) % n),
            outer_id(n, i),
            spoke_id(n, i),
        ]
    };
    let at_v = |n: usize, k: usize, i: usize| {
        vec![
            spoke_id(n, i),
            inner_id(n, i),
            inner_id(n, (i + n - k) % n),
        ]
    };
    let spokes = |n: usize| (0..n).map(|i| spoke_id(n, i)).collect::<Vec<_>>();
    match id {
        "3.1" => {
            require(n == 3 && k == 1, "n = 3, k = 1")?;
            Ok(vec![spokes(3)])
        }
        "3.3" => {
            require(n == 5 && k == 2, "n = 5, k = 2")?;
            Ok(vec![
                vec![outer_id(5, 0), outer_id(5, 4)],
                at_v(5, 2, 2),
                at_v(5, 2, 3),
            ])
        }
        "3.9" => {
            require(n == 4 && k == 1, "n = 4, k = 1")?;
            Ok(vec![spokes(4)])
        }
        "3.10" => {
            require(n == 6 && k == 1, "n = 6, k = 1")?;
            Ok(vec![at_u(6, 0), at_v(6, 1, 3)])
        }
        "3.12" => {
            require(n == 5 && k == 2, "n = 5, k = 2")?;
            Ok(vec![spokes(5)])
        }
        "3.13" => {
            require(n == 6 && k == 2, "n = 6, k = 2")?;
            Ok(vec![at_u(6, 0), at_u(6, 3)])
        }
        "3.14" => {
            require(n == 7 && k == 2, "n = 7, k = 2")?;
            Ok(vec![at_v(7, 2, 3), at_v(7, 2, 4)])
        }
        "3.15" => {
            require(n == 8 && k == 3, "n = 8, k = 3")?;
            Ok(vec![spokes(8)])
        }
        "3.16" => {
            require(n == 10 && k == 3, "n = 10, k = 3")?;
            let mut classes: Vec<Vec<usize>> = (0..3).map(|i| at_v(10, 3, i)).collect();
            classes.push(vec![outer_id(10, 4), outer_id(10, 5)]);
            classes.push(vec![outer_id(10, 6), outer_id(10, 7)]);
            Ok(classes)
        }
        "3.17" => {
            require(n == 18 && k == 3, "n = 18, k = 3")?;
            let mut classes: Vec<Vec<usize>> = (0..9)
                .map(|i| vec![outer_id(18, 2 * i), outer_id(18, 2 * i + 1)])
                .collect();
            for j in 0..3 {
                classes.push(vec![inner_id(18, j), inner_id(18, 15 + j)]);
            }
            Ok(classes)
        }
        "3.18" => {
            require(
                k == 3 && n >= 7 && n != 8 && n != 10 && n != 18,
                "k = 3, n ≥ 7, n ∉ {8, 10, 18}",
            )?;
            let mut classes: Vec<Vec<usize>> = (0..n / 2)
                .map(|i| vec![outer_id(n, 2 * i), outer_id(n, 2 * i + 1)])
                .collect();
            if n % 2 == 1 {
                // Odd rim: the leftover outer edge joins the last pair.
                classes
                    .last_mut()
                    .expect("n ≥ 7 gives at least one pair")
                    .push(outer_id(n, n - 1));
            }
            Ok(classes)
        }
        "3.20" => {
            require(k >= 4 && (3 * k == n + 1 || 3 * k + 1 == n), "k ≥ 4, 3k = n ± 1")?;
            // The inner rim is a single n-cycle (gcd(n, k) = 1); walk it
            // and pair consecutive steps. Odd rims triple the first class.
            let step = |t: usize| inner_id(n, t * k % n);
            let mut classes: Vec<Vec<usize>> = Vec::new();
            if n % 2 == 1 {
                classes.push(vec![step(0), step(1), step(2)]);
                let mut t = 3;
                while t < n {
                    classes.push(vec![step(t), step(t + 1)]);
                    t += 2;
                }
            } else {
                let mut t = 0;
                while t < n {
                    classes.push(vec![step(t), step(t + 1)]);
                    t += 2;
                }
            }
            Ok(classes)
        }
        _ => Err(Error::UnknownConstruction { id: id.to_string() }),
    }
}

/// Builds one of the displayed lower-bound colorings of `P_{n,k}` by its
/// catalog id (`"3.1"`, `"3.3"`, `"3.9"`, `"3.10"`, `"3.12"`–`"3.18"`,
/// `"3.20"`). Class colors and the fresh colors on the remaining edges
/// are exactly as displayed: class `i` (in catalog order) gets color `i`,
/// and leftover edges get ascending fresh colors in edge-id order. The
/// raw `(n, k)` must match the construction's range — no mirror
/// normalization is applied here.
pub fn construction(id: &str, n: usize, k: usize) -> Result<EdgeColoring> {
    let classes = construction_classes(id, n, k)?;
    let m = 3 * n;
    let mut assignment = vec![0usize; m];
    for (i, class) in classes.iter().enumerate() {
        for &e in class {
            if e >= m {
                return Err(Error::EdgeOutOfRange {
                    edge: e,
                    edge_count: m,
                });
            }
            if assignment[e] != 0 {
                return Err(Error::Malformed(format!(
                    "construction {id} assigns edge {e} twice"
                )));
            }
            assignment[e] = i + 1;
        }
    }
    let mut next = classes.len() + 1;
    for slot in assignment.iter_mut() {
        if *slot == 0 {
            *slot = next;
            next += 1;
        }
    }
    EdgeColoring::new(assignment)
}

/// Exhaustive oracle: the largest color count admitting a rainbow-free
/// surjective coloring, by scanning set partitions of the edge set with
/// exactly `c` blocks for descending `c`. Guarded to `m ≤ max_m` (and
/// `max_m ≤ ORACLE_MAX_EDGES`); with no copies at all every coloring is
/// rainbow-free, so the answer is `m`.
pub fn brute_force_ar(g: &Multigraph, psi: &CopySet, max_m: usize) -> Result<usize> {
    let m = g.edge_count();
    let guard = max_m.min(ORACLE_MAX_EDGES);
    if m > guard {
        return Err(Error::TooLargeForOracle { m, max_m: guard });
    }
    psi.validate(g)?;
    if psi.is_empty() {
        return Ok(m);
    }
    let copies: Vec<&[usize]> = psi.copies().iter().map(|c| c.edge_ids.as_slice()).collect();
    for c in (1..=m).rev() {
        let mut admissible = false;
        let _ = partitions::for_each_partition_with_blocks(m, c, |rgs| {
            let rainbow_free = copies.iter().all(|edges| {
                let mut seen: u16 = 0;
                edges.iter().any(|&e| {
                    let bit = 1u16 << rgs[e];
                    let repeat = seen & bit != 0;
                    seen |= bit;
                    repeat
                })
            });
            if rainbow_free {
                admissible = true;
                std::ops::ControlFlow::Break(())
            } else {
                std::ops::ControlFlow::Continue(())
            }
        });
        if admissible {
            return Ok(c);
        }
    }
    // A single copy with ≥ 2 edges is never rainbow under one color; the
    // loop can only fall through on a copy family with a 1-edge copy,
    // which CopySet construction forbids (d ≥ 3).
    Err(Error::Malformed(
        "no rainbow-free coloring exists at any color count".to_string(),
    ))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::census::catalog_cycles;
    use crate::cover::{min_excess_cover, CoverOptions, CoverOutcome};
    use crate::hypergraph::CopyHypergraph;
    use crate::petersen::{generate, PetersenParams};

    fn host_and_copies(n: usize, k: usize, d: usize) -> (Multigraph, CopySet) {
        let params = PetersenParams::new(n, k).unwrap();
        let g = generate(&params);
        let psi = catalog_cycles(&params, d).unwrap();
        (g, psi)
    }

    #[test]
    fn triangle_prism_spoke_coloring_reaches_seven_colors() {
        let coloring = construction("3.1", 3, 1).unwrap();
        assert_eq!(coloring.color_count(), 7);
        assert_eq!(coloring.assignment()[3..6], [1, 1, 1]);
        let (g, psi) = host_and_copies(3, 1, 5);
        assert!(verify_no_rainbow(&g, &psi, &coloring).unwrap().is_ok());
    }

    #[test]
    fn every_fixed_construction_hits_its_color_count() {
        // (id, n, k, d, colors) for the bespoke small hosts.
        let table = [
            ("3.1", 3, 1, 5, 7),
            ("3.3", 5, 2, 5, 10),
            ("3.9", 4, 1, 6, 9),
            ("3.10", 6, 1, 6, 14),
            ("3.12", 5, 2, 6, 11),
            ("3.13", 6, 2, 6, 14),
            ("3.14", 7, 2, 6, 17),
            ("3.15", 8, 3, 6, 17),
            ("3.16", 10, 3, 6, 22),
            ("3.17", 18, 3, 6, 42),
        ];
        for (id, n, k, d, colors) in table {
            let coloring = construction(id, n, k).unwrap();
            assert_eq!(coloring.color_count(), colors, "construction {id}");
            let (g, psi) = host_and_copies(n, k, d);
            assert!(
                verify_no_rainbow(&g, &psi, &coloring).unwrap().is_ok(),
                "construction {id} admits a rainbow copy"
            );
        }
    }

    #[test]
    fn odd_rim_pairing_folds_the_leftover_edge_into_the_last_class() {
        let coloring = construction("3.18", 9, 3).unwrap();
        assert_eq!(coloring.color_count(), 22); // ⌊5·9/2⌋
        let classes = coloring.color_classes();
        assert_eq!(classes[3], vec![6, 7, 8]);
        let (g, psi) = host_and_copies(9, 3, 6);
        assert!(verify_no_rainbow(&g, &psi, &coloring).unwrap().is_ok());

        let even = construction("3.18", 12, 3).unwrap();
        assert_eq!(even.color_count(), 30);
        let (g, psi) = host_and_copies(12, 3, 6);
        assert!(verify_no_rainbow(&g, &psi, &even).unwrap().is_ok());
    }

    #[test]
    fn inner_rim_walk_pairing_covers_both_parities() {
        // 3k = n + 1 with odd n, and 3k = n − 1 with even n.
        for (n, k) in [(11usize, 4usize), (13, 4)] {
            let coloring = construction("3.20", n, k).unwrap();
            assert_eq!(coloring.color_count(), 5 * n / 2, "P_{{{n},{k}}}");
            let (g, psi) = host_and_copies(n, k, 6);
            assert!(verify_no_rainbow(&g, &psi, &coloring).unwrap().is_ok());
        }
    }

    #[test]
    fn constructions_reject_foreign_parameters() {
        match construction("3.1", 5, 1) {
            Err(Error::ConstructionOutOfRange { id, n, k, .. }) => {
                assert_eq!(id, "3.1");
                assert_eq!((n, k), (5, 1));
            }
            other => panic!("expected out-of-range, got {other:?}"),
        }
        assert!(matches!(
            construction("3.18", 8, 3),
            Err(Error::ConstructionOutOfRange { .. })
        ));
        assert!(matches!(
            construction("2.99", 3, 1),
            Err(Error::UnknownConstruction { id }) if id == "2.99"
        ));
    }

    #[test]
    fn rainbow_witness_is_the_lowest_indexed_copy() {
        let (g, psi) = host_and_copies(3, 1, 5);
        // All-distinct colors make every copy rainbow; the witness must be
        // copy 0.
        let all_distinct = EdgeColoring::new((1..=g.edge_count()).collect()).unwrap();
        match verify_no_rainbow(&g, &psi, &all_distinct).unwrap() {
            RainbowCheck::RainbowFound {
                copy_index, edges, ..
            } => {
                assert_eq!(copy_index, 0);
                assert_eq!(edges, psi.copies()[0].edge_ids);
            }
            RainbowCheck::NoRainbow => panic!("expected a rainbow copy"),
        }
    }

    #[test]
    fn short_assignments_name_the_first_uncolored_edge() {
        let (g, psi) = host_and_copies(3, 1, 5);
        let short = EdgeColoring::new(vec![1, 2, 3]).unwrap();
        assert_eq!(
            verify_no_rainbow(&g, &psi, &short),
            Err(Error::UncoloredEdge { edge: 3 })
        );
    }

    #[test]
    fn color_gaps_and_zero_colors_are_rejected() {
        assert_eq!(
            EdgeColoring::new(vec![1, 0, 2]),
            Err(Error::UncoloredEdge { edge: 1 })
        );
        assert!(matches!(
            EdgeColoring::new(vec![1, 3, 3]),
            Err(Error::Malformed(_))
        ));
    }

    #[test]
    fn cover_certificates_become_rainbow_free_colorings() {
        let (g, psi) = host_and_copies(3, 1, 5);
        let h = CopyHypergraph::build(&g, &psi).unwrap();
        let outcome = min_excess_cover(&h, h.m(), &CoverOptions::default()).unwrap();
        let CoverOutcome::Found(cert) = outcome else {
            panic!("P_{{3,1}} has a cover");
        };
        let coloring = coloring_from_cover(&g, &psi, &cert).unwrap();
        assert_eq!(coloring.color_count(), g.edge_count() - cert.h());
        assert_eq!(coloring.color_count(), 7);
        assert!(verify_no_rainbow(&g, &psi, &coloring).unwrap().is_ok());
    }

    #[test]
    fn incomplete_certificates_are_refused() {
        let (g, psi) = host_and_copies(3, 1, 5);
        let h = CopyHypergraph::build(&g, &psi).unwrap();
        // The all-singletons partition has excess 0 and covers nothing,
        // so its certificate is incomplete.
        let partition =
            crate::cover::ColorPartition::from_multi_classes(g.edge_count(), Vec::new()).unwrap();
        let cert = crate::cover::CoverCertificate::from_partition(&h, partition).unwrap();
        assert!(!cert.complete());
        assert_eq!(
            coloring_from_cover(&g, &psi, &cert),
            Err(Error::IncompleteCover {
                missing: psi.len(),
                total: psi.len()
            })
        );
    }

    #[test]
    fn oracle_matches_the_known_small_values() {
        let (g, psi) = host_and_copies(3, 1, 5);
        assert_eq!(brute_force_ar(&g, &psi, 12).unwrap(), 7);
        let (g6, psi6) = host_and_copies(3, 1, 6);
        assert_eq!(brute_force_ar(&g6, &psi6, 12).unwrap(), 7);
    }

    #[test]
    fn oracle_guards_its_instance_size() {
        let (g, psi) = host_and_copies(5, 2, 5);
        assert_eq!(
            brute_force_ar(&g, &psi, 12),
            Err(Error::TooLargeForOracle { m: 15, max_m: 12 })
        );
        // With no copies every coloring is rainbow-free.
        let (g31, _) = host_and_copies(3, 1, 5);
        let empty = CopySet::new(5, g31.edge_count(), Vec::new()).unwrap();
        assert_eq!(brute_force_ar(&g31, &empty, 12).unwrap(), 9);
    }

    #[test]
    fn coloring_json_roundtrip_preserves_the_assignment() {
        let coloring = construction("3.16", 10, 3).unwrap();
        let parsed = EdgeColoring::from_json(&coloring.to_json()).unwrap();
        assert_eq!(parsed, coloring);
        assert!(EdgeColoring::from_json(r#"{"colors": 3, "assignment": [1, 2]}"#).is_err());
    }
}
