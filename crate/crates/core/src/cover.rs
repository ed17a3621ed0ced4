//! Covering partitions of the hyperedges and the exact minimum-excess
//! search.
//!
//! A partition of the hyperedges into classes covers the hypergraph when
//! every copy lies in at least two hyperedges of a single class; the
//! covered set `L_i` of a class collects exactly those copies. The least
//! possible excess `h = m − #classes` over all covering partitions,
//! `h_min`, determines the anti-Ramsey value as `m − h_min`, and the
//! membership question "is there no covering partition with excess ≤ h"
//! is what the property family `P(h, l)` asks.
//!
//! The search below runs iterative deepening on the excess. Every move
//! costs exactly one excess and covers the current pivot copy: extend a
//! class by one hyperedge through the pivot, merge two classes that each
//! hold the pivot once, or open a new class from a pair of hyperedges
//! through the pivot. A coverage-capacity bound per remaining excess
//! prunes hopeless branches, and an optional cyclic symmetry of the
//! instance filters the root branches down to canonical representatives.

use serde::{Deserialize, Serialize};

use crate::bits::Bits;
use crate::error::Error;
use crate::hypergraph::CopyHypergraph;
use crate::packing::{verify_packing, CyclePacking};
use crate::partitions::for_each_partition_with_blocks;
use crate::Result;

use std::ops::ControlFlow;

/// A partition of all `m` hyperedges into disjoint nonempty classes,
/// stored canonically: each class sorted, classes by size descending then
/// lexicographic. Excess is `m − #classes`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ColorPartition {
    m: usize,
    classes: Vec<Vec<usize>>,
}

impl ColorPartition {
    /// Validates and canonicalizes a partition of `{0, …, m-1}`.
    pub fn new(m: usize, mut classes: Vec<Vec<usize>>) -> Result<Self> {
        let mut seen = vec![false; m];
        let mut total = 0usize;
        for class in &mut classes {
            if class.is_empty() {
                return Err(Error::Malformed("a partition class is empty".into()));
            }
            class.sort_unstable();
            for &e in class.iter() {
                if e >= m {
                    return Err(Error::EdgeOutOfRange {
                        edge: e,
                        edge_count: m,
                    });
                }
                if seen[e] {
                    return Err(Error::Malformed(format!(
                        "hyperedge {e} appears in two classes"
                    )));
                }
                seen[e] = true;
                total += 1;
            }
        }
        if total != m {
            return Err(Error::Malformed(format!(
                "partition covers {total} of {m} hyperedges"
            )));
        }
        classes.sort_by(|a, b| b.len().cmp(&a.len()).then_with(|| a.cmp(b)));
        Ok(Self { m, classes })
    }

    /// Builds a partition from the multi-member classes only; every
    /// hyperedge not listed becomes its own singleton class.
    pub fn from_multi_classes(m: usize, multi: Vec<Vec<usize>>) -> Result<Self> {
        let mut seen = vec![false; m];
        for class in &multi {
            for &e in class {
                if let Some(slot) = seen.get_mut(e) {
                    *slot = true;
                }
            }
        }
        let mut classes = multi;
        for (e, &used) in seen.iter().enumerate() {
            if !used {
                classes.push(vec![e]);
            }
        }
        Self::new(m, classes)
    }

    /// Number of hyperedges partitioned.
    #[must_use]
    pub fn m(&self) -> usize {
        self.m
    }

    /// Number of classes, including singletons.
    #[must_use]
    pub fn class_count(&self) -> usize {
        self.classes.len()
    }

    /// The excess `h = m − #classes`.
    #[must_use]
    pub fn excess(&self) -> usize {
        self.m - self.classes.len()
    }

    /// Classes in canonical order.
    #[must_use]
    pub fn classes(&self) -> &[Vec<usize>] {
        &self.classes
    }
}

/// A covering witness: a partition together with the union of its covered
/// sets and whether that union is all `l` copies.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CoverCertificate {
    partition: ColorPartition,
    covered: Vec<usize>,
    complete: bool,
}

#[derive(Serialize, Deserialize)]
struct CertificateJson {
    h: usize,
    classes: Vec<Vec<usize>>,
    covered: Vec<usize>,
    complete: bool,
}

impl CoverCertificate {
    /// Computes the covered union of a partition against its hypergraph.
    pub fn from_partition(h: &CopyHypergraph, partition: ColorPartition) -> Result<Self> {
        if partition.m() != h.m() {
            return Err(Error::Malformed(format!(
                "partition is over {} hyperedges, hypergraph has {}",
                partition.m(),
                h.m()
            )));
        }
        let mut bits = Bits::empty();
        for class in partition.classes() {
            for v in covered_set(h, class)? {
                bits.insert(v);
            }
        }
        let covered = bits.to_vec();
        let complete = covered.len() == h.l();
        Ok(Self {
            partition,
            covered,
            complete,
        })
    }

    /// The underlying partition.
    #[must_use]
    pub fn partition(&self) -> &ColorPartition {
        &self.partition
    }

    /// Copies covered by some class, ascending.
    #[must_use]
    pub fn covered(&self) -> &[usize] {
        &self.covered
    }

    /// Whether every copy is covered.
    #[must_use]
    pub fn complete(&self) -> bool {
        self.complete
    }

    /// The partition's excess.
    #[must_use]
    pub fn h(&self) -> usize {
        self.partition.excess()
    }

    /// Serializes to `{"h", "classes", "covered", "complete"}`.
    #[must_use]
    pub fn to_json(&self) -> String {
        let shadow = CertificateJson {
            h: self.h(),
            classes: self.partition.classes().to_vec(),
            covered: self.covered.clone(),
            complete: self.complete,
        };
        serde_json::to_string_pretty(&shadow).expect("certificate serialization cannot fail")
    }

    /// Parses the canonical JSON shape; the stated excess must match the
    /// class structure. Use [`verify_cover`] to recheck against a
    /// hypergraph.
    pub fn from_json(text: &str) -> Result<Self> {
        let shadow: CertificateJson = serde_json::from_str(text)
            .map_err(|e| Error::Malformed(format!("bad certificate JSON: {e}")))?;
        let m: usize = shadow.classes.iter().map(Vec::len).sum();
        let partition = ColorPartition::new(m, shadow.classes)?;
        if partition.excess() != shadow.h {
            return Err(Error::Malformed(format!(
                "certificate claims excess {} but classes give {}",
                shadow.h,
                partition.excess()
            )));
        }
        Ok(Self {
            partition,
            covered: shadow.covered,
            complete: shadow.complete,
        })
    }
}

/// Rechecks a certificate against a hypergraph: the covered union and the
/// completeness flag must both be reproducible from the partition.
pub fn verify_cover(h: &CopyHypergraph, certificate: &CoverCertificate) -> Result<()> {
    let fresh = CoverCertificate::from_partition(h, certificate.partition.clone())?;
    if fresh.covered != certificate.covered {
        return Err(Error::Malformed(
            "certificate's covered set does not match its partition".into(),
        ));
    }
    if fresh.complete != certificate.complete {
        return Err(Error::Malformed(
            "certificate's completeness flag is wrong".into(),
        ));
    }
    Ok(())
}

/// The covered set of one class: the copies lying in at least two of its
/// members. A singleton class covers nothing.
pub fn covered_set(h: &CopyHypergraph, class: &[usize]) -> Result<Vec<usize>> {
    if class.is_empty() {
        return Err(Error::Malformed("covered_set of an empty class".into()));
    }
    let mut sorted = class.to_vec();
    sorted.sort_unstable();
    if sorted.windows(2).any(|w| w[0] == w[1]) {
        return Err(Error::Malformed("class repeats a hyperedge".into()));
    }
    let mut once = Bits::empty();
    let mut twice = Bits::empty();
    for &e in &sorted {
        let vs = h
            .hyperedge(e)
            .map(|_| h.vset(e))
            .map_err(|_| Error::EdgeOutOfRange {
                edge: e,
                edge_count: h.m(),
            })?;
        twice = twice.union(&once.intersect(&vs));
        once = once.union(&vs);
    }
    Ok(twice.to_vec())
}

/// Whether a class is a barrier: every copy of its covered set lies in
/// exactly two of its members. Vacuously true when the covered set is
/// empty; classes of fewer than two members are rejected.
pub fn is_barrier(h: &CopyHypergraph, class: &[usize]) -> Result<bool> {
    if class.len() < 2 {
        return Err(Error::SingletonClass { size: class.len() });
    }
    let mut once = Bits::empty();
    let mut twice = Bits::empty();
    let mut thrice = Bits::empty();
    for &e in class {
        let vs = h
            .hyperedge(e)
            .map(|_| h.vset(e))
            .map_err(|_| Error::EdgeOutOfRange {
                edge: e,
                edge_count: h.m(),
            })?;
        thrice = thrice.union(&twice.intersect(&vs));
        twice = twice.union(&once.intersect(&vs));
        once = once.union(&vs);
    }
    Ok(thrice.is_empty())
}

/// Upper bound on a covered set's size by class size: `0` for singletons,
/// `s` for two members, `⌊r·size/2⌋` for three or more.
#[must_use]
pub fn li_bound(class_size: usize, r: usize, s: usize) -> usize {
    match class_size {
        0 | 1 => 0,
        2 => s,
        c => r * c / 2,
    }
}

/// The structural criterion that forces membership in `P(3, ·)`: rank 3,
/// overlap 2, at least 7 copies and at least 4 hyperedges.
#[must_use]
pub fn lemma_2_3_applies(h: &CopyHypergraph) -> bool {
    let (r, s) = h.rank_and_overlap();
    r == 3 && s == 2 && h.l() >= 7 && h.m() >= 4
}

/// A cyclic symmetry of the instance: copy `v` maps to `vertex_perm[v]`
/// and hyperedge `j` to `hyperedge_perm[j]`, preserving incidence.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SymmetryAction {
    /// Image of each hyperedge id.
    pub hyperedge_perm: Vec<usize>,
    /// Image of each copy index.
    pub vertex_perm: Vec<usize>,
}

/// Knobs for the covering search.
#[derive(Debug, Clone)]
pub struct CoverOptions {
    /// Cap on search nodes before a typed resource error.
    pub node_budget: u64,
    /// Optional symmetry used to filter root branches.
    pub symmetry: Option<SymmetryAction>,
}

impl Default for CoverOptions {
    fn default() -> Self {
        Self {
            node_budget: crate::DEFAULT_NODE_BUDGET,
            symmetry: None,
        }
    }
}

/// Result of the bounded search.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CoverOutcome {
    /// A minimum-excess covering partition; its excess is `h_min`.
    Found(CoverCertificate),
    /// No covering partition exists with excess ≤ `budget`; `h_min`
    /// exceeds the budget (it may be infinite).
    NoCoverWithin {
        /// The excess cap that was exhausted.
        budget: usize,
    },
}

/// Finds a covering partition of minimum excess, or proves that none
/// exists with excess ≤ `budget` (an excess cap, not a node count).
///
/// Iterative deepening from a coverage-capacity lower bound up to the
/// greedy upper bound; the first cover found is returned, so `h_min`
/// equals its excess. Node exhaustion is the typed `Budget` error with
/// the bracket `[lo, hi]` known for `h_min` at that point.
pub fn min_excess_cover(
    h: &CopyHypergraph,
    budget: usize,
    opts: &CoverOptions,
) -> Result<CoverOutcome> {
    if (0..h.l()).any(|v| h.degree(v).unwrap_or(0) < 2) {
        // A copy in fewer than two hyperedges can never be covered.
        return Ok(CoverOutcome::NoCoverWithin { budget });
    }
    let (greedy_classes, h_greedy) = greedy_cover(h, &[])?;
    let root_sym = match &opts.symmetry {
        Some(action) => Some(RootSymmetry::build(h, action)?),
        None => None,
    };
    let (r, s) = h.rank_and_overlap();
    let n_table = coverage_table(h.l(), h_greedy, r, s);
    let lb = lower_bound(h.l(), &n_table, r, s);
    if lb > h_greedy {
        return Err(Error::Malformed(format!(
            "internal error: lower bound {lb} exceeds greedy excess {h_greedy}"
        )));
    }
    if budget < lb {
        return Ok(CoverOutcome::NoCoverWithin { budget });
    }
    let mut searcher = Searcher {
        h,
        all_copies: Bits::all_below(h.l()),
        twins_before: twins_before(h),
        n_table,
        r,
        s,
        node_budget: opts.node_budget,
        nodes: 0,
        h_greedy,
        level: 0,
        root_sym,
        state: CoverState::empty(),
        found: None,
    };
    for level in lb..=budget.min(h_greedy) {
        if level == h_greedy {
            // Every smaller excess is exhausted, so the greedy cover is
            // already minimum; no search needed at this level.
            return Ok(CoverOutcome::Found(certificate_from_classes(
                h,
                greedy_classes,
            )?));
        }
        searcher.level = level;
        if searcher.dfs()? {
            let classes = searcher.found.take().expect("dfs success stores classes");
            return Ok(CoverOutcome::Found(certificate_from_classes(h, classes)?));
        }
    }
    Ok(CoverOutcome::NoCoverWithin { budget })
}

/// Membership in `P(excess, l)`: true exactly when the hypergraph has `l`
/// copies and no covering partition of excess ≤ `excess` exists.
pub fn is_member_p(
    h: &CopyHypergraph,
    excess: usize,
    l: usize,
    opts: &CoverOptions,
) -> Result<bool> {
    if h.l() != l {
        return Ok(false);
    }
    match min_excess_cover(h, excess, opts)? {
        CoverOutcome::Found(_) => Ok(false),
        CoverOutcome::NoCoverWithin { .. } => Ok(true),
    }
}

/// Literal reference decision for `h_min` by enumerating all partitions
/// in ascending excess; `None` when no covering partition exists at all.
/// Guarded to small instances.
pub fn min_excess_cover_by_enumeration(
    h: &CopyHypergraph,
    max_m: usize,
) -> Result<Option<usize>> {
    let m = h.m();
    if m > max_m {
        return Err(Error::TooLargeForOracle { m, max_m });
    }
    if (0..h.l()).any(|v| h.degree(v).unwrap_or(0) < 2) {
        return Ok(None);
    }
    let mut counts = vec![0u8; m];
    for excess in 0..m {
        let blocks = m - excess;
        let mut found = false;
        let _ = for_each_partition_with_blocks(m, blocks, |rgs| {
            let covers = (0..h.l()).all(|v| {
                for &b in rgs {
                    counts[b] = 0;
                }
                let mut ok = false;
                for &e in h.edges_at(v).expect("copy index in range") {
                    counts[rgs[e]] += 1;
                    if counts[rgs[e]] >= 2 {
                        ok = true;
                        break;
                    }
                }
                ok
            });
            if covers {
                found = true;
                ControlFlow::Break(())
            } else {
                ControlFlow::Continue(())
            }
        });
        if found {
            return Ok(Some(excess));
        }
    }
    Ok(None)
}

/// Turns a maximum cycle packing of a rank-≤ 2 instance into a covering
/// certificate: the packed cycles seed classes and a greedy pass covers
/// the rest. The resulting excess always equals `l − M`; anything else is
/// reported as an internal error.
pub fn cover_from_packing(
    h: &CopyHypergraph,
    packing: &CyclePacking,
) -> Result<CoverCertificate> {
    let g = h.as_multigraph()?;
    verify_packing(&g, packing)?;
    if (0..h.l()).any(|v| h.degree(v).unwrap_or(0) < 2) {
        return Err(Error::Malformed(
            "a copy lies in fewer than two hyperedges; no covering partition exists".into(),
        ));
    }
    let (classes, h_used) = greedy_cover(h, &packing.cycles)?;
    if h_used != h.l() - packing.count {
        return Err(Error::Malformed(format!(
            "internal error: packing completion used excess {} instead of l - M = {}",
            h_used,
            h.l() - packing.count
        )));
    }
    let certificate = certificate_from_classes(h, classes)?;
    if !certificate.complete() {
        return Err(Error::Malformed(
            "internal error: packing completion left copies uncovered".into(),
        ));
    }
    Ok(certificate)
}

fn certificate_from_classes(
    h: &CopyHypergraph,
    classes: Vec<Vec<usize>>,
) -> Result<CoverCertificate> {
    let partition = ColorPartition::from_multi_classes(h.m(), classes)?;
    CoverCertificate::from_partition(h, partition)
}

/// Per-hyperedge list of earlier hyperedges with an identical copy set;
/// such twins are interchangeable in any partition.
fn twins_before(h: &CopyHypergraph) -> Vec<Vec<usize>> {
    let mut map: std::collections::HashMap<Bits, Vec<usize>> = std::collections::HashMap::new();
    let mut twins = vec![Vec::new(); h.m()];
    for j in 0..h.m() {
        let entry = map.entry(h.vset(j)).or_default();
        twins[j] = entry.clone();
        entry.push(j);
    }
    twins
}

/// Largest covered set a class of `c` members can have.
fn class_cap(c: usize, r: usize, s: usize) -> usize {
    li_bound(c, r, s)
}

/// Like `class_cap`, refined for classes grown from a pair: the pair
/// covers at most `s` and each further member promotes at most `r`.
fn grown_class_cap(c: usize, r: usize, s: usize) -> usize {
    if c < 2 {
        return 0;
    }
    class_cap(c, r, s).min(s + r * (c - 2))
}

/// `table[g]` = most copies that `g` moves can cover using only classes
/// opened from scratch (a class of `t+1` members costs `t` moves).
fn coverage_table(l: usize, h_greedy: usize, r: usize, s: usize) -> Vec<usize> {
    let len = h_greedy.max(l) + 1;
    let mut table = vec![0usize; len];
    for g in 1..len {
        let mut best = 0;
        for t in 1..=g {
            best = best.max(grown_class_cap(t + 1, r, s) + table[g - t]);
        }
        table[g] = best;
    }
    table
}

/// Sound lower bounds on `h_min`: the coverage table must reach `l`, and
/// when `r ≤ 2s` each class of `c` members covers at most `(r+s)(c−1)/2`,
/// giving the excess bound `⌈2l/(r+s)⌉`.
fn lower_bound(l: usize, table: &[usize], r: usize, s: usize) -> usize {
    let mut lb = 1;
    if let Some(g) = (0..table.len()).find(|&g| table[g] >= l) {
        lb = lb.max(g);
    }
    if r <= 2 * s {
        lb = lb.max((2 * l).div_ceil(r + s));
    }
    lb
}

#[derive(Debug, Clone)]
struct Class {
    edges: Vec<usize>,
    once: Bits,
    twice: Bits,
    alive: bool,
}

#[derive(Debug, Clone)]
struct CoverState {
    classes: Vec<Class>,
    assigned: Bits,
    covered: Bits,
    h_used: usize,
}

#[derive(Debug, Clone, Copy)]
enum Move {
    Extend { class: usize, edge: usize },
    Merge { a: usize, b: usize },
    Pair { e1: usize, e2: usize },
}

enum Frame {
    Extend {
        class: usize,
        edge: usize,
        prev_once: Bits,
        prev_twice: Bits,
        prev_covered: Bits,
    },
    Merge {
        a: usize,
        b: usize,
        prev_once: Bits,
        prev_twice: Bits,
        prev_covered: Bits,
        moved: usize,
    },
    Pair {
        e1: usize,
        e2: usize,
        prev_covered: Bits,
    },
}

impl CoverState {
    fn empty() -> Self {
        Self {
            classes: Vec::new(),
            assigned: Bits::empty(),
            covered: Bits::empty(),
            h_used: 0,
        }
    }

    fn apply(&mut self, h: &CopyHypergraph, mv: Move) -> Frame {
        self.h_used += 1;
        match mv {
            Move::Extend { class, edge } => {
                let vs = h.vset(edge);
                let prev_once = self.classes[class].once;
                let prev_twice = self.classes[class].twice;
                let prev_covered = self.covered;
                let promoted = prev_once.intersect(&vs);
                let fresh = vs.minus(&prev_once.union(&prev_twice));
                let c = &mut self.classes[class];
                c.twice = prev_twice.union(&promoted);
                c.once = prev_once.minus(&vs).union(&fresh);
                c.edges.push(edge);
                self.covered = prev_covered.union(&promoted);
                self.assigned.insert(edge);
                Frame::Extend {
                    class,
                    edge,
                    prev_once,
                    prev_twice,
                    prev_covered,
                }
            }
            Move::Merge { a, b } => {
                let (o1, t1) = (self.classes[a].once, self.classes[a].twice);
                let (o2, t2) = (self.classes[b].once, self.classes[b].twice);
                let moved = self.classes[b].edges.len();
                let prev_covered = self.covered;
                let new_twice = t1.union(&t2).union(&o1.intersect(&o2));
                let new_once = o1.union(&o2).minus(&new_twice);
                let b_edges = self.classes[b].edges.clone();
                let ca = &mut self.classes[a];
                ca.once = new_once;
                ca.twice = new_twice;
                ca.edges.extend(b_edges);
                self.classes[b].alive = false;
                self.covered = prev_covered.union(&new_twice);
                Frame::Merge {
                    a,
                    b,
                    prev_once: o1,
                    prev_twice: t1,
                    prev_covered,
                    moved,
                }
            }
            Move::Pair { e1, e2 } => {
                let prev_covered = self.covered;
                let (v1, v2) = (h.vset(e1), h.vset(e2));
                let twice = v1.intersect(&v2);
                let once = v1.union(&v2).minus(&twice);
                self.classes.push(Class {
                    edges: vec![e1, e2],
                    once,
                    twice,
                    alive: true,
                });
                self.assigned.insert(e1);
                self.assigned.insert(e2);
                self.covered = prev_covered.union(&twice);
                Frame::Pair {
                    e1,
                    e2,
                    prev_covered,
                }
            }
        }
    }

    fn undo(&mut self, frame: Frame) {
        self.h_used -= 1;
        match frame {
            Frame::Extend {
                class,
                edge,
                prev_once,
                prev_twice,
                prev_covered,
            } => {
                let c = &mut self.classes[class];
                c.once = prev_once;
                c.twice = prev_twice;
                let popped = c.edges.pop();
                debug_assert_eq!(popped, Some(edge));
                self.assigned.remove(edge);
                self.covered = prev_covered;
            }
            Frame::Merge {
                a,
                b,
                prev_once,
                prev_twice,
                prev_covered,
                moved,
            } => {
                self.classes[b].alive = true;
                let keep = self.classes[a].edges.len() - moved;
                let ca = &mut self.classes[a];
                ca.edges.truncate(keep);
                ca.once = prev_once;
                ca.twice = prev_twice;
                self.covered = prev_covered;
            }
            Frame::Pair {
                e1,
                e2,
                prev_covered,
            } => {
                self.classes.pop();
                self.assigned.remove(e1);
                self.assigned.remove(e2);
                self.covered = prev_covered;
            }
        }
    }

    /// All legal moves at the pivot, in canonical order: extends, merges,
    /// then new pairs. The pivot is the lowest uncovered copy: consecutive
    /// copies overlap in this problem family, so the sweep keeps growth
    /// local to the classes already opened, which is what the mark-based
    /// capacity bound rewards. (Fail-first pivots — fewest legal moves, or
    /// preferring once-marked copies — were measured on the hardest
    /// instances and did not shrink the tree.) Twin filtering drops a
    /// hyperedge whenever an earlier unassigned twin would produce the
    /// same state; when a root symmetry is active the root instead keeps
    /// only canonical pairs.
    fn moves(
        &self,
        h: &CopyHypergraph,
        twins_before: &[Vec<usize>],
        root_sym: Option<&RootSymmetry>,
    ) -> Vec<Move> {
        let at_root = self.h_used == 0;
        let sym = if at_root { root_sym } else { None };
        let pivot = match sym {
            Some(rs) => rs.pivot,
            None => self
                .covered
                .first_missing_below(h.l())
                .expect("moves requested with everything covered"),
        };
        let piv_edges = h.edges_at(pivot).expect("pivot in range");
        let use_twins = sym.is_none();
        let shadowed = |e: usize, ignore: Option<usize>| {
            use_twins
                && twins_before[e]
                    .iter()
                    .any(|&t| Some(t) != ignore && !self.assigned.contains(t))
        };
        let mut moves = Vec::new();
        let mut with_once = Vec::new();
        for (ci, c) in self.classes.iter().enumerate() {
            if c.alive && c.once.contains(pivot) {
                with_once.push(ci);
                for &e in piv_edges {
                    if !self.assigned.contains(e) && !shadowed(e, None) {
                        moves.push(Move::Extend { class: ci, edge: e });
                    }
                }
            }
        }
        for i in 0..with_once.len() {
            for j in i + 1..with_once.len() {
                moves.push(Move::Merge {
                    a: with_once[i],
                    b: with_once[j],
                });
            }
        }
        for (i, &e1) in piv_edges.iter().enumerate() {
            if self.assigned.contains(e1) || shadowed(e1, None) {
                continue;
            }
            for &e2 in &piv_edges[i + 1..] {
                if self.assigned.contains(e2) || shadowed(e2, Some(e1)) {
                    continue;
                }
                if let Some(rs) = sym {
                    if !rs.pair_is_canonical(e1, e2) {
                        continue;
                    }
                }
                moves.push(Move::Pair { e1, e2 });
            }
        }
        moves
    }
}

/// Root-level symmetry data: the pivot copy (from the smallest orbit) and
/// the hyperedge action of its stabilizer.
struct RootSymmetry {
    pivot: usize,
    stabilizer_edge_perms: Vec<Vec<usize>>,
}

impl RootSymmetry {
    fn build(h: &CopyHypergraph, action: &SymmetryAction) -> Result<Self> {
        validate_action(h, action)?;
        // Orbits of the cyclic group generated by the vertex permutation
        // are the cycles of the permutation.
        let l = h.l();
        let mut seen = vec![false; l];
        let mut best: Option<(usize, usize)> = None; // (orbit size, min vertex)
        for start in 0..l {
            if seen[start] {
                continue;
            }
            let mut len = 0;
            let mut v = start;
            loop {
                seen[v] = true;
                len += 1;
                v = action.vertex_perm[v];
                if v == start {
                    break;
                }
            }
            if best.is_none_or(|(bl, _)| len < bl) {
                best = Some((len, start));
            }
        }
        let (orbit_len, pivot) = best.expect("hypergraph has at least one copy");
        // The stabilizer of the pivot inside the cyclic group is the
        // subgroup generated by the orbit-length power.
        let m = h.m();
        let identity: Vec<usize> = (0..m).collect();
        let mut step = identity.clone();
        for _ in 0..orbit_len {
            step = compose(&step, &action.hyperedge_perm);
        }
        let mut stabilizer_edge_perms = Vec::new();
        let mut current = step.clone();
        while current != identity {
            stabilizer_edge_perms.push(current.clone());
            current = compose(&current, &step);
        }
        Ok(Self {
            pivot,
            stabilizer_edge_perms,
        })
    }

    fn pair_is_canonical(&self, e1: usize, e2: usize) -> bool {
        for g in &self.stabilizer_edge_perms {
            let (a, b) = (g[e1].min(g[e2]), g[e1].max(g[e2]));
            if (a, b) < (e1, e2) {
                return false;
            }
        }
        true
    }
}

fn compose(first: &[usize], then: &[usize]) -> Vec<usize> {
    first.iter().map(|&x| then[x]).collect()
}

fn validate_action(h: &CopyHypergraph, action: &SymmetryAction) -> Result<()> {
    let (l, m) = (h.l(), h.m());
    if action.vertex_perm.len() != l || action.hyperedge_perm.len() != m {
        return Err(Error::Malformed(
            "symmetry action has the wrong dimensions".into(),
        ));
    }
    let is_perm = |p: &[usize]| {
        let mut sorted = p.to_vec();
        sorted.sort_unstable();
        sorted.iter().copied().eq(0..p.len())
    };
    if !is_perm(&action.vertex_perm) || !is_perm(&action.hyperedge_perm) {
        return Err(Error::Malformed(
            "symmetry action is not a pair of permutations".into(),
        ));
    }
    for j in 0..m {
        let mut image = Bits::empty();
        for v in h.vset(j).iter() {
            image.insert(action.vertex_perm[v]);
        }
        if image != h.vset(action.hyperedge_perm[j]) {
            return Err(Error::Malformed(format!(
                "symmetry action does not preserve hyperedge {j}"
            )));
        }
    }
    Ok(())
}

struct Searcher<'a> {
    h: &'a CopyHypergraph,
    all_copies: Bits,
    twins_before: Vec<Vec<usize>>,
    n_table: Vec<usize>,
    r: usize,
    s: usize,
    node_budget: u64,
    nodes: u64,
    h_greedy: usize,
    level: usize,
    root_sym: Option<RootSymmetry>,
    state: CoverState,
    found: Option<Vec<Vec<usize>>>,
}

impl Searcher<'_> {
    fn dfs(&mut self) -> Result<bool> {
        if self.state.covered == self.all_copies {
            self.found = Some(
                self.state
                    .classes
                    .iter()
                    .filter(|c| c.alive)
                    .map(|c| c.edges.clone())
                    .collect(),
            );
            return Ok(true);
        }
        self.nodes += 1;
        if self.nodes > self.node_budget {
            return Err(Error::Budget {
                explored: self.nodes,
                budget: self.node_budget,
                quantity: "h",
                lo: self.level,
                hi: self.h_greedy,
            });
        }
        if self.state.h_used == self.level || self.prune() {
            return Ok(false);
        }
        let moves = self
            .state
            .moves(self.h, &self.twins_before, self.root_sym.as_ref());
        for mv in moves {
            let frame = self.state.apply(self.h, mv);
            let hit = self.dfs()?;
            self.state.undo(frame);
            if hit {
                return Ok(true);
            }
        }
        Ok(false)
    }

    /// True when the remaining uncovered copies provably exceed what the
    /// remaining excess can cover. Splits the remaining moves between
    /// work on existing classes (bounded through promotion marks and the
    /// merged-class cap) and freshly opened classes (the coverage table).
    fn prune(&self) -> bool {
        let u = self.level - self.state.h_used;
        let uncovered = self.all_copies.minus(&self.state.covered);
        let need = uncovered.count();
        let mut marks = 0usize;
        let mut total_edges = 0usize;
        let mut covered_max = 0usize;
        let mut any_alive = false;
        for c in &self.state.classes {
            if c.alive {
                any_alive = true;
                marks += c.once.intersect_count(&uncovered);
                total_edges += c.edges.len();
                covered_max = covered_max.max(c.twice.count());
            }
        }
        let mut cap = self.n_table[u];
        if any_alive {
            for f in 1..=u {
                let by_marks = (marks + self.r * f) / 2;
                let by_merge =
                    class_cap(total_edges + f, self.r, self.s).saturating_sub(covered_max);
                cap = cap.max(by_marks.min(by_merge) + self.n_table[u - f]);
            }
        }
        need > cap
    }
}

/// Greedy covering pass: seed classes (possibly none), then repeatedly
/// take the move covering the most new copies, ties resolved in canonical
/// move order. Returns the multi-member classes and the excess used.
fn greedy_cover(h: &CopyHypergraph, seeds: &[Vec<usize>]) -> Result<(Vec<Vec<usize>>, usize)> {
    let mut state = CoverState::empty();
    for seed in seeds {
        if seed.is_empty() {
            return Err(Error::Malformed("empty seed class".into()));
        }
        let mut once = Bits::empty();
        let mut twice = Bits::empty();
        for &e in seed {
            if e >= h.m() {
                return Err(Error::EdgeOutOfRange {
                    edge: e,
                    edge_count: h.m(),
                });
            }
            if state.assigned.contains(e) {
                return Err(Error::Malformed(format!(
                    "hyperedge {e} appears in two seed classes"
                )));
            }
            state.assigned.insert(e);
            let vs = h.vset(e);
            twice = twice.union(&once.intersect(&vs));
            once = once.union(&vs);
        }
        state.covered = state.covered.union(&twice);
        state.h_used += seed.len() - 1;
        state.classes.push(Class {
            edges: seed.clone(),
            once,
            twice,
            alive: true,
        });
    }
    let twins = twins_before(h);
    let all = Bits::all_below(h.l());
    while state.covered != all {
        let moves = state.moves(h, &twins, None);
        let mut best: Option<(usize, Move)> = None;
        for mv in moves {
            let before = state.covered.count();
            let frame = state.apply(h, mv);
            let gain = state.covered.count() - before;
            state.undo(frame);
            if best.is_none_or(|(bg, _)| gain > bg) {
                best = Some((gain, mv));
            }
        }
        let Some((_, mv)) = best else {
            return Err(Error::Malformed(
                "greedy cover is stuck: a copy lies in fewer than two hyperedges".into(),
            ));
        };
        state.apply(h, mv);
    }
    let classes = state
        .classes
        .iter()
        .filter(|c| c.alive)
        .map(|c| {
            let mut edges = c.edges.clone();
            edges.sort_unstable();
            edges
        })
        .collect();
    Ok((classes, state.h_used))
}
