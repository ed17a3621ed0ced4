//! Shared helpers for the integration suites: a seeded random hypergraph
//! generator sized to stay within the enumeration oracle's reach.

#![allow(dead_code)]

use gpar_core::hypergraph::CopyHypergraph;
use rand::seq::index::sample;
use rand::Rng;
use rand_chacha::ChaCha8Rng;

/// Upper bounds matching the oracle guard: at most 10 copies, 12 edges,
/// and 4 copies per edge.
pub const MAX_COPIES: usize = 10;
pub const MAX_EDGES: usize = 12;
pub const MAX_RANK: usize = 4;

/// Draws a random hypergraph: `2..=MAX_COPIES` copies, enough edges to
/// give every copy degree at least 2, every hyperedge nonempty, and rank
/// at most `MAX_RANK`.
pub fn random_hypergraph(rng: &mut ChaCha8Rng) -> CopyHypergraph {
    loop {
        let l = rng.gen_range(2..=MAX_COPIES);
        let m = rng.gen_range(3..=MAX_EDGES);
        let mut hyperedges: Vec<Vec<usize>> = (0..m)
            .map(|_| {
                let size = rng.gen_range(1..=MAX_RANK.min(l));
                sample(rng, l, size).into_iter().collect()
            })
            .collect();
        if patch_degrees(l, &mut hyperedges) {
            return CopyHypergraph::from_hyperedges(l, hyperedges)
                .expect("the generator only emits valid hypergraphs");
        }
    }
}

/// Raises every copy's degree to at least 2 by inserting it into
/// hyperedges with spare capacity; reports failure when the draw has no
/// room, so the caller redraws.
fn patch_degrees(l: usize, hyperedges: &mut [Vec<usize>]) -> bool {
    for copy in 0..l {
        loop {
            let degree = hyperedges.iter().filter(|f| f.contains(&copy)).count();
            if degree >= 2 {
                break;
            }
            let Some(slot) = hyperedges
                .iter_mut()
                .find(|f| f.len() < MAX_RANK && !f.contains(&copy))
            else {
                return false;
            };
            slot.push(copy);
        }
    }
    true
}

/// Copies covered by one color class: those with at least two of their
/// edges in the class.
pub fn class_covered_count(h: &CopyHypergraph, class: &[usize]) -> usize {
    (0..h.l())
        .filter(|&v| {
            class
                .iter()
                .filter(|&&j| h.hyperedge(j).expect("class indices are in range").contains(&v))
                .count()
                >= 2
        })
        .count()
}
