use crate::model::{CodingSet, PacketSet};

use super::IdncGraph;

/// Result of the greedy maximum-clique search with its work counter.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct HeuristicClique {
    pub clique: CodingSet,
    /// Weight comparisons made while picking the heaviest vertex: one per
    /// remaining vertex beyond the first in every round. Never exceeds
    /// `K(K-1)/2` and reaches it only on the complete graph.
    pub weighting_steps: usize,
}

/// Greedy maximum-clique search over the whole graph.
pub fn heuristic_max_clique(g: &IdncGraph) -> CodingSet {
    heuristic_max_clique_within(g, g.vertices()).clique
}

/// Greedy maximum-clique search restricted to the vertices in `within`.
///
/// Each round weights every remaining vertex by its degree inside the
/// remaining graph, keeps the heaviest one (ties go to the highest index),
/// and discards it together with every vertex not adjacent to it. The kept
/// vertices form a maximal clique of the induced subgraph.
pub fn heuristic_max_clique_within(g: &IdncGraph, within: PacketSet) -> HeuristicClique {
    let mut remaining = within;
    let mut clique = PacketSet::EMPTY;
    let mut weighting_steps = 0;
    while !remaining.is_empty() {
        let mut best = None;
        let mut best_weight = 0;
        for v in remaining.iter() {
            let w = g.neighbors(v).intersection(remaining).len();
            if best.is_none() || w >= best_weight {
                best = Some(v);
                best_weight = w;
            }
        }
        weighting_steps += remaining.len() - 1;
        let v = best.expect("remaining is non-empty");
        clique.insert(v);
        remaining = remaining.intersection(g.neighbors(v));
    }
    HeuristicClique {
        clique,
        weighting_steps,
    }
}
