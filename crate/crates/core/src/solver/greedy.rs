use crate::cliques::{
    heuristic_max_clique_within, maximum_cliques_within, CliqueFinder, CliqueLimits, CliqueList, IdncGraph,
};
use crate::model::PacketSet;

use super::{Collection, SolverError};

/// Greedy set cover over the maximal coding sets.
///
/// Each step takes the set covering the most uncovered packets. Among equal
/// sets the one holding the uncovered packet with the fewest covering sets
/// wins, then the lexicographically smallest.
pub fn hybrid_greedy_collection(all_cliques: &CliqueList, n_packets: usize) -> Result<Collection, SolverError> {
    if all_cliques.is_empty() {
        return Err(SolverError::EmptyCliqueList);
    }
    let diversity: Vec<usize> = (0..n_packets)
        .map(|k| all_cliques.iter().filter(|c| c.contains(k)).count())
        .collect();
    if let Some(packet) = diversity.iter().position(|&d| d == 0) {
        return Err(SolverError::Uncoverable { packet });
    }
    let mut uncovered = PacketSet::full(n_packets);
    let mut sets = Vec::new();
    while !uncovered.is_empty() {
        let best = all_cliques
            .iter()
            .filter(|c| !c.is_disjoint(uncovered))
            .min_by(|a, b| {
                let (na, nb) = (a.intersection(uncovered), b.intersection(uncovered));
                let rarest = |s: PacketSet| s.iter().map(|k| diversity[k]).min();
                nb.len()
                    .cmp(&na.len())
                    .then_with(|| rarest(na).cmp(&rarest(nb)))
                    .then_with(|| a.cmp(b))
            })
            .copied()
            .expect("every packet is covered by some set");
        uncovered = uncovered.difference(best);
        sets.push(best);
    }
    Ok(Collection::new(sets, n_packets))
}

/// The partition `F(G)`: repeatedly extract a maximum clique (exact) or a
/// greedy heaviest-vertex clique (heuristic) from the residual graph.
///
/// Among several maximum cliques, exact mode keeps the one that leaves the
/// most edges in the residual graph, i.e. the most coding opportunities for
/// later parts; remaining ties go to the lexicographically largest.
pub fn partition_fg(g: &IdncGraph, finder: CliqueFinder) -> Result<Collection, SolverError> {
    if finder == CliqueFinder::Exact {
        CliqueLimits::default().check(g.n_vertices())?;
    }
    let mut residual = g.vertices();
    let mut sets = Vec::new();
    while !residual.is_empty() {
        let m = match finder {
            CliqueFinder::Exact => sparing_max_clique(g, residual),
            CliqueFinder::Heuristic => heuristic_max_clique_within(g, residual).clique,
        };
        residual = residual.difference(m);
        sets.push(m);
    }
    Ok(Collection::new(sets, g.n_vertices()))
}

fn sparing_max_clique(g: &IdncGraph, residual: PacketSet) -> PacketSet {
    maximum_cliques_within(g, residual)
        .into_iter()
        .max_by_key(|&c| (g.induced(residual.difference(c)).edge_count(), c))
        .expect("a non-empty residual has a maximum clique")
}

/// Heuristic semi-online coder: the heuristic partition, with every part
/// enlarged by a heuristic clique of already covered packets adjacent to
/// the whole part.
pub fn heuristic_semi_online(g: &IdncGraph) -> Collection {
    let mut residual = g.vertices();
    let mut covered = PacketSet::EMPTY;
    let mut sets = Vec::new();
    while !residual.is_empty() {
        let m = heuristic_max_clique_within(g, residual).clique;
        let extra = heuristic_max_clique_within(g, g.common_neighbors(m, covered)).clique;
        residual = residual.difference(m);
        covered = covered.union(m);
        sets.push(m.union(extra));
    }
    Collection::new(sets, g.n_vertices())
}
