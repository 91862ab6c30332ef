use crate::model::{CodingSet, PacketSet};

use super::enumerate::maximal_cliques_within;
use super::{CliqueError, CliqueLimits, IdncGraph};

/// A clique of size `ω(G)`.
///
/// When several maximum cliques exist the lexicographically largest one is
/// returned, which matches the highest-index tie rule of the greedy search.
pub fn exact_max_clique(g: &IdncGraph) -> Result<CodingSet, CliqueError> {
    exact_max_clique_with(g, &CliqueLimits::default())
}

pub fn exact_max_clique_with(g: &IdncGraph, limits: &CliqueLimits) -> Result<CodingSet, CliqueError> {
    limits.check(g.n_vertices())?;
    Ok(exact_max_clique_within(g, g.vertices()))
}

/// Maximum clique of the subgraph induced by `within` (empty if `within` is).
pub fn exact_max_clique_within(g: &IdncGraph, within: PacketSet) -> CodingSet {
    maximum_cliques_within(g, within)
        .into_iter()
        .max()
        .unwrap_or(PacketSet::EMPTY)
}

/// Every clique of maximum size inside `within`, sorted lexicographically.
pub fn maximum_cliques_within(g: &IdncGraph, within: PacketSet) -> Vec<CodingSet> {
    let all = maximal_cliques_within(g, within);
    let omega = all.iter().map(|c| c.len()).max().unwrap_or(0);
    all.into_iter().filter(|c| c.len() == omega).collect()
}

/// Clique number `ω(G)`.
pub fn clique_number(g: &IdncGraph) -> Result<usize, CliqueError> {
    exact_max_clique(g).map(|c| c.len())
}
