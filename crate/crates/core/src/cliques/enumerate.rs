use crate::model::{CodingSet, PacketSet};

use super::{CliqueError, CliqueLimits, IdncGraph};

/// All maximal cliques of a graph (the maximal coding sets).
pub type CliqueList = Vec<CodingSet>;

/// Every maximal clique of `g`, sorted lexicographically.
///
/// Bron–Kerbosch with Tomita pivoting over bitset neighbourhoods. The output
/// can be exponential in the number of vertices, which is why graphs above
/// [`CliqueLimits::max_vertices`] are refused.
pub fn enumerate_maximal_cliques(g: &IdncGraph) -> Result<CliqueList, CliqueError> {
    enumerate_maximal_cliques_with(g, &CliqueLimits::default())
}

pub fn enumerate_maximal_cliques_with(g: &IdncGraph, limits: &CliqueLimits) -> Result<CliqueList, CliqueError> {
    limits.check(g.n_vertices())?;
    Ok(maximal_cliques_within(g, g.vertices()))
}

/// Maximal cliques of the subgraph induced by `within`, in original labels.
pub fn maximal_cliques_within(g: &IdncGraph, within: PacketSet) -> CliqueList {
    let mut out = Vec::new();
    if !within.is_empty() {
        expand(g, PacketSet::EMPTY, within, PacketSet::EMPTY, &mut out);
    }
    out.sort_unstable();
    out
}

fn expand(g: &IdncGraph, clique: PacketSet, mut candidates: PacketSet, mut excluded: PacketSet, out: &mut CliqueList) {
    if candidates.is_empty() {
        if excluded.is_empty() {
            out.push(clique);
        }
        return;
    }
    let pivot = candidates
        .union(excluded)
        .iter()
        .max_by_key(|&u| candidates.intersection(g.neighbors(u)).len())
        .expect("candidates is non-empty");
    for v in candidates.difference(g.neighbors(pivot)).iter() {
        let nv = g.neighbors(v);
        let mut next = clique;
        next.insert(v);
        expand(g, next, candidates.intersection(nv), excluded.intersection(nv), out);
        candidates.remove(v);
        excluded.insert(v);
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::fixtures::{golden_maximal_sets, golden_sfm};
    use proptest::prelude::*;

    /// Subset enumeration: keep cliques with no extending vertex.
    fn brute_force(g: &IdncGraph) -> CliqueList {
        let n = g.n_vertices();
        let mut out: CliqueList = (1u64..(1u64 << n))
            .map(PacketSet::from_bits)
            .filter(|&s| g.is_maximal_clique(s))
            .collect();
        out.sort_unstable();
        out
    }

    #[test]
    fn golden_has_four_maximal_sets() {
        let g = IdncGraph::from_sfm(&golden_sfm());
        let mut expected = golden_maximal_sets();
        expected.sort_unstable();
        assert_eq!(enumerate_maximal_cliques(&g).unwrap(), expected);
    }

    #[test]
    fn trivial_graphs() {
        let singletons: CliqueList = (0..4).map(PacketSet::singleton).collect();
        assert_eq!(enumerate_maximal_cliques(&IdncGraph::edgeless(4)).unwrap(), singletons);
        assert_eq!(
            enumerate_maximal_cliques(&IdncGraph::complete(5)).unwrap(),
            vec![PacketSet::full(5)]
        );
        assert!(enumerate_maximal_cliques(&IdncGraph::edgeless(0)).unwrap().is_empty());
    }

    #[test]
    fn limit_is_enforced() {
        let limits = CliqueLimits { max_vertices: 4 };
        assert_eq!(
            enumerate_maximal_cliques_with(&IdncGraph::edgeless(5), &limits),
            Err(CliqueError::TooLarge { vertices: 5, limit: 4 })
        );
    }

    proptest! {
        #[test]
        fn matches_subset_enumeration(n in 1usize..11, bits in prop::collection::vec(any::<bool>(), 55)) {
            let mut edges = Vec::new();
            let mut idx = 0;
            for i in 0..n {
                for j in i + 1..n {
                    if bits[idx] { edges.push((i, j)); }
                    idx += 1;
                }
            }
            let g = IdncGraph::from_edges(n, &edges).unwrap();
            prop_assert_eq!(enumerate_maximal_cliques(&g).unwrap(), brute_force(&g));
        }
    }
}
