use std::collections::{BTreeSet, HashMap};

use crate::cliques::CliqueList;
use crate::model::PacketSet;

use super::{Collection, SearchBudget, SolverError};

/// Every minimum collection of maximal coding sets.
pub fn optimal_minimum_collections(all_cliques: &CliqueList, n_packets: usize) -> Result<Vec<Collection>, SolverError> {
    optimal_minimum_collections_with(all_cliques, n_packets, &SearchBudget::default())
}

/// Breadth-first search over covered-packet sets.
///
/// From a covered set the search branches on its least diverse uncovered
/// packet (ties to the lowest index), one branch per maximal set containing
/// it. Every minimum collection holds a set through that packet, so none is
/// lost. The branching packet depends only on the covered set, so each
/// covered set is expanded once, at the first level it appears; later
/// arrivals could only lead to larger collections. The minimum collections
/// are then read back along the recorded parent links.
///
/// Returned collections are canonical (sets sorted) and listed in
/// lexicographic order. The budget caps both the number of distinct covered
/// sets and the number of parent-link paths walked.
pub fn optimal_minimum_collections_with(
    all_cliques: &CliqueList,
    n_packets: usize,
    budget: &SearchBudget,
) -> Result<Vec<Collection>, SolverError> {
    if all_cliques.is_empty() {
        return Err(SolverError::EmptyCliqueList);
    }
    let full = PacketSet::full(n_packets);
    let containing: Vec<Vec<usize>> = (0..n_packets)
        .map(|k| (0..all_cliques.len()).filter(|&i| all_cliques[i].contains(k)).collect())
        .collect();
    if let Some(k) = containing.iter().position(|c| c.is_empty()) {
        return Err(SolverError::Uncoverable { packet: k });
    }
    let exceeded = || SolverError::BudgetExceeded {
        limit: budget.max_candidates,
    };

    let mut covered = vec![PacketSet::EMPTY];
    let mut level_of = vec![0usize];
    let mut parents: Vec<Vec<(usize, usize)>> = vec![Vec::new()];
    let mut index = HashMap::from([(PacketSet::EMPTY, 0usize)]);
    let mut level = vec![0usize];
    let mut depth = 0;
    let goal = loop {
        if let Some(&done) = level.iter().find(|&&s| covered[s] == full) {
            break done;
        }
        depth += 1;
        let mut next = Vec::new();
        for &s in &level {
            let branch = full
                .difference(covered[s])
                .iter()
                .min_by_key(|&k| containing[k].len())
                .expect("incomplete collection has an uncovered packet");
            for &c in &containing[branch] {
                let grown = covered[s].union(all_cliques[c]);
                match index.get(&grown) {
                    Some(&id) if level_of[id] == depth => parents[id].push((s, c)),
                    Some(_) => {}
                    None => {
                        let id = covered.len();
                        if id > budget.max_candidates {
                            return Err(exceeded());
                        }
                        index.insert(grown, id);
                        covered.push(grown);
                        level_of.push(depth);
                        parents.push(vec![(s, c)]);
                        next.push(id);
                    }
                }
            }
        }
        level = next;
    };

    let mut found = BTreeSet::new();
    let mut walked = 0usize;
    let mut stack = vec![(goal, Vec::new())];
    while let Some((s, picked)) = stack.pop() {
        if s == 0 {
            walked += 1;
            if walked > budget.max_candidates {
                return Err(exceeded());
            }
            let mut picked: Vec<usize> = picked;
            picked.sort_unstable();
            found.insert(picked);
            continue;
        }
        for &(p, c) in &parents[s] {
            let mut next = picked.clone();
            next.push(c);
            stack.push((p, next));
        }
    }
    let mut out: Vec<Collection> = found
        .into_iter()
        .map(|ix| Collection::new(ix.into_iter().map(|i| all_cliques[i]).collect(), n_packets).canonical())
        .collect();
    out.sort_by(|a, b| a.sets().cmp(b.sets()));
    out.dedup();
    Ok(out)
}
