use crate::model::{PacketSet, Rational};

use super::{Collection, SolverError};

/// The candidate maximising `sum_k d_k T_k`, ties to the lexicographically
/// smallest set sequence.
pub fn select_collection(candidates: &[Collection], targets: &[usize]) -> Result<Collection, SolverError> {
    candidates
        .iter()
        .map(|c| c.canonical())
        .min_by(|a, b| {
            b.weighted_diversity(targets)
                .cmp(&a.weighted_diversity(targets))
                .then_with(|| a.sets().cmp(b.sets()))
        })
        .ok_or(SolverError::NoCandidates)
}

/// Greedy residual-demand order: each position takes the remaining set whose
/// not-yet-served packets carry the most demands, ties to the earliest set in
/// the input.
pub fn order_collection(c: &Collection, targets: &[usize]) -> Collection {
    let mut remaining: Vec<PacketSet> = c.sets().to_vec();
    let mut served = PacketSet::EMPTY;
    let mut out = Vec::with_capacity(remaining.len());
    while !remaining.is_empty() {
        let (best, _) = remaining.iter().enumerate().fold((0, None), |(bi, bd), (i, s)| {
            let d = residual_demand(*s, served, targets);
            match bd {
                Some(b) if d <= b => (bi, bd),
                _ => (i, Some(d)),
            }
        });
        let s = remaining.remove(best);
        served = served.union(s);
        out.push(s);
    }
    Collection::new(out, c.n_packets())
}

fn residual_demand(s: PacketSet, served: PacketSet, targets: &[usize]) -> usize {
    s.difference(served).iter().map(|k| targets[k]).sum()
}

/// `T_c(u)`: demands first served by the `u`-th set of `c`.
pub fn residual_profile(c: &Collection, targets: &[usize]) -> Vec<usize> {
    let mut served = PacketSet::EMPTY;
    c.sets()
        .iter()
        .map(|&s| {
            let d = residual_demand(s, served, targets);
            served = served.union(s);
            d
        })
        .collect()
}

/// `u_k`: 1-based position of the first set containing packet `k`.
pub fn first_slots(c: &Collection) -> Result<Vec<usize>, SolverError> {
    let mut u = vec![0; c.n_packets()];
    for (i, s) in c.sets().iter().enumerate().rev() {
        for k in s.iter() {
            u[k] = i + 1;
        }
    }
    match u.iter().position(|&x| x == 0) {
        Some(packet) => Err(SolverError::Uncoverable { packet }),
        None => Ok(u),
    }
}

/// Erasure-free average decoding delay `sum u_k T_k / sum T_k`.
pub fn d_idnc(c: &Collection, targets: &[usize]) -> Result<Rational, SolverError> {
    let u = first_slots(c)?;
    let total: usize = targets.iter().sum();
    if total == 0 {
        return Err(SolverError::NoDemands);
    }
    let weighted: usize = u.iter().zip(targets).map(|(u, t)| u * t).sum();
    Ok(Rational::new(weighted as u64, total as u64))
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    const GOLDEN_T: [usize; 6] = [1, 1, 2, 2, 3, 3];

    fn set(v: &[usize]) -> PacketSet {
        v.iter().copied().collect()
    }

    fn unordered_golden() -> Collection {
        Collection::new(vec![set(&[0, 1, 3]), set(&[1, 4]), set(&[2, 5])], 6)
    }

    fn permutations(n: usize) -> Vec<Vec<usize>> {
        if n == 0 {
            return vec![vec![]];
        }
        let mut out = Vec::new();
        for p in permutations(n - 1) {
            for pos in 0..n {
                let mut q = p.clone();
                q.insert(pos, n - 1);
                out.push(q);
            }
        }
        out
    }

    #[test]
    fn golden_greedy_order_and_delays() {
        let ordered = order_collection(&unordered_golden(), &GOLDEN_T);
        assert_eq!(ordered.sets(), &[set(&[2, 5]), set(&[0, 1, 3]), set(&[1, 4])]);
        assert_eq!(residual_profile(&ordered, &GOLDEN_T), vec![5, 4, 3]);
        assert_eq!(d_idnc(&unordered_golden(), &GOLDEN_T).unwrap(), Rational::new(25, 12));
        assert_eq!(d_idnc(&ordered, &GOLDEN_T).unwrap(), Rational::new(22, 12));
        assert_eq!(first_slots(&ordered).unwrap(), vec![2, 2, 1, 2, 3, 1]);
    }

    #[test]
    fn golden_greedy_is_best_of_all_orders() {
        let sets = unordered_golden().into_sets();
        let best = permutations(3)
            .into_iter()
            .map(|p| d_idnc(&Collection::new(p.iter().map(|&i| sets[i]).collect(), 6), &GOLDEN_T).unwrap())
            .min()
            .unwrap();
        assert_eq!(best, Rational::new(22, 12));
    }

    #[test]
    fn small_orders() {
        let one = Collection::new(vec![set(&[0, 1])], 2);
        assert_eq!(order_collection(&one, &[1, 1]), one);
        assert_eq!(d_idnc(&one, &[3, 1]).unwrap(), Rational::from_integer(1));
        let two = Collection::new(vec![set(&[0]), set(&[1, 2])], 3);
        let ordered = order_collection(&two, &[2, 3, 1]);
        assert_eq!(ordered.sets(), &[set(&[1, 2]), set(&[0])]);
        assert_eq!(residual_profile(&ordered, &[2, 3, 1]), vec![4, 2]);
    }

    #[test]
    fn selection() {
        let a = Collection::new(vec![set(&[0, 1]), set(&[2])], 3);
        let b = Collection::new(vec![set(&[0]), set(&[1, 2])], 3);
        // Both score 7; b starts with {p1}, which precedes {p1,p2}.
        let t = [1, 4, 2];
        assert_eq!(select_collection(&[b.clone(), a.clone()], &t).unwrap(), b.canonical());
        let c = Collection::new(vec![set(&[0, 1]), set(&[1, 2])], 3);
        assert_eq!(c.weighted_diversity(&t), 11);
        assert_eq!(select_collection(&[a.clone(), c.clone()], &t).unwrap(), c);
        assert_eq!(select_collection(std::slice::from_ref(&a), &t).unwrap(), a);
        assert_eq!(select_collection(&[], &t), Err(SolverError::NoCandidates));
    }

    #[test]
    fn uncovered_packet_is_an_error() {
        let c = Collection::new(vec![set(&[0])], 2);
        assert_eq!(d_idnc(&c, &[1, 1]), Err(SolverError::Uncoverable { packet: 1 }));
    }

    proptest! {
        #[test]
        fn profile_is_conserved(bits in prop::collection::vec(1u64..64, 1..5), t in prop::collection::vec(0usize..5, 6)) {
            let sets: Vec<PacketSet> = bits.iter().map(|&b| PacketSet::from_bits(b)).collect();
            let n = 6;
            let c = Collection::new(sets, n);
            let ordered = order_collection(&c, &t);
            let profile = residual_profile(&ordered, &t);
            let covered: usize = c.covered().iter().map(|k| t[k]).sum();
            prop_assert_eq!(profile.iter().sum::<usize>(), covered);
            prop_assert_eq!(ordered.canonical(), c.canonical());
        }
    }
}
