use serde::Serialize;

use crate::cliques::{heuristic_max_clique, maximum_cliques_within, CliqueFinder, CliqueLimits, IdncGraph};
use crate::model::{rational_json, PacketSet, Rational};
use crate::solver::{d_idnc, order_collection, partition_fg, residual_profile};

use super::{loose_lower_u, loose_upper_u, BoundsError};

/// Decoding-delay bounds of one instance.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DelayBounds {
    #[serde(with = "rational_json")]
    pub loose_lower: Rational,
    #[serde(with = "rational_json")]
    pub loose_upper: Rational,
    #[serde(with = "rational_json")]
    pub tight_lower: Rational,
    #[serde(with = "rational_json")]
    pub tight_upper: Rational,
    /// Demands first served by each set of the ordered partition behind
    /// `tight_upper`.
    pub tc_profile: Vec<usize>,
}

/// Average delay of a schedule that serves `profile[u]` demands in slot `u+1`.
pub fn profile_delay(profile: &[usize]) -> Result<Rational, BoundsError> {
    let total: usize = profile.iter().sum();
    if total == 0 {
        return Err(BoundsError::NoDemands);
    }
    let weighted: usize = profile.iter().enumerate().map(|(u, t)| (u + 1) * t).sum();
    Ok(Rational::new(weighted as u64, total as u64))
}

fn check_targets(k: usize, targets: &[usize]) -> Result<(), BoundsError> {
    if targets.len() != k {
        return Err(BoundsError::TargetsLength {
            expected: k,
            found: targets.len(),
        });
    }
    if targets.iter().all(|&t| t == 0) {
        return Err(BoundsError::NoDemands);
    }
    Ok(())
}

/// Bounds that depend only on `k`, `m0` and the demand counts.
///
/// The lower one lets a single set absorb every packet but the `U-1` least
/// wanted, with `U` the loose lower throughput bound; the upper one is
/// `(U + 1) / 2` with `U` the loose upper throughput bound.
pub fn delay_loose_bounds(k: usize, m0: usize, targets: &[usize]) -> Result<(Rational, Rational), BoundsError> {
    check_targets(k, targets)?;
    let lo = loose_lower_u(k, m0)?;
    let hi = loose_upper_u(k, m0)?;
    let mut sorted = targets.to_vec();
    sorted.sort_unstable_by(|a, b| b.cmp(a));
    let split = k - lo + 1;
    let profile: Vec<usize> = std::iter::once(sorted[..split].iter().sum())
        .chain(sorted[split..].iter().copied())
        .collect();
    Ok((profile_delay(&profile)?, Rational::new(hi as u64 + 1, 2)))
}

/// Bounds from a clique of conflicting packets and from the greedy partition.
///
/// Lower: the clique members go out one per slot in decreasing demand, and
/// every other packet rides with the first. Among maximum cliques the one
/// whose most wanted member has the largest demand is used, then the
/// lexicographically smallest. Upper: the delay of the ordered partition.
pub fn delay_tight_bounds(
    g: &IdncGraph,
    targets: &[usize],
    mode: CliqueFinder,
) -> Result<(Rational, Rational, Vec<usize>), BoundsError> {
    check_targets(g.n_vertices(), targets)?;
    let complement = g.complement();
    let clique = match mode {
        CliqueFinder::Exact => {
            CliqueLimits::default().check(g.n_vertices())?;
            let best_top = |c: &PacketSet| c.iter().map(|k| targets[k]).max().unwrap_or(0);
            maximum_cliques_within(&complement, complement.vertices())
                .into_iter()
                .min_by(|a, b| best_top(b).cmp(&best_top(a)).then_with(|| a.cmp(b)))
                .expect("a non-empty graph has a maximum clique")
        }
        CliqueFinder::Heuristic => heuristic_max_clique(&complement),
    };
    let mut members: Vec<usize> = clique.iter().map(|k| targets[k]).collect();
    members.sort_unstable_by(|a, b| b.cmp(a));
    let rest: usize = g.vertices().difference(clique).iter().map(|k| targets[k]).sum();
    members[0] += rest;
    let lower = profile_delay(&members)?;

    let partition = order_collection(&partition_fg(g, mode)?, targets);
    let upper = d_idnc(&partition, targets)?;
    Ok((lower, upper, residual_profile(&partition, targets)))
}

/// All four delay bounds.
pub fn delay_bounds(g: &IdncGraph, targets: &[usize], mode: CliqueFinder) -> Result<DelayBounds, BoundsError> {
    let (loose_lower, loose_upper) = delay_loose_bounds(g.n_vertices(), g.edge_count(), targets)?;
    let (tight_lower, tight_upper, tc_profile) = delay_tight_bounds(g, targets, mode)?;
    Ok(DelayBounds {
        loose_lower,
        loose_upper,
        tight_lower,
        tight_upper,
        tc_profile,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::fixtures::golden_sfm;
    use crate::model::StateFeedbackMatrix;
    use crate::solver::{solve, Algorithm, Feedback, SearchBudget};

    const GOLDEN_T: [usize; 6] = [1, 1, 2, 2, 3, 3];

    #[test]
    fn profile_delay_extremes() {
        assert_eq!(profile_delay(&[4, 4, 4]).unwrap(), Rational::from_integer(2));
        assert_eq!(profile_delay(&[7]).unwrap(), Rational::from_integer(1));
        assert_eq!(profile_delay(&[10, 1, 1]).unwrap(), Rational::new(15, 12));
        assert_eq!(profile_delay(&[0, 0]), Err(BoundsError::NoDemands));
    }

    #[test]
    fn loose_examples() {
        // Uniform demands at the loose upper cardinality give (U+1)/2.
        let (_, hi) = delay_loose_bounds(5, 0, &[2; 5]).unwrap();
        assert_eq!(hi, Rational::from_integer(3));
        assert_eq!(profile_delay(&[2; 5]).unwrap(), hi);
        let (lo, hi) = delay_loose_bounds(4, 6, &[3, 1, 2, 5]).unwrap();
        assert_eq!((lo, hi), (Rational::from_integer(1), Rational::from_integer(1)));
        // Golden instance: U- = 2, so the first set takes T = 3,3,2,2,1 and the last 1.
        let (lo, hi) = delay_loose_bounds(6, 7, &GOLDEN_T).unwrap();
        assert_eq!(lo, Rational::new(11 + 2, 12));
        assert_eq!(hi, Rational::new(5, 2));
    }

    #[test]
    fn tight_examples() {
        let (lo, hi, profile) =
            delay_tight_bounds(&IdncGraph::complete(4), &[1, 2, 3, 4], CliqueFinder::Exact).unwrap();
        assert_eq!((lo, hi), (Rational::from_integer(1), Rational::from_integer(1)));
        assert_eq!(profile, vec![10]);

        let (lo, hi, profile) =
            delay_tight_bounds(&IdncGraph::edgeless(3), &[5, 3, 1], CliqueFinder::Heuristic).unwrap();
        assert_eq!(lo, Rational::new(5 + 6 + 3, 9));
        assert_eq!(hi, lo);
        assert_eq!(profile, vec![5, 3, 1]);
    }

    #[test]
    fn golden_tight_bounds() {
        // Mutually conflicting triples: {p1,p5,p6}, {p3,p4,p5}, {p4,p5,p6}. All
        // hold a packet with T = 3, so {p1,p5,p6} wins and the profile is
        // (3 + 1+2+2, 3, 1).
        let g = IdncGraph::from_sfm(&golden_sfm());
        let (lo, hi, profile) = delay_tight_bounds(&g, &GOLDEN_T, CliqueFinder::Exact).unwrap();
        assert_eq!(lo, Rational::new(8 + 2 * 3 + 3, 12));
        assert_eq!(hi, Rational::new(22, 12));
        assert_eq!(profile, vec![5, 4, 3]);
    }

    #[test]
    fn partition_delay_can_undercut_the_optimal_solution() {
        // Two minimum collections tie on sum d_k T_k; the lexicographic pick
        // {p1,p2,p5},{p3,p4} serves (4,4) demands while the partition finds
        // {p2,p3,p5},{p1,p4} serving (5,3).
        let rows = vec![
            vec![0, 0, 0, 1, 1],
            vec![1, 0, 1, 0, 0],
            vec![0, 1, 0, 1, 0],
            vec![0, 0, 0, 0, 1],
            vec![0, 0, 1, 0, 0],
        ];
        let sfm = StateFeedbackMatrix::from_rows(&rows).unwrap();
        let g = IdncGraph::from_sfm(&sfm);
        let report = solve(&sfm, Algorithm::Optimal, Feedback::Semi, &SearchBudget::default()).unwrap();
        let (_, upper, _) = delay_tight_bounds(&g, &sfm.targets(), CliqueFinder::Exact).unwrap();
        assert_eq!(report.d_idnc, Rational::new(3, 2));
        assert_eq!(upper, Rational::new(11, 8));
    }
}
