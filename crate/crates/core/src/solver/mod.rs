//! IDNC solutions: minimum collections, greedy coders, ordering and the
//! erasure-free decoding delay.

mod collection;
mod greedy;
mod optimal;
mod order;

pub use collection::Collection;
pub use greedy::{heuristic_semi_online, hybrid_greedy_collection, partition_fg};
pub use optimal::{optimal_minimum_collections, optimal_minimum_collections_with};
pub use order::{d_idnc, first_slots, order_collection, residual_profile, select_collection};

use std::fmt;
use std::str::FromStr;

use serde::{Serialize, Serializer};
use thiserror::Error;

use crate::cliques::{enumerate_maximal_cliques, heuristic_max_clique, CliqueError, IdncGraph};
use crate::model::{rational_json, CodingSet, Rational, StateFeedbackMatrix};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SolverError {
    #[error("no maximal coding sets were supplied")]
    EmptyCliqueList,
    #[error("packet {packet} is not covered by any set")]
    Uncoverable { packet: usize },
    #[error("optimal search exceeded its budget of {limit} candidates")]
    BudgetExceeded { limit: usize },
    #[error("no candidate collections to select from")]
    NoCandidates,
    #[error("the instance has no outstanding demands")]
    NoDemands,
    #[error(transparent)]
    Clique(#[from] CliqueError),
}

/// Cap on the optimal search: distinct covered-packet states, and separately
/// the paths walked when reading the minimum collections back.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SearchBudget {
    pub max_candidates: usize,
}

impl SearchBudget {
    pub const DEFAULT_CANDIDATES: usize = 1_000_000;
}

impl Default for SearchBudget {
    fn default() -> Self {
        SearchBudget {
            max_candidates: Self::DEFAULT_CANDIDATES,
        }
    }
}

/// How the coding sets are found.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Algorithm {
    /// Minimum collections, best by `sum d_k T_k`.
    Optimal,
    /// Greedy cover over the maximal coding sets.
    Hybrid,
    /// Greedy clique partition with diversity enlargement.
    Heuristic,
}

/// When the sender hears back from the receivers.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Feedback {
    /// After a whole collection has been sent.
    Semi,
    /// After every slot.
    Fully,
}

/// A transmission scheme: one of the six IDNC combinations or the RLNC baseline.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Scheme {
    Idnc { algorithm: Algorithm, feedback: Feedback },
    Rlnc,
}

impl Scheme {
    pub const ALL: [Scheme; 7] = [
        Scheme::Idnc {
            algorithm: Algorithm::Optimal,
            feedback: Feedback::Fully,
        },
        Scheme::Idnc {
            algorithm: Algorithm::Optimal,
            feedback: Feedback::Semi,
        },
        Scheme::Idnc {
            algorithm: Algorithm::Hybrid,
            feedback: Feedback::Fully,
        },
        Scheme::Idnc {
            algorithm: Algorithm::Hybrid,
            feedback: Feedback::Semi,
        },
        Scheme::Idnc {
            algorithm: Algorithm::Heuristic,
            feedback: Feedback::Fully,
        },
        Scheme::Idnc {
            algorithm: Algorithm::Heuristic,
            feedback: Feedback::Semi,
        },
        Scheme::Rlnc,
    ];
}

impl fmt::Display for Algorithm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Algorithm::Optimal => "optimal",
            Algorithm::Hybrid => "hybrid",
            Algorithm::Heuristic => "heuristic",
        })
    }
}

impl fmt::Display for Feedback {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Feedback::Semi => "semi",
            Feedback::Fully => "fully",
        })
    }
}

impl fmt::Display for Scheme {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Scheme::Idnc { algorithm, feedback } => write!(f, "{algorithm}-{feedback}"),
            Scheme::Rlnc => f.write_str("rlnc"),
        }
    }
}

impl FromStr for Algorithm {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "optimal" => Ok(Algorithm::Optimal),
            "hybrid" => Ok(Algorithm::Hybrid),
            "heuristic" => Ok(Algorithm::Heuristic),
            _ => Err(format!(
                "unknown algorithm `{s}` (expected optimal, hybrid or heuristic)"
            )),
        }
    }
}

impl FromStr for Feedback {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "semi" => Ok(Feedback::Semi),
            "fully" => Ok(Feedback::Fully),
            _ => Err(format!("unknown feedback mode `{s}` (expected semi or fully)")),
        }
    }
}

impl FromStr for Scheme {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        if s == "rlnc" {
            return Ok(Scheme::Rlnc);
        }
        let (a, f) = s
            .split_once('-')
            .ok_or_else(|| format!("unknown scheme `{s}` (expected e.g. optimal-semi or rlnc)"))?;
        Ok(Scheme::Idnc {
            algorithm: a.parse()?,
            feedback: f.parse()?,
        })
    }
}

macro_rules! serialize_as_display {
    ($($t:ty),*) => {$(
        impl Serialize for $t {
            fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
                s.collect_str(self)
            }
        }
    )*};
}
serialize_as_display!(Algorithm, Feedback, Scheme);

/// A solved instance.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SolveReport {
    pub algorithm: Algorithm,
    pub feedback: Feedback,
    /// The ordered collection one round of transmission would send.
    pub collection: Collection,
    pub u_idnc: usize,
    #[serde(with = "rational_json")]
    pub d_idnc: Rational,
    pub per_packet_first_slot: Vec<usize>,
    /// The set sent in the next slot; under semi-online feedback this is the
    /// first set of the collection.
    pub next: CodingSet,
}

/// The unordered collection `algorithm` produces for `sfm`.
pub fn raw_collection(
    sfm: &StateFeedbackMatrix,
    algorithm: Algorithm,
    budget: &SearchBudget,
) -> Result<Collection, SolverError> {
    if sfm.is_empty() {
        return Err(SolverError::NoDemands);
    }
    let g = IdncGraph::from_sfm(sfm);
    let k = sfm.n_packets();
    match algorithm {
        Algorithm::Optimal => {
            let all = enumerate_maximal_cliques(&g)?;
            let candidates = optimal_minimum_collections_with(&all, k, budget)?;
            select_collection(&candidates, &sfm.targets())
        }
        Algorithm::Hybrid => hybrid_greedy_collection(&enumerate_maximal_cliques(&g)?, k),
        Algorithm::Heuristic => Ok(heuristic_semi_online(&g)),
    }
}

/// Solves `sfm` and orders the result for transmission.
pub fn solve(
    sfm: &StateFeedbackMatrix,
    algorithm: Algorithm,
    feedback: Feedback,
    budget: &SearchBudget,
) -> Result<SolveReport, SolverError> {
    let targets = sfm.targets();
    let collection = order_collection(&raw_collection(sfm, algorithm, budget)?, &targets);
    let next = match (algorithm, feedback) {
        (Algorithm::Heuristic, Feedback::Fully) => heuristic_max_clique(&IdncGraph::from_sfm(sfm)),
        _ => collection.sets()[0],
    };
    Ok(SolveReport {
        algorithm,
        feedback,
        u_idnc: collection.len(),
        d_idnc: d_idnc(&collection, &targets)?,
        per_packet_first_slot: first_slots(&collection)?,
        collection,
        next,
    })
}

/// The single set a fully-online sender transmits for `sfm`.
pub fn next_set(
    sfm: &StateFeedbackMatrix,
    algorithm: Algorithm,
    budget: &SearchBudget,
) -> Result<CodingSet, SolverError> {
    match algorithm {
        Algorithm::Heuristic => {
            if sfm.is_empty() {
                return Err(SolverError::NoDemands);
            }
            Ok(heuristic_max_clique(&IdncGraph::from_sfm(sfm)))
        }
        _ => {
            let c = order_collection(&raw_collection(sfm, algorithm, budget)?, &sfm.targets());
            Ok(c.sets()[0])
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cliques::{chromatic_number, maximal_cliques_within, CliqueFinder};
    use crate::model::fixtures::golden_sfm;
    use crate::model::PacketSet;
    use proptest::prelude::*;

    fn set(v: &[usize]) -> PacketSet {
        v.iter().copied().collect()
    }

    fn sfm_from_bits(n: usize, k: usize, bits: &[bool]) -> StateFeedbackMatrix {
        let lost: Vec<PacketSet> = (0..n).map(|r| (0..k).filter(|&c| bits[r * k + c]).collect()).collect();
        StateFeedbackMatrix::reduce(k, &lost).unwrap()
    }

    #[test]
    fn scheme_names_round_trip() {
        for s in Scheme::ALL {
            assert_eq!(s.to_string().parse::<Scheme>().unwrap(), s);
        }
        assert_eq!(Scheme::ALL[0].to_string(), "optimal-fully");
        assert!("optimal".parse::<Scheme>().is_err());
        assert!("greedy-semi".parse::<Scheme>().is_err());
    }

    #[test]
    fn golden_optimal_report() {
        let r = solve(
            &golden_sfm(),
            Algorithm::Optimal,
            Feedback::Semi,
            &SearchBudget::default(),
        )
        .unwrap();
        assert_eq!(r.u_idnc, 3);
        assert_eq!(r.collection.sets(), &[set(&[2, 5]), set(&[0, 1, 3]), set(&[1, 4])]);
        assert_eq!(r.d_idnc, Rational::new(22, 12));
        assert_eq!(r.per_packet_first_slot, vec![2, 2, 1, 2, 3, 1]);
        assert_eq!(r.next, set(&[2, 5]));
        let json = serde_json::to_value(&r).unwrap();
        assert_eq!(json["algorithm"], "optimal");
        assert_eq!(json["d_idnc"]["num"], 11);
    }

    #[test]
    fn golden_all_algorithms_use_three_sets() {
        for algorithm in [Algorithm::Optimal, Algorithm::Hybrid, Algorithm::Heuristic] {
            let r = solve(&golden_sfm(), algorithm, Feedback::Fully, &SearchBudget::default()).unwrap();
            assert_eq!(r.u_idnc, 3, "{algorithm}");
        }
        let h = solve(
            &golden_sfm(),
            Algorithm::Heuristic,
            Feedback::Fully,
            &SearchBudget::default(),
        )
        .unwrap();
        assert_eq!(h.next, set(&[0, 1, 3]));
    }

    #[test]
    fn empty_instance_has_nothing_to_solve() {
        let empty = StateFeedbackMatrix::empty();
        for algorithm in [Algorithm::Optimal, Algorithm::Hybrid, Algorithm::Heuristic] {
            assert_eq!(
                solve(&empty, algorithm, Feedback::Semi, &SearchBudget::default()),
                Err(SolverError::NoDemands)
            );
            assert_eq!(
                next_set(&empty, algorithm, &SearchBudget::default()),
                Err(SolverError::NoDemands)
            );
        }
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(128))]

        /// Minimum collection size is the chromatic number of the complement,
        /// and removing a set of the collection lowers it by exactly one while
        /// removing a maximal set outside every minimum collection does not.
        #[test]
        fn collection_size_is_complement_chromatic_number(
            n in 1usize..9, k in 1usize..9, bits in prop::collection::vec(prop::bool::weighted(0.4), 64)
        ) {
            let sfm = sfm_from_bits(n, k, &bits);
            prop_assume!(!sfm.is_empty());
            let g = IdncGraph::from_sfm(&sfm);
            let all = enumerate_maximal_cliques(&g).unwrap();
            let mins = optimal_minimum_collections(&all, sfm.n_packets()).unwrap();
            let u = mins[0].len();
            prop_assert!(mins.iter().all(|c| c.len() == u && c.satisfies_diversity()));
            prop_assert_eq!(u, chromatic_number(&g.complement()).unwrap());

            for m in &all {
                let rest = g.induced(g.vertices().difference(*m));
                let chi = chromatic_number(&rest.complement()).unwrap();
                let in_some = mins.iter().any(|c| c.sets().contains(m));
                prop_assert_eq!(chi, if in_some { u - 1 } else { u });
            }

            let hybrid = hybrid_greedy_collection(&all, sfm.n_packets()).unwrap();
            let heuristic = heuristic_semi_online(&g);
            let upper = partition_fg(&g, CliqueFinder::Heuristic).unwrap();
            prop_assert!(hybrid.len() >= u && heuristic.len() >= u);
            prop_assert!(heuristic.len() <= upper.len());
            prop_assert!(heuristic.satisfies_diversity());

            // Every minimum collection is found: brute force over subsets of 𝒜.
            if all.len() <= 12 {
                let mut brute: Vec<Collection> = (1u32..(1 << all.len()))
                    .filter(|m| m.count_ones() as usize == u)
                    .map(|m| Collection::new((0..all.len()).filter(|i| m >> i & 1 == 1).map(|i| all[i]).collect(), sfm.n_packets()))
                    .filter(|c| c.satisfies_diversity())
                    .collect();
                brute.sort_unstable_by(|a, b| a.sets().cmp(b.sets()));
                prop_assert_eq!(&mins, &brute);
            }
            prop_assert_eq!(maximal_cliques_within(&g, g.vertices()), all);
        }

        /// Greedy residual ordering never loses to sorting by static demand.
        #[test]
        fn greedy_order_beats_static_order(
            n in 1usize..9, k in 1usize..9, bits in prop::collection::vec(prop::bool::weighted(0.4), 64)
        ) {
            let sfm = sfm_from_bits(n, k, &bits);
            prop_assume!(!sfm.is_empty());
            let t = sfm.targets();
            let all = enumerate_maximal_cliques(&IdncGraph::from_sfm(&sfm)).unwrap();
            for c in optimal_minimum_collections(&all, sfm.n_packets()).unwrap() {
                let mut by_static = c.sets().to_vec();
                by_static.sort_by_key(|s| std::cmp::Reverse(s.iter().map(|k| t[k]).sum::<usize>()));
                let by_static = Collection::new(by_static, c.n_packets());
                prop_assert!(d_idnc(&order_collection(&c, &t), &t).unwrap() <= d_idnc(&by_static, &t).unwrap());
            }
        }
    }
}
