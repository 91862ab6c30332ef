//! Receivers, packets, feedback state and the conflicts they induce.
//!
//! Packets and receivers are 0-based everywhere in the API. Text meant for
//! people (the `Display` of [`PacketSet`]) uses 1-based `p1, p2, ...` labels.

mod conflict;
mod delay;
pub mod fixtures;
pub mod io;
mod packet_set;
mod sfm;

pub use conflict::{pair_count, ConflictMatrix};
pub use delay::{classify_packet, rational_json, Decodability, DelayLedger, Rational};
pub use packet_set::{PacketSet, MAX_PACKETS};
pub use sfm::StateFeedbackMatrix;

use thiserror::Error;

/// A coding set: the packets XOR-ed together into one coded transmission.
pub type CodingSet = PacketSet;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ModelError {
    #[error("receiver row {0} has an empty Wants set")]
    EmptyRow(usize),
    #[error("packet column {0} is wanted by nobody")]
    EmptyColumn(usize),
    #[error("row {row} has {found} entries, expected {expected}")]
    RaggedRow { row: usize, expected: usize, found: usize },
    #[error("entry ({row}, {column}) is {value}, expected 0 or 1")]
    BadEntry { row: usize, column: usize, value: String },
    #[error("expected {expected} entries, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("{0} packets exceed the supported maximum of {MAX_PACKETS}")]
    TooManyPackets(usize),
    #[error("packet {packet} is out of range for {n_packets} packets")]
    PacketOutOfRange { packet: usize, n_packets: usize },
    #[error("line {line}, column {column}: {message}")]
    Parse {
        line: usize,
        column: usize,
        message: String,
    },
    #[error("receiver {receiver} never decoded packet {packet}")]
    UndecodedDemand { receiver: usize, packet: usize },
    #[error("receiver {receiver} does not want packet {packet}")]
    UnwantedDecode { receiver: usize, packet: usize },
    #[error("receiver {receiver} already decoded packet {packet}")]
    DuplicateDecode { receiver: usize, packet: usize },
    #[error("no demands to average over")]
    NoDemands,
}

#[cfg(test)]
mod tests {
    use super::fixtures::golden_sfm;
    use super::*;
    use proptest::prelude::*;

    fn arb_sfm() -> impl Strategy<Value = StateFeedbackMatrix> {
        (1usize..8, 1usize..8)
            .prop_flat_map(|(n, k)| prop::collection::vec(0u64..(1u64 << k), n).prop_map(move |r| (k, r)))
            .prop_map(|(k, rows)| {
                let lost: Vec<PacketSet> = rows.into_iter().map(PacketSet::from_bits).collect();
                StateFeedbackMatrix::reduce(k, &lost).unwrap()
            })
    }

    fn perm_strategy(len: usize) -> impl Strategy<Value = Vec<usize>> {
        Just((0..len).collect::<Vec<_>>()).prop_shuffle()
    }

    proptest! {
        #[test]
        fn conflicts_invariant_under_receiver_permutation(
            (sfm, perm) in arb_sfm().prop_flat_map(|s| { let n = s.n_receivers(); (Just(s), perm_strategy(n)) })
        ) {
            let permuted = sfm.permute_receivers(&perm);
            prop_assert_eq!(ConflictMatrix::from_sfm(&permuted), ConflictMatrix::from_sfm(&sfm));
        }

        #[test]
        fn conflicts_equivariant_under_packet_permutation(
            (sfm, perm) in arb_sfm().prop_flat_map(|s| { let k = s.n_packets(); (Just(s), perm_strategy(k)) })
        ) {
            let c = ConflictMatrix::from_sfm(&sfm);
            let cp = ConflictMatrix::from_sfm(&sfm.permute_packets(&perm));
            for i in 0..sfm.n_packets() {
                for j in 0..sfm.n_packets() {
                    prop_assert_eq!(c.conflicts(i, j), cp.conflicts(perm[i], perm[j]));
                }
            }
        }

        #[test]
        fn zero_and_one_counts_partition_the_triangle(sfm in arb_sfm()) {
            let c = ConflictMatrix::from_sfm(&sfm);
            prop_assert_eq!(c.m0() + c.ones(), pair_count(sfm.n_packets()));
        }

        #[test]
        fn wants_and_targets_share_the_same_support(sfm in arb_sfm()) {
            let t = sfm.targets();
            for (k, &tk) in t.iter().enumerate() {
                prop_assert_eq!(sfm.target_set(k).len(), tk);
                for n in sfm.target_set(k) {
                    prop_assert!(sfm.wants(n).contains(k));
                }
            }
        }
    }

    #[test]
    fn distinct_sfms_can_share_a_conflict_matrix() {
        // An extra receiver wanting an already-conflicting pair adds nothing.
        let a = golden_sfm();
        let mut rows = super::fixtures::golden_rows();
        rows.push(vec![0, 0, 0, 0, 1, 1]);
        let b = StateFeedbackMatrix::from_rows(&rows).unwrap();
        assert_ne!(a, b);
        assert_eq!(ConflictMatrix::from_sfm(&a), ConflictMatrix::from_sfm(&b));
    }
}
