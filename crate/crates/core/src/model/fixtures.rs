//! Small reference instances used by tests, docs and the CLI smoke checks.

use super::{PacketSet, StateFeedbackMatrix};

/// The six-packet, five-receiver feedback matrix used throughout the
/// worked examples: R1 {p1,p5,p6}, R2 {p2,p6}, R3 {p3,p4,p5}, R4 {p4,p6},
/// R5 {p3,p5}.
pub fn golden_sfm() -> StateFeedbackMatrix {
    StateFeedbackMatrix::from_rows(&golden_rows()).expect("fixture is valid")
}

pub fn golden_rows() -> Vec<Vec<u8>> {
    vec![
        vec![1, 0, 0, 0, 1, 1],
        vec![0, 1, 0, 0, 0, 1],
        vec![0, 0, 1, 1, 1, 0],
        vec![0, 0, 0, 1, 0, 1],
        vec![0, 0, 1, 0, 1, 0],
    ]
}

/// Conflicting pairs of [`golden_sfm`], 1-based.
pub fn golden_conflicts_one_based() -> Vec<(usize, usize)> {
    vec![(1, 5), (1, 6), (2, 6), (3, 4), (3, 5), (4, 5), (4, 6), (5, 6)]
}

/// Maximal coding sets of [`golden_sfm`] (0-based).
pub fn golden_maximal_sets() -> Vec<PacketSet> {
    [vec![0, 1, 2], vec![0, 1, 3], vec![1, 4], vec![2, 5]]
        .into_iter()
        .map(|v| v.into_iter().collect())
        .collect()
}

/// Decoding slots after sending p1+p2, p3+p6, p4, p5 without erasures.
pub fn golden_slots() -> Vec<Vec<u64>> {
    vec![
        vec![1, 0, 0, 0, 4, 2],
        vec![0, 1, 0, 0, 0, 2],
        vec![0, 0, 2, 3, 4, 0],
        vec![0, 0, 0, 3, 0, 2],
        vec![0, 0, 2, 0, 4, 0],
    ]
}

/// The five maximal coding sets of the branching walk-through instance
/// (0-based): {p1,p3}, {p2,p3,p5}, {p3,p4}, {p4,p6}, {p5,p6}.
pub fn five_set_list() -> Vec<PacketSet> {
    [vec![0, 2], vec![1, 2, 4], vec![2, 3], vec![3, 5], vec![4, 5]]
        .into_iter()
        .map(|v| v.into_iter().collect())
        .collect()
}
