use super::{ModelError, PacketSet, MAX_PACKETS};

/// Receiver-by-packet demand matrix left after the systematic phase.
///
/// Row `n` is the Wants set of receiver `n`; column `k` is the Target set of
/// packet `k`. Every row and every column is non-empty. The original
/// (pre-reduction) receiver and packet indices are kept so that solutions
/// computed on the reduced matrix can be mapped back to the full session.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct StateFeedbackMatrix {
    n_packets: usize,
    wants: Vec<PacketSet>,
    receiver_ids: Vec<usize>,
    packet_ids: Vec<usize>,
}

impl StateFeedbackMatrix {
    /// An SFM with no outstanding demands (the session is complete).
    pub fn empty() -> Self {
        StateFeedbackMatrix {
            n_packets: 0,
            wants: Vec::new(),
            receiver_ids: Vec::new(),
            packet_ids: Vec::new(),
        }
    }

    /// Builds an SFM from already-reduced Wants sets, rejecting empty rows or
    /// columns.
    pub fn from_wants(n_packets: usize, wants: Vec<PacketSet>) -> Result<Self, ModelError> {
        if n_packets > MAX_PACKETS {
            return Err(ModelError::TooManyPackets(n_packets));
        }
        let universe = PacketSet::full(n_packets);
        let mut covered = PacketSet::EMPTY;
        for (n, w) in wants.iter().enumerate() {
            if w.is_empty() {
                return Err(ModelError::EmptyRow(n));
            }
            if !w.is_subset(universe) {
                return Err(ModelError::PacketOutOfRange {
                    packet: w.difference(universe).first().unwrap_or(0),
                    n_packets,
                });
            }
            covered = covered.union(*w);
        }
        if let Some(k) = universe.difference(covered).first() {
            return Err(ModelError::EmptyColumn(k));
        }
        Ok(StateFeedbackMatrix {
            n_packets,
            receiver_ids: (0..wants.len()).collect(),
            packet_ids: (0..n_packets).collect(),
            wants,
        })
    }

    /// Builds an SFM from 0/1 rows, rejecting empty rows or columns.
    pub fn from_rows(rows: &[Vec<u8>]) -> Result<Self, ModelError> {
        let (n_packets, wants) = parse_rows(rows)?;
        Self::from_wants(n_packets, wants)
    }

    /// Reduces a full `N_T x K_T` loss pattern to the demand matrix: receivers
    /// with nothing missing and packets nobody is missing are dropped, and the
    /// surviving packets are renumbered densely in their original order.
    pub fn reduce(k_total: usize, lost: &[PacketSet]) -> Result<Self, ModelError> {
        if k_total > MAX_PACKETS {
            return Err(ModelError::TooManyPackets(k_total));
        }
        let universe = PacketSet::full(k_total);
        let mut present = PacketSet::EMPTY;
        for l in lost {
            if !l.is_subset(universe) {
                return Err(ModelError::PacketOutOfRange {
                    packet: l.difference(universe).first().unwrap_or(0),
                    n_packets: k_total,
                });
            }
            present = present.union(*l);
        }
        let packet_ids: Vec<usize> = present.to_vec();
        let mut dense = [usize::MAX; MAX_PACKETS];
        for (new, &old) in packet_ids.iter().enumerate() {
            dense[old] = new;
        }
        let mut wants = Vec::new();
        let mut receiver_ids = Vec::new();
        for (n, l) in lost.iter().enumerate() {
            if l.is_empty() {
                continue;
            }
            receiver_ids.push(n);
            wants.push(l.iter().map(|k| dense[k]).collect());
        }
        Ok(StateFeedbackMatrix {
            n_packets: packet_ids.len(),
            wants,
            receiver_ids,
            packet_ids,
        })
    }

    /// Reduces a 0/1 row matrix that may contain empty rows or columns.
    pub fn reduce_rows(rows: &[Vec<u8>]) -> Result<Self, ModelError> {
        let (n_packets, wants) = parse_rows(rows)?;
        Self::reduce(n_packets, &wants)
    }

    pub fn n_receivers(&self) -> usize {
        self.wants.len()
    }

    pub fn n_packets(&self) -> usize {
        self.n_packets
    }

    pub fn is_empty(&self) -> bool {
        self.wants.is_empty()
    }

    /// Wants set of receiver `n`.
    pub fn wants(&self, n: usize) -> PacketSet {
        self.wants[n]
    }

    pub fn wants_sets(&self) -> &[PacketSet] {
        &self.wants
    }

    pub fn entry(&self, n: usize, k: usize) -> bool {
        self.wants[n].contains(k)
    }

    /// Receivers in the Target set of packet `k`.
    pub fn target_set(&self, k: usize) -> Vec<usize> {
        (0..self.wants.len()).filter(|&n| self.wants[n].contains(k)).collect()
    }

    /// Target set sizes `T_k`.
    pub fn targets(&self) -> Vec<usize> {
        let mut t = vec![0; self.n_packets];
        for w in &self.wants {
            for k in w.iter() {
                t[k] += 1;
            }
        }
        t
    }

    /// Total number of outstanding (receiver, packet) demands.
    pub fn total_demands(&self) -> usize {
        self.wants.iter().map(|w| w.len()).sum()
    }

    /// Original index of each retained receiver.
    pub fn receiver_ids(&self) -> &[usize] {
        &self.receiver_ids
    }

    /// Original index of each retained packet.
    pub fn packet_ids(&self) -> &[usize] {
        &self.packet_ids
    }

    /// Maps a set of reduced packet indices back to original packet indices.
    pub fn to_original(&self, set: PacketSet) -> PacketSet {
        set.iter().map(|k| self.packet_ids[k]).collect()
    }

    /// 0/1 rows of the reduced matrix.
    pub fn rows(&self) -> Vec<Vec<u8>> {
        self.wants
            .iter()
            .map(|w| (0..self.n_packets).map(|k| w.contains(k) as u8).collect())
            .collect()
    }

    /// Same demands with receivers permuted: row `i` of the result is row
    /// `perm[i]` of `self`.
    pub fn permute_receivers(&self, perm: &[usize]) -> Self {
        StateFeedbackMatrix {
            n_packets: self.n_packets,
            wants: perm.iter().map(|&i| self.wants[i]).collect(),
            receiver_ids: perm.iter().map(|&i| self.receiver_ids[i]).collect(),
            packet_ids: self.packet_ids.clone(),
        }
    }

    /// Same demands with packets relabelled: packet `k` becomes `perm[k]`.
    pub fn permute_packets(&self, perm: &[usize]) -> Self {
        let mut packet_ids = vec![0; self.n_packets];
        for (k, &to) in perm.iter().enumerate() {
            packet_ids[to] = self.packet_ids[k];
        }
        StateFeedbackMatrix {
            n_packets: self.n_packets,
            wants: self.wants.iter().map(|w| w.iter().map(|k| perm[k]).collect()).collect(),
            receiver_ids: self.receiver_ids.clone(),
            packet_ids,
        }
    }
}

fn parse_rows(rows: &[Vec<u8>]) -> Result<(usize, Vec<PacketSet>), ModelError> {
    let n_packets = rows.first().map_or(0, Vec::len);
    if n_packets > MAX_PACKETS {
        return Err(ModelError::TooManyPackets(n_packets));
    }
    let mut wants = Vec::with_capacity(rows.len());
    for (n, row) in rows.iter().enumerate() {
        if row.len() != n_packets {
            return Err(ModelError::RaggedRow {
                row: n,
                expected: n_packets,
                found: row.len(),
            });
        }
        let mut w = PacketSet::EMPTY;
        for (k, &v) in row.iter().enumerate() {
            match v {
                0 => {}
                1 => w.insert(k),
                other => {
                    return Err(ModelError::BadEntry {
                        row: n,
                        column: k,
                        value: other.to_string(),
                    })
                }
            }
        }
        wants.push(w);
    }
    Ok((n_packets, wants))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::fixtures::golden_sfm;

    #[test]
    fn golden_wants_and_targets() {
        let sfm = golden_sfm();
        assert_eq!(sfm.n_receivers(), 5);
        assert_eq!(sfm.n_packets(), 6);
        // R1 wants {p1,p5,p6}; T_3 = {R3,R5}.
        assert_eq!(sfm.wants(0).to_vec(), vec![0, 4, 5]);
        assert_eq!(sfm.target_set(2), vec![2, 4]);
        assert_eq!(sfm.targets(), vec![1, 1, 2, 2, 3, 3]);
        assert_eq!(sfm.total_demands(), 12);
    }

    #[test]
    fn rejects_empty_row_and_column() {
        assert_eq!(
            StateFeedbackMatrix::from_rows(&[vec![1, 0], vec![0, 0]]),
            Err(ModelError::EmptyRow(1))
        );
        assert_eq!(
            StateFeedbackMatrix::from_rows(&[vec![1, 0], vec![1, 0]]),
            Err(ModelError::EmptyColumn(1))
        );
        assert!(matches!(
            StateFeedbackMatrix::from_rows(&[vec![1, 0], vec![1]]),
            Err(ModelError::RaggedRow { row: 1, .. })
        ));
        assert!(matches!(
            StateFeedbackMatrix::from_rows(&[vec![1, 2]]),
            Err(ModelError::BadEntry { row: 0, column: 1, .. })
        ));
    }

    #[test]
    fn reduction_drops_and_renumbers() {
        let rows = vec![vec![0, 0, 0, 0], vec![0, 1, 0, 1], vec![0, 0, 0, 1]];
        let sfm = StateFeedbackMatrix::reduce_rows(&rows).unwrap();
        assert_eq!(sfm.n_receivers(), 2);
        assert_eq!(sfm.n_packets(), 2);
        assert_eq!(sfm.receiver_ids(), &[1, 2]);
        assert_eq!(sfm.packet_ids(), &[1, 3]);
        assert_eq!(sfm.rows(), vec![vec![1, 1], vec![0, 1]]);
        let s: PacketSet = [0usize, 1].into_iter().collect();
        assert_eq!(sfm.to_original(s).to_vec(), vec![1, 3]);
    }

    #[test]
    fn all_zero_reduces_to_empty() {
        let sfm = StateFeedbackMatrix::reduce_rows(&[vec![0, 0], vec![0, 0]]).unwrap();
        assert!(sfm.is_empty());
        assert_eq!(sfm.n_packets(), 0);
        assert_eq!(sfm, StateFeedbackMatrix::empty());
    }
}
