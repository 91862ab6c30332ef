use super::{ModelError, PacketSet, StateFeedbackMatrix, MAX_PACKETS};

/// Pairwise packet conflicts, stored as the strict upper triangle.
///
/// `conflicts(i, j)` holds iff some receiver wants both `i` and `j`; such
/// packets can never share a coding set.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ConflictMatrix {
    n_packets: usize,
    entries: Vec<bool>,
}

/// Number of unordered pairs over `k` packets.
pub const fn pair_count(k: usize) -> usize {
    k * k.saturating_sub(1) / 2
}

impl ConflictMatrix {
    /// All-zero matrix: no two packets conflict.
    pub fn new(n_packets: usize) -> Result<Self, ModelError> {
        if n_packets > MAX_PACKETS {
            return Err(ModelError::TooManyPackets(n_packets));
        }
        Ok(ConflictMatrix {
            n_packets,
            entries: vec![false; pair_count(n_packets)],
        })
    }

    /// From the triangle in row-major order `(0,1), (0,2), ..., (1,2), ...`.
    pub fn from_entries(n_packets: usize, entries: Vec<bool>) -> Result<Self, ModelError> {
        if n_packets > MAX_PACKETS {
            return Err(ModelError::TooManyPackets(n_packets));
        }
        if entries.len() != pair_count(n_packets) {
            return Err(ModelError::DimensionMismatch {
                expected: pair_count(n_packets),
                found: entries.len(),
            });
        }
        Ok(ConflictMatrix { n_packets, entries })
    }

    /// Marks every pair jointly wanted by some receiver.
    pub fn from_sfm(sfm: &StateFeedbackMatrix) -> Self {
        let k = sfm.n_packets();
        let mut c = ConflictMatrix {
            n_packets: k,
            entries: vec![false; pair_count(k)],
        };
        for w in sfm.wants_sets() {
            let members = w.to_vec();
            for (a, &i) in members.iter().enumerate() {
                for &j in &members[a + 1..] {
                    c.set(i, j, true);
                }
            }
        }
        c
    }

    pub fn n_packets(&self) -> usize {
        self.n_packets
    }

    pub fn entries(&self) -> &[bool] {
        &self.entries
    }

    /// Position of the unordered pair `{i, j}` in the triangle.
    pub fn index(&self, i: usize, j: usize) -> usize {
        let (i, j) = if i < j { (i, j) } else { (j, i) };
        debug_assert!(i != j && j < self.n_packets);
        i * (2 * self.n_packets - i - 1) / 2 + (j - i - 1)
    }

    /// Inverse of [`index`](Self::index).
    pub fn pair(&self, mut idx: usize) -> (usize, usize) {
        let k = self.n_packets;
        for i in 0..k {
            let row = k - i - 1;
            if idx < row {
                return (i, i + 1 + idx);
            }
            idx -= row;
        }
        panic!("pair index out of range");
    }

    /// Whether `i` and `j` conflict. The diagonal is always `false`.
    pub fn conflicts(&self, i: usize, j: usize) -> bool {
        i != j && self.entries[self.index(i, j)]
    }

    pub fn set(&mut self, i: usize, j: usize, conflict: bool) {
        let idx = self.index(i, j);
        self.entries[idx] = conflict;
    }

    /// Number of zero entries, `M_0`.
    pub fn m0(&self) -> usize {
        self.entries.iter().filter(|&&c| !c).count()
    }

    /// Number of conflicting pairs.
    pub fn ones(&self) -> usize {
        self.entries.iter().filter(|&&c| c).count()
    }

    /// Conflicting pairs `(i, j)` with `i < j`, in triangle order.
    pub fn conflict_pairs(&self) -> Vec<(usize, usize)> {
        self.entries
            .iter()
            .enumerate()
            .filter(|(_, &c)| c)
            .map(|(idx, _)| self.pair(idx))
            .collect()
    }

    /// Packets conflicting with `i`.
    pub fn conflicts_of(&self, i: usize) -> PacketSet {
        (0..self.n_packets).filter(|&j| self.conflicts(i, j)).collect()
    }
}
