use serde::{Serialize, Serializer};

use crate::model::{CodingSet, PacketSet};

/// An ordered list of coding sets meant to be sent one per slot.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Collection {
    sets: Vec<CodingSet>,
    n_packets: usize,
}

impl Collection {
    pub fn new(sets: Vec<CodingSet>, n_packets: usize) -> Self {
        Collection { sets, n_packets }
    }

    pub fn sets(&self) -> &[CodingSet] {
        &self.sets
    }

    pub fn into_sets(self) -> Vec<CodingSet> {
        self.sets
    }

    pub fn len(&self) -> usize {
        self.sets.len()
    }

    pub fn is_empty(&self) -> bool {
        self.sets.is_empty()
    }

    pub fn n_packets(&self) -> usize {
        self.n_packets
    }

    /// `d_k`: how many sets contain packet `k`.
    pub fn diversity(&self) -> Vec<usize> {
        let mut d = vec![0; self.n_packets];
        for s in &self.sets {
            for k in s.iter() {
                d[k] += 1;
            }
        }
        d
    }

    pub fn covered(&self) -> PacketSet {
        self.sets.iter().fold(PacketSet::EMPTY, |acc, s| acc.union(*s))
    }

    /// Every packet appears in at least one set.
    pub fn satisfies_diversity(&self) -> bool {
        self.covered() == PacketSet::full(self.n_packets)
    }

    /// First packet with diversity zero.
    pub fn first_uncovered(&self) -> Option<usize> {
        PacketSet::full(self.n_packets).difference(self.covered()).first()
    }

    /// Copy with the sets sorted lexicographically.
    pub fn canonical(&self) -> Collection {
        let mut sets = self.sets.clone();
        sets.sort_unstable();
        Collection::new(sets, self.n_packets)
    }

    /// `sum_k d_k * T_k`.
    pub fn weighted_diversity(&self, targets: &[usize]) -> usize {
        self.diversity().iter().zip(targets).map(|(d, t)| d * t).sum()
    }
}

impl Serialize for Collection {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        #[derive(Serialize)]
        struct Repr<'a> {
            sets: &'a [CodingSet],
            diversity: Vec<usize>,
        }
        Repr {
            sets: &self.sets,
            diversity: self.diversity(),
        }
        .serialize(s)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn set(v: &[usize]) -> PacketSet {
        v.iter().copied().collect()
    }

    #[test]
    fn golden_collection_diversity() {
        let c = Collection::new(vec![set(&[0, 1, 3]), set(&[1, 4]), set(&[2, 5])], 6);
        assert_eq!(c.diversity(), vec![1, 2, 1, 1, 1, 1]);
        assert!(c.satisfies_diversity());
        assert_eq!(c.weighted_diversity(&[1, 1, 2, 2, 3, 3]), 13);
        let partial = Collection::new(vec![set(&[0, 1, 3])], 6);
        assert_eq!(partial.first_uncovered(), Some(2));
        assert_eq!(
            serde_json::to_string(&partial).unwrap(),
            r#"{"sets":[[0,1,3]],"diversity":[1,1,0,1,0,0]}"#
        );
    }
}
