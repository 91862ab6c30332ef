use std::cmp::Ordering;
use std::fmt;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

/// Largest number of packets a [`PacketSet`] can address.
pub const MAX_PACKETS: usize = 64;

/// A set of packet indices in `0..64`, stored as a single word.
///
/// Ordering is lexicographic on the ascending index sequence, so
/// `{0,1} < {0,1,2} < {0,2} < {1}`.
#[derive(Clone, Copy, Default, PartialEq, Eq, Hash)]
pub struct PacketSet(u64);

impl PacketSet {
    pub const EMPTY: PacketSet = PacketSet(0);

    #[inline]
    pub const fn from_bits(bits: u64) -> Self {
        PacketSet(bits)
    }

    #[inline]
    pub const fn bits(self) -> u64 {
        self.0
    }

    /// The set `{0, 1, ..., n-1}`.
    #[inline]
    pub const fn full(n: usize) -> Self {
        if n >= 64 {
            PacketSet(u64::MAX)
        } else {
            PacketSet((1u64 << n) - 1)
        }
    }

    #[inline]
    pub fn singleton(k: usize) -> Self {
        debug_assert!(k < MAX_PACKETS);
        PacketSet(1u64 << k)
    }

    #[inline]
    pub fn contains(self, k: usize) -> bool {
        k < MAX_PACKETS && self.0 >> k & 1 == 1
    }

    #[inline]
    pub fn insert(&mut self, k: usize) {
        debug_assert!(k < MAX_PACKETS);
        self.0 |= 1u64 << k;
    }

    #[inline]
    pub fn remove(&mut self, k: usize) {
        if k < MAX_PACKETS {
            self.0 &= !(1u64 << k);
        }
    }

    #[inline]
    pub const fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    #[inline]
    pub const fn is_empty(self) -> bool {
        self.0 == 0
    }

    #[inline]
    pub const fn union(self, other: PacketSet) -> PacketSet {
        PacketSet(self.0 | other.0)
    }

    #[inline]
    pub const fn intersection(self, other: PacketSet) -> PacketSet {
        PacketSet(self.0 & other.0)
    }

    #[inline]
    pub const fn difference(self, other: PacketSet) -> PacketSet {
        PacketSet(self.0 & !other.0)
    }

    #[inline]
    pub const fn is_subset(self, other: PacketSet) -> bool {
        self.0 & !other.0 == 0
    }

    #[inline]
    pub const fn is_disjoint(self, other: PacketSet) -> bool {
        self.0 & other.0 == 0
    }

    /// Smallest member.
    #[inline]
    pub fn first(self) -> Option<usize> {
        (self.0 != 0).then(|| self.0.trailing_zeros() as usize)
    }

    /// Largest member.
    #[inline]
    pub fn last(self) -> Option<usize> {
        (self.0 != 0).then(|| 63 - self.0.leading_zeros() as usize)
    }

    /// Members in ascending order.
    #[inline]
    pub fn iter(self) -> Iter {
        Iter(self.0)
    }

    pub fn to_vec(self) -> Vec<usize> {
        self.iter().collect()
    }
}

impl FromIterator<usize> for PacketSet {
    fn from_iter<I: IntoIterator<Item = usize>>(iter: I) -> Self {
        let mut s = PacketSet::EMPTY;
        for k in iter {
            s.insert(k);
        }
        s
    }
}

impl IntoIterator for PacketSet {
    type Item = usize;
    type IntoIter = Iter;

    fn into_iter(self) -> Iter {
        self.iter()
    }
}

pub struct Iter(u64);

impl Iterator for Iter {
    type Item = usize;

    #[inline]
    fn next(&mut self) -> Option<usize> {
        if self.0 == 0 {
            return None;
        }
        let k = self.0.trailing_zeros() as usize;
        self.0 &= self.0 - 1;
        Some(k)
    }

    fn size_hint(&self) -> (usize, Option<usize>) {
        let n = self.0.count_ones() as usize;
        (n, Some(n))
    }
}

impl ExactSizeIterator for Iter {}

impl Ord for PacketSet {
    fn cmp(&self, other: &Self) -> Ordering {
        let diff = self.0 ^ other.0;
        if diff == 0 {
            return Ordering::Equal;
        }
        // Both sequences agree below the lowest differing index `d`.
        let d = diff.trailing_zeros();
        let above = if d == 63 { 0 } else { u64::MAX << (d + 1) };
        if self.0 >> d & 1 == 1 {
            // self continues with d; other continues with something larger or ends.
            if other.0 & above != 0 {
                Ordering::Less
            } else {
                Ordering::Greater
            }
        } else if self.0 & above != 0 {
            Ordering::Greater
        } else {
            Ordering::Less
        }
    }
}

impl PartialOrd for PacketSet {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for PacketSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}

/// 1-based packet labels, matching how packets are named in reports (`{p1,p2}`).
impl fmt::Display for PacketSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        for (i, k) in self.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "p{}", k + 1)?;
        }
        f.write_str("}")
    }
}

/// Serialized as the ascending list of 0-based indices.
impl Serialize for PacketSet {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_seq(self.iter())
    }
}

impl<'de> Deserialize<'de> for PacketSet {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let v = Vec::<usize>::deserialize(deserializer)?;
        if let Some(&k) = v.iter().find(|&&k| k >= MAX_PACKETS) {
            return Err(serde::de::Error::custom(format!(
                "packet index {k} exceeds the {MAX_PACKETS}-packet limit"
            )));
        }
        Ok(v.into_iter().collect())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn set(v: &[usize]) -> PacketSet {
        v.iter().copied().collect()
    }

    #[test]
    fn basic_ops() {
        let a = set(&[0, 3, 5]);
        assert_eq!(a.len(), 3);
        assert!(a.contains(3));
        assert!(!a.contains(4));
        assert!(!a.contains(200));
        assert_eq!(a.first(), Some(0));
        assert_eq!(a.last(), Some(5));
        assert_eq!(a.to_vec(), vec![0, 3, 5]);
        assert_eq!(PacketSet::full(64).len(), 64);
        assert_eq!(PacketSet::full(3), set(&[0, 1, 2]));
        assert_eq!(format!("{}", set(&[0, 4])), "{p1,p5}");
    }

    #[test]
    fn lexicographic_examples() {
        assert!(set(&[0, 1]) < set(&[0, 1, 2]));
        assert!(set(&[0, 1, 2]) < set(&[0, 2]));
        assert!(set(&[0, 2]) < set(&[1]));
        assert!(set(&[0, 1, 2]) < set(&[0, 1, 3]));
        assert!(PacketSet::EMPTY < set(&[63]));
        assert!(set(&[62]) < set(&[62, 63]));
    }

    proptest! {
        #[test]
        fn order_matches_sorted_vectors(a in any::<u64>(), b in any::<u64>()) {
            let (x, y) = (PacketSet::from_bits(a), PacketSet::from_bits(b));
            prop_assert_eq!(x.cmp(&y), x.to_vec().cmp(&y.to_vec()));
        }

        #[test]
        fn serde_round_trip(a in any::<u64>()) {
            let s = PacketSet::from_bits(a);
            let json = serde_json::to_string(&s).unwrap();
            prop_assert_eq!(serde_json::from_str::<PacketSet>(&json).unwrap(), s);
        }
    }
}
