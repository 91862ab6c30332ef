use num_rational::Ratio;
use serde::{Deserialize, Serialize};

use super::{ModelError, PacketSet, StateFeedbackMatrix};

/// Exact ratio used for decoding-delay averages.
pub type Rational = Ratio<u64>;

/// What a coded packet means to one receiver.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Decodability {
    /// Exactly one wanted packet is in the coding set; it can be recovered by
    /// XOR-ing out the others.
    InstantlyDecodable(usize),
    /// Two or more wanted packets are mixed in; the packet is discarded.
    NonInstantlyDecodable,
    /// Nothing wanted is in the coding set.
    NonInnovative,
}

/// Classifies the XOR of `coding_set` against a receiver's Wants set.
pub fn classify_packet(coding_set: PacketSet, wants: PacketSet) -> Decodability {
    let useful = coding_set.intersection(wants);
    match useful.len() {
        0 => Decodability::NonInnovative,
        1 => Decodability::InstantlyDecodable(useful.first().unwrap()),
        _ => Decodability::NonInstantlyDecodable,
    }
}

/// Per-(receiver, packet) decoding slots in the coded phase.
///
/// A slot of 0 means "not decoded (yet)"; slots are 1-based.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DelayLedger {
    demands: Vec<PacketSet>,
    slots: Vec<Vec<u64>>,
}

impl DelayLedger {
    pub fn new(demands: Vec<PacketSet>, n_packets: usize) -> Self {
        let slots = vec![vec![0; n_packets]; demands.len()];
        DelayLedger { demands, slots }
    }

    pub fn for_sfm(sfm: &StateFeedbackMatrix) -> Self {
        Self::new(sfm.wants_sets().to_vec(), sfm.n_packets())
    }

    /// Builds a ledger from a slot table; nonzero cells are the demands.
    pub fn from_slots(slots: Vec<Vec<u64>>) -> Self {
        let demands = slots
            .iter()
            .map(|row| row.iter().enumerate().filter(|(_, &s)| s > 0).map(|(k, _)| k).collect())
            .collect();
        DelayLedger { demands, slots }
    }

    /// Records that receiver `n` decoded packet `k` in coded slot `slot`.
    pub fn record(&mut self, n: usize, k: usize, slot: u64) -> Result<(), ModelError> {
        if !self.demands[n].contains(k) {
            return Err(ModelError::UnwantedDecode { receiver: n, packet: k });
        }
        if self.slots[n][k] != 0 {
            return Err(ModelError::DuplicateDecode { receiver: n, packet: k });
        }
        self.slots[n][k] = slot;
        Ok(())
    }

    pub fn slot(&self, n: usize, k: usize) -> u64 {
        self.slots[n][k]
    }

    pub fn slots(&self) -> &[Vec<u64>] {
        &self.slots
    }

    /// `T_k` of the demands this ledger tracks.
    pub fn targets_per_packet(&self) -> Vec<usize> {
        let k = self.slots.first().map_or(0, Vec::len);
        let mut t = vec![0; k];
        for d in &self.demands {
            for p in d.iter() {
                t[p] += 1;
            }
        }
        t
    }

    pub fn total_demands(&self) -> usize {
        self.demands.iter().map(|d| d.len()).sum()
    }

    /// First demand without a recorded slot, if any.
    pub fn first_undecoded(&self) -> Option<(usize, usize)> {
        self.demands
            .iter()
            .enumerate()
            .find_map(|(n, d)| d.iter().find(|&k| self.slots[n][k] == 0).map(|k| (n, k)))
    }

    pub fn is_complete(&self) -> bool {
        self.first_undecoded().is_none()
    }

    /// Mean decoding slot over all demands: `sum(u) / sum(T_k)`.
    pub fn average_decoding_delay(&self) -> Result<Rational, ModelError> {
        if let Some((receiver, packet)) = self.first_undecoded() {
            return Err(ModelError::UndecodedDemand { receiver, packet });
        }
        let total = self.total_demands() as u64;
        if total == 0 {
            return Err(ModelError::NoDemands);
        }
        let sum: u64 = self.slots.iter().flatten().sum();
        Ok(Rational::new(sum, total))
    }
}

/// Serde adapter writing a [`Rational`] as `{"num": .., "den": .., "value": ..}`.
pub mod rational_json {
    use super::Rational;
    use serde::{Deserialize, Deserializer, Serialize, Serializer};

    #[derive(Serialize, Deserialize)]
    struct Repr {
        num: u64,
        den: u64,
        value: f64,
    }

    pub fn serialize<S: Serializer>(r: &Rational, s: S) -> Result<S::Ok, S::Error> {
        Repr {
            num: *r.numer(),
            den: *r.denom(),
            value: to_f64(*r),
        }
        .serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Rational, D::Error> {
        let r = Repr::deserialize(d)?;
        if r.den == 0 {
            return Err(serde::de::Error::custom("zero denominator"));
        }
        Ok(Rational::new(r.num, r.den))
    }

    pub fn to_f64(r: Rational) -> f64 {
        *r.numer() as f64 / *r.denom() as f64
    }

    /// Same encoding for an optional value (`null` when absent).
    pub mod option {
        use super::{Rational, Repr};
        use serde::{Deserialize, Deserializer, Serialize, Serializer};

        pub fn serialize<S: Serializer>(r: &Option<Rational>, s: S) -> Result<S::Ok, S::Error> {
            r.map(|r| Repr {
                num: *r.numer(),
                den: *r.denom(),
                value: super::to_f64(r),
            })
            .serialize(s)
        }

        pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Option<Rational>, D::Error> {
            Ok(Option::<Repr>::deserialize(d)?.map(|r| Rational::new(r.num, r.den.max(1))))
        }
    }
}
