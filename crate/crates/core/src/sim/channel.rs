use rand::{Rng, RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::{ChannelConfig, SimError};

/// Seed for substream `stream` of `seed`.
///
/// Trials draw their seeds from here, so a trial's randomness depends only
/// on the master seed and its own index, never on execution order.
pub fn derive_seed(seed: u64, stream: u64) -> u64 {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(stream);
    rng.next_u64()
}

/// Coded-phase erasures.
///
/// Every receiver owns a random stream and consumes exactly one draw per
/// coded slot, finished or not, so slot `t` of receiver `n` is erased or not
/// regardless of what was sent before. Sessions of different schemes sharing
/// a seed therefore see the same channel.
#[derive(Clone, Debug)]
pub struct ErasureChannel {
    probs: Vec<f64>,
    streams: Vec<ChaCha8Rng>,
}

impl ErasureChannel {
    pub fn new(cfg: &ChannelConfig, n_receivers: usize, seed: u64) -> Result<Self, SimError> {
        let probs = cfg.probabilities(n_receivers)?;
        let streams = (0..n_receivers)
            .map(|n| {
                let mut rng = ChaCha8Rng::seed_from_u64(seed);
                rng.set_stream(n as u64);
                rng
            })
            .collect();
        Ok(ErasureChannel { probs, streams })
    }

    pub fn n_receivers(&self) -> usize {
        self.probs.len()
    }

    /// Which receivers lose the next coded packet.
    pub fn next_slot(&mut self) -> Vec<bool> {
        self.streams
            .iter_mut()
            .zip(&self.probs)
            .map(|(rng, &p)| rng.gen::<f64>() < p)
            .collect()
    }
}
