//! Erasure-broadcast sessions and Monte Carlo harnesses.
//!
//! A session sends every packet once uncoded, then runs a coded phase under
//! one of the schemes until every receiver has everything. Only coded-phase
//! slots count towards the reported transmissions and delays.

mod channel;
mod montecarlo;
mod session;
mod stats;

pub use channel::{derive_seed, ErasureChannel};
pub use montecarlo::{
    monte_carlo_bounds, monte_carlo_schemes, random_graph, BoundsPoint, BoundsReport, BoundsSweepConfig, SchemePoint,
    SchemesReport, SchemesSweepConfig, BOUNDS_METRICS,
};
pub use session::{run_coded_phase, run_rlnc_baseline, run_session, run_systematic_phase, RoundTrace, SimOutcome};
pub use stats::MetricSummary;

use serde::Serialize;
use thiserror::Error;

use crate::bounds::BoundsError;
use crate::model::ModelError;
use crate::solver::{Scheme, SearchBudget, SolverError};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum SimError {
    #[error("erasure probability {0} is outside [0, 1)")]
    ErasureProbability(f64),
    #[error("expected {expected} per-receiver erasure probabilities, found {found}")]
    OverrideLength { expected: usize, found: usize },
    #[error("channel has {n_receivers} receivers but the matrix refers to receiver {receiver}")]
    UnknownReceiver { receiver: usize, n_receivers: usize },
    #[error("{0}")]
    Config(String),
    #[error(transparent)]
    Model(#[from] ModelError),
    #[error(transparent)]
    Solver(#[from] SolverError),
    #[error(transparent)]
    Bounds(#[from] BoundsError),
}

/// The erasure channel between the sender and its receivers.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ChannelConfig {
    pub erasure_prob: f64,
    pub seed: u64,
    /// Per-receiver erasure probabilities replacing `erasure_prob`.
    pub per_receiver_overrides: Option<Vec<f64>>,
}

impl ChannelConfig {
    pub fn new(erasure_prob: f64, seed: u64) -> Self {
        ChannelConfig {
            erasure_prob,
            seed,
            per_receiver_overrides: None,
        }
    }

    /// Erasure probability of each of `n_receivers` receivers.
    pub fn probabilities(&self, n_receivers: usize) -> Result<Vec<f64>, SimError> {
        let probs = match &self.per_receiver_overrides {
            Some(v) if v.len() != n_receivers => {
                return Err(SimError::OverrideLength {
                    expected: n_receivers,
                    found: v.len(),
                })
            }
            Some(v) => v.clone(),
            None => vec![self.erasure_prob; n_receivers],
        };
        if let Some(&p) = probs.iter().find(|p| !(0.0..1.0).contains(*p)) {
            return Err(SimError::ErasureProbability(p));
        }
        Ok(probs)
    }
}

/// One broadcast session.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SessionConfig {
    pub k_total: usize,
    pub n_total: usize,
    pub scheme: Scheme,
    pub channel: ChannelConfig,
    #[serde(skip)]
    pub budget: SearchBudget,
}
