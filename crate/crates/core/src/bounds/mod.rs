//! Throughput and decoding-delay bounds.

mod delay;
mod throughput;

pub use delay::{delay_bounds, delay_loose_bounds, delay_tight_bounds, profile_delay, DelayBounds};
pub use throughput::{
    geller_lower_u, loose_lower_u, loose_upper_u, tight_bounds_u, zeros_for_partition, ThroughputBounds,
};

use thiserror::Error;

use crate::cliques::CliqueError;
use crate::solver::SolverError;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum BoundsError {
    #[error("m0 = {m0} exceeds the {max} packet pairs of k = {k}")]
    M0OutOfRange { k: usize, m0: usize, max: usize },
    #[error("expected {expected} demand counts, found {found}")]
    TargetsLength { expected: usize, found: usize },
    #[error("the instance has no outstanding demands")]
    NoDemands,
    #[error(transparent)]
    Clique(#[from] CliqueError),
    #[error(transparent)]
    Solver(#[from] SolverError),
}

/// Probability that two packets conflict after the systematic phase:
/// `1 - (1 - pe^2)^n_total`.
pub fn conflict_probability(pe: f64, n_total: usize) -> f64 {
    1.0 - (1.0 - pe * pe).powi(n_total as i32)
}

/// Asymptotic chromatic number of a random graph on `k_total` vertices with
/// edge probability `pc`, `0.5 ln(1/(1-pc)) k_total / ln k_total`, with the
/// vanishing term dropped.
///
/// Only meaningful for large `k_total`. The logarithm base cancels, so none
/// is taken. Returns `+inf` at `pc = 1` and `NaN` for `k_total < 2`.
pub fn chromatic_estimate(k_total: usize, pc: f64) -> f64 {
    let k = k_total as f64;
    0.5 * (1.0 / (1.0 - pc)).ln() * k / k.ln()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn conflict_probability_values() {
        assert_eq!(conflict_probability(0.0, 30), 0.0);
        assert_eq!(conflict_probability(1.0, 1), 1.0);
        assert!((conflict_probability(0.2, 20) - (1.0 - 0.96f64.powi(20))).abs() < 1e-12);
        assert!((conflict_probability(0.2, 20) - 0.5580).abs() < 5e-5);
    }

    #[test]
    fn chromatic_estimate_values() {
        assert_eq!(chromatic_estimate(15, 0.0), 0.0);
        assert!((chromatic_estimate(15, 0.5) - 1.920).abs() < 5e-4);
        let log2 = 0.5 * (1.0f64 / 0.5).log2() * 15.0 / 15f64.log2();
        assert!((chromatic_estimate(15, 0.5) - log2).abs() < 1e-12);
        let xs: Vec<f64> = (0..10).map(|i| chromatic_estimate(15, i as f64 / 10.0)).collect();
        assert!(xs.windows(2).all(|w| w[0] < w[1]));
    }
}
