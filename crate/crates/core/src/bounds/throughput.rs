use serde::Serialize;

use crate::cliques::{exact_max_clique, heuristic_max_clique, CliqueFinder, IdncGraph};
use crate::model::pair_count;
use crate::solver::partition_fg;

use super::BoundsError;

fn check_m0(k: usize, m0: usize) -> Result<(), BoundsError> {
    let max = pair_count(k);
    if m0 > max {
        return Err(BoundsError::M0OutOfRange { k, m0, max });
    }
    Ok(())
}

/// Largest `U_IDNC` over all conflict matrices of size `k` with `m0` zeros.
///
/// Zeros are spent on one packet at a time: the first `k-1` remove one
/// transmission, the next `k-2` another, and so on.
pub fn loose_upper_u(k: usize, m0: usize) -> Result<usize, BoundsError> {
    check_m0(k, m0)?;
    let mut u = k;
    let mut left = m0;
    let mut step = k.saturating_sub(1);
    while left > 0 {
        u -= 1;
        left = left.saturating_sub(step);
        step -= 1;
    }
    Ok(u)
}

/// Zeros needed before `k` packets can be sent in `u` transmissions: the
/// cheapest split of `k` packets into `u` coding sets is the most balanced one.
pub fn zeros_for_partition(k: usize, u: usize) -> usize {
    if u == 0 {
        return if k == 0 { 0 } else { usize::MAX };
    }
    let (q, r) = (k / u, k % u);
    r * pair_count(q + 1) + (u - r) * pair_count(q)
}

/// Smallest `U_IDNC` over all conflict matrices of size `k` with `m0` zeros.
pub fn loose_lower_u(k: usize, m0: usize) -> Result<usize, BoundsError> {
    check_m0(k, m0)?;
    Ok((1..=k).find(|&u| zeros_for_partition(k, u) <= m0).unwrap_or(0))
}

/// `ceil(k^2 / (k + 2 m0))`.
pub fn geller_lower_u(k: usize, m0: usize) -> usize {
    if k == 0 {
        return 0;
    }
    (k * k).div_ceil(k + 2 * m0)
}

/// Throughput bounds of one instance.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct ThroughputBounds {
    pub loose_lower: usize,
    pub loose_upper: usize,
    pub geller: usize,
    /// Size of a clique of mutually conflicting packets; `ω` of the
    /// complement in exact mode, a possibly smaller certified value otherwise.
    pub tight_lower: usize,
    /// Size of the greedy clique partition.
    pub tight_upper: usize,
    pub mode: CliqueFinder,
}

pub fn tight_bounds_u(g: &IdncGraph, mode: CliqueFinder) -> Result<ThroughputBounds, BoundsError> {
    let k = g.n_vertices();
    let m0 = g.edge_count();
    let complement = g.complement();
    let tight_lower = match mode {
        CliqueFinder::Exact => exact_max_clique(&complement)?.len(),
        CliqueFinder::Heuristic => heuristic_max_clique(&complement).len(),
    };
    Ok(ThroughputBounds {
        loose_lower: loose_lower_u(k, m0)?,
        loose_upper: loose_upper_u(k, m0)?,
        geller: geller_lower_u(k, m0),
        tight_lower,
        tight_upper: partition_fg(g, mode)?.len(),
        mode,
    })
}
