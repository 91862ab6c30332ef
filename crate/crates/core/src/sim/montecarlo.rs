use rand::seq::index::sample;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::bounds::{delay_bounds, delay_tight_bounds, tight_bounds_u};
use crate::cliques::{enumerate_maximal_cliques, CliqueFinder, IdncGraph};
use crate::model::{pair_count, rational_json, ConflictMatrix, MAX_PACKETS};
use crate::solver::{
    d_idnc, optimal_minimum_collections_with, order_collection, select_collection, Scheme, SearchBudget, SolverError,
};

use super::{derive_seed, run_session, MetricSummary, SessionConfig, SimError};

/// A graph on `k` vertices with exactly `m0` edges placed uniformly at
/// random; in conflict-matrix terms, `m0` zeros among the `k(k-1)/2` pairs.
pub fn random_graph<R: Rng>(k: usize, m0: usize, rng: &mut R) -> Result<IdncGraph, SimError> {
    let pairs = pair_count(k);
    if k > MAX_PACKETS || m0 > pairs {
        return Err(SimError::Config(format!(
            "cannot place {m0} zeros among {pairs} pairs of {k} packets"
        )));
    }
    let layout = ConflictMatrix::new(k)?;
    let edges: Vec<(usize, usize)> = sample(rng, pairs, m0).into_iter().map(|i| layout.pair(i)).collect();
    Ok(IdncGraph::from_edges(k, &edges).expect("pairs are in range"))
}

fn run_trials<T: Send>(trials: usize, parallel: bool, f: impl Fn(usize) -> T + Sync + Send) -> Vec<T> {
    if parallel {
        (0..trials).into_par_iter().map(f).collect()
    } else {
        (0..trials).map(f).collect()
    }
}

/// Sweep of random conflict graphs with a fixed number of zeros.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct BoundsSweepConfig {
    pub k: usize,
    pub m0_sweep: Vec<usize>,
    pub trials: usize,
    pub seed: u64,
    /// Demand counts are drawn uniformly from `1..=t_max`.
    pub t_max: usize,
    #[serde(skip)]
    pub budget: SearchBudget,
    #[serde(skip)]
    pub parallel: bool,
}

impl BoundsSweepConfig {
    pub fn new(k: usize, m0_sweep: Vec<usize>, trials: usize, seed: u64) -> Self {
        BoundsSweepConfig {
            k,
            m0_sweep,
            trials,
            seed,
            t_max: k,
            budget: SearchBudget::default(),
            parallel: true,
        }
    }
}

/// Metric names of a [`BoundsPoint`], in column order.
pub const BOUNDS_METRICS: [&str; 15] = [
    "u_idnc",
    "u_loose_lower",
    "u_loose_upper",
    "u_geller",
    "u_lower",
    "u_upper",
    "u_lower_heuristic",
    "u_upper_heuristic",
    "d_idnc",
    "d_loose_lower",
    "d_loose_upper",
    "d_lower",
    "d_upper",
    "d_lower_heuristic",
    "d_upper_heuristic",
];

/// Averages at one value of `m0`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct BoundsPoint {
    pub m0: usize,
    pub trials: usize,
    /// Instances redrawn because the optimal search ran out of budget.
    pub resampled: usize,
    /// One summary per entry of [`BOUNDS_METRICS`].
    pub metrics: Vec<MetricSummary>,
}

impl BoundsPoint {
    pub fn metric(&self, name: &str) -> Option<MetricSummary> {
        BOUNDS_METRICS.iter().position(|&m| m == name).map(|i| self.metrics[i])
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct BoundsReport {
    pub config: BoundsSweepConfig,
    pub points: Vec<BoundsPoint>,
}

fn bounds_trial(
    k: usize,
    m0: usize,
    t_max: usize,
    budget: &SearchBudget,
    seed: u64,
) -> Result<([f64; 15], usize), SimError> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut resampled = 0;
    loop {
        let g = random_graph(k, m0, &mut rng)?;
        let targets: Vec<usize> = (0..k).map(|_| rng.gen_range(1..=t_max)).collect();
        let all = enumerate_maximal_cliques(&g).map_err(SolverError::from)?;
        let mins = match optimal_minimum_collections_with(&all, k, budget) {
            Err(SolverError::BudgetExceeded { .. }) => {
                resampled += 1;
                continue;
            }
            r => r?,
        };
        let chosen = order_collection(&select_collection(&mins, &targets)?, &targets);
        let exact = tight_bounds_u(&g, CliqueFinder::Exact)?;
        let heuristic = tight_bounds_u(&g, CliqueFinder::Heuristic)?;
        let delay = delay_bounds(&g, &targets, CliqueFinder::Exact)?;
        let (h_lower, h_upper, _) = delay_tight_bounds(&g, &targets, CliqueFinder::Heuristic)?;
        let f = rational_json::to_f64;
        let values = [
            mins[0].len() as f64,
            exact.loose_lower as f64,
            exact.loose_upper as f64,
            exact.geller as f64,
            exact.tight_lower as f64,
            exact.tight_upper as f64,
            heuristic.tight_lower as f64,
            heuristic.tight_upper as f64,
            f(d_idnc(&chosen, &targets)?),
            f(delay.loose_lower),
            f(delay.loose_upper),
            f(delay.tight_lower),
            f(delay.tight_upper),
            f(h_lower),
            f(h_upper),
        ];
        return Ok((values, resampled));
    }
}

/// Average throughput and delay bounds over random conflict graphs.
///
/// Trial `t` at sweep position `i` is seeded from `(seed, i, t)` alone, and
/// results are summed in trial order, so serial and parallel runs agree
/// exactly.
pub fn monte_carlo_bounds(cfg: &BoundsSweepConfig) -> Result<BoundsReport, SimError> {
    if cfg.trials == 0 || cfg.k == 0 || cfg.t_max == 0 {
        return Err(SimError::Config("k, trials and t_max must be positive".into()));
    }
    let mut points = Vec::with_capacity(cfg.m0_sweep.len());
    for (i, &m0) in cfg.m0_sweep.iter().enumerate() {
        let results = run_trials(cfg.trials, cfg.parallel, |t| {
            bounds_trial(
                cfg.k,
                m0,
                cfg.t_max,
                &cfg.budget,
                derive_seed(cfg.seed, ((i as u64) << 32) | t as u64),
            )
        });
        let results: Vec<([f64; 15], usize)> = results.into_iter().collect::<Result<_, _>>()?;
        let metrics = (0..BOUNDS_METRICS.len())
            .map(|m| MetricSummary::from_samples(&results.iter().map(|(v, _)| v[m]).collect::<Vec<_>>()))
            .collect();
        points.push(BoundsPoint {
            m0,
            trials: cfg.trials,
            resampled: results.iter().map(|(_, r)| r).sum(),
            metrics,
        });
    }
    Ok(BoundsReport {
        config: cfg.clone(),
        points,
    })
}

/// Full sessions of several schemes across receiver counts.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SchemesSweepConfig {
    pub k_total: usize,
    pub n_sweep: Vec<usize>,
    pub pe: f64,
    pub trials: usize,
    pub seed: u64,
    pub schemes: Vec<Scheme>,
    #[serde(skip)]
    pub budget: SearchBudget,
    #[serde(skip)]
    pub parallel: bool,
}

impl SchemesSweepConfig {
    pub fn new(k_total: usize, n_sweep: Vec<usize>, pe: f64, trials: usize, seed: u64) -> Self {
        SchemesSweepConfig {
            k_total,
            n_sweep,
            pe,
            trials,
            seed,
            schemes: Scheme::ALL.to_vec(),
            budget: SearchBudget::default(),
            parallel: true,
        }
    }
}

/// Averages of one scheme at one receiver count.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SchemePoint {
    pub scheme: Scheme,
    pub nt: usize,
    pub pe: f64,
    pub trials: usize,
    pub transmissions: MetricSummary,
    /// Over the trials that had any demand after the systematic phase.
    pub delay: MetricSummary,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SchemesReport {
    pub config: SchemesSweepConfig,
    pub points: Vec<SchemePoint>,
}

/// Runs every scheme on the same channel realisations.
///
/// For each receiver count and trial, one seed drives the systematic phase
/// and the coded-phase erasures for all schemes alike.
pub fn monte_carlo_schemes(cfg: &SchemesSweepConfig) -> Result<SchemesReport, SimError> {
    if cfg.trials == 0 {
        return Err(SimError::Config("trials must be positive".into()));
    }
    let mut points = Vec::new();
    for (i, &nt) in cfg.n_sweep.iter().enumerate() {
        let results = run_trials(cfg.trials, cfg.parallel, |t| {
            let seed = derive_seed(cfg.seed, ((i as u64) << 32) | t as u64);
            cfg.schemes
                .iter()
                .map(|&scheme| {
                    let mut session = SessionConfig::new(cfg.k_total, nt, scheme, cfg.pe, seed);
                    session.budget = cfg.budget;
                    run_session(&session).map(|(_, o)| o)
                })
                .collect::<Result<Vec<_>, _>>()
        });
        let results: Vec<Vec<_>> = results.into_iter().collect::<Result<_, _>>()?;
        for (s, &scheme) in cfg.schemes.iter().enumerate() {
            let tx: Vec<f64> = results.iter().map(|r| r[s].coded_transmissions as f64).collect();
            let delay: Vec<f64> = results
                .iter()
                .filter_map(|r| r[s].avg_decoding_delay.map(rational_json::to_f64))
                .collect();
            points.push(SchemePoint {
                scheme,
                nt,
                pe: cfg.pe,
                trials: cfg.trials,
                transmissions: MetricSummary::from_samples(&tx),
                delay: MetricSummary::from_samples(&delay),
            });
        }
    }
    Ok(SchemesReport {
        config: cfg.clone(),
        points,
    })
}
