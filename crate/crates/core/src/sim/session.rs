use rand::{Rng, RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::model::{
    classify_packet, rational_json, Decodability, DelayLedger, PacketSet, Rational, StateFeedbackMatrix,
};
use crate::solver::{next_set, solve, Feedback, Scheme, SearchBudget};

use super::{ChannelConfig, ErasureChannel, SessionConfig, SimError};

/// One feedback round: the sets sent before the sender heard back.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct RoundTrace {
    pub round: usize,
    pub sets_sent: usize,
    /// Erasures suffered by receivers that still wanted something.
    pub erasures: usize,
}

/// Result of a coded phase.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SimOutcome {
    pub scheme: Scheme,
    pub coded_transmissions: usize,
    /// Outstanding (receiver, packet) demands when the coded phase began.
    pub demands: usize,
    /// Mean coded slot at which demands were met; absent without demands.
    #[serde(with = "rational_json::option")]
    pub avg_decoding_delay: Option<Rational>,
    pub per_round_trace: Vec<RoundTrace>,
}

/// Sends every packet once; receiver `n` loses packet `k` with its erasure
/// probability. Returns the reduced demand matrix, empty if nothing was lost.
pub fn run_systematic_phase<R: Rng>(cfg: &SessionConfig, rng: &mut R) -> Result<StateFeedbackMatrix, SimError> {
    let probs = cfg.channel.probabilities(cfg.n_total)?;
    let lost: Vec<PacketSet> = probs
        .iter()
        .map(|&p| (0..cfg.k_total).filter(|_| rng.gen::<f64>() < p).collect())
        .collect();
    Ok(StateFeedbackMatrix::reduce(cfg.k_total, &lost)?)
}

fn channel_receiver(sfm: &StateFeedbackMatrix, channel: &ErasureChannel, n: usize) -> Result<usize, SimError> {
    let r = sfm.receiver_ids()[n];
    if r >= channel.n_receivers() {
        return Err(SimError::UnknownReceiver {
            receiver: r,
            n_receivers: channel.n_receivers(),
        });
    }
    Ok(r)
}

fn finish(scheme: Scheme, slot: usize, ledger: &DelayLedger, trace: Vec<RoundTrace>) -> Result<SimOutcome, SimError> {
    let avg_decoding_delay = if ledger.total_demands() == 0 {
        None
    } else {
        Some(ledger.average_decoding_delay()?)
    };
    Ok(SimOutcome {
        scheme,
        coded_transmissions: slot,
        demands: ledger.total_demands(),
        avg_decoding_delay,
        per_round_trace: trace,
    })
}

/// Runs the coded phase of an IDNC scheme (or RLNC) on `sfm`.
///
/// Semi-online rounds send the whole ordered collection computed from the
/// last feedback, even sets that have meanwhile become useless; fully-online
/// rounds send one set. Each receiver keeps a packet only if it is instantly
/// decodable against its true state and discards it otherwise.
pub fn run_coded_phase(
    sfm: &StateFeedbackMatrix,
    scheme: Scheme,
    budget: &SearchBudget,
    channel: &mut ErasureChannel,
) -> Result<SimOutcome, SimError> {
    let Scheme::Idnc { algorithm, feedback } = scheme else {
        return run_rlnc_baseline(sfm, channel);
    };
    let receivers: Vec<usize> = (0..sfm.n_receivers())
        .map(|n| channel_receiver(sfm, channel, n))
        .collect::<Result<_, _>>()?;
    let k = sfm.n_packets();
    let mut wants = sfm.wants_sets().to_vec();
    let mut ledger = DelayLedger::for_sfm(sfm);
    let mut trace = Vec::new();
    let mut slot = 0;
    while wants.iter().any(|w| !w.is_empty()) {
        let current = StateFeedbackMatrix::reduce(k, &wants)?;
        let sets: Vec<PacketSet> = match feedback {
            Feedback::Semi => solve(&current, algorithm, feedback, budget)?
                .collection
                .sets()
                .iter()
                .map(|&s| current.to_original(s))
                .collect(),
            Feedback::Fully => vec![current.to_original(next_set(&current, algorithm, budget)?)],
        };
        let mut erasures = 0;
        for &set in &sets {
            slot += 1;
            let erased = channel.next_slot();
            for (n, w) in wants.iter_mut().enumerate() {
                if w.is_empty() {
                    continue;
                }
                if erased[receivers[n]] {
                    erasures += 1;
                    continue;
                }
                if let Decodability::InstantlyDecodable(p) = classify_packet(set, *w) {
                    ledger.record(n, p, slot as u64)?;
                    w.remove(p);
                }
            }
        }
        trace.push(RoundTrace {
            round: trace.len() + 1,
            sets_sent: sets.len(),
            erasures,
        });
    }
    finish(scheme, slot, &ledger, trace)
}

/// Idealised random linear network coding: every coded packet a receiver
/// gets is innovative, so receiver `n` finishes after as many receptions as
/// it has missing packets, and decodes all of them at that moment.
pub fn run_rlnc_baseline(sfm: &StateFeedbackMatrix, channel: &mut ErasureChannel) -> Result<SimOutcome, SimError> {
    let receivers: Vec<usize> = (0..sfm.n_receivers())
        .map(|n| channel_receiver(sfm, channel, n))
        .collect::<Result<_, _>>()?;
    let mut deficit: Vec<usize> = sfm.wants_sets().iter().map(|w| w.len()).collect();
    let mut ledger = DelayLedger::for_sfm(sfm);
    let mut slot = 0;
    let mut erasures = 0;
    while deficit.iter().any(|&d| d > 0) {
        slot += 1;
        let erased = channel.next_slot();
        for (n, d) in deficit.iter_mut().enumerate() {
            if *d == 0 {
                continue;
            }
            if erased[receivers[n]] {
                erasures += 1;
                continue;
            }
            *d -= 1;
            if *d == 0 {
                for p in sfm.wants(n).iter() {
                    ledger.record(n, p, slot as u64)?;
                }
            }
        }
    }
    let trace = if slot > 0 {
        vec![RoundTrace {
            round: 1,
            sets_sent: slot,
            erasures,
        }]
    } else {
        Vec::new()
    };
    finish(Scheme::Rlnc, slot, &ledger, trace)
}

/// A full session: systematic phase, then the coded phase of `cfg.scheme`.
///
/// All randomness comes from `cfg.channel.seed`, and the systematic losses
/// and coded-phase erasures do not depend on the scheme, so sessions that
/// differ only in scheme share their channel realisation.
pub fn run_session(cfg: &SessionConfig) -> Result<(StateFeedbackMatrix, SimOutcome), SimError> {
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.channel.seed);
    let sfm = run_systematic_phase(cfg, &mut rng)?;
    let mut channel = ErasureChannel::new(&cfg.channel, cfg.n_total, rng.next_u64())?;
    let outcome = run_coded_phase(&sfm, cfg.scheme, &cfg.budget, &mut channel)?;
    Ok((sfm, outcome))
}

impl SessionConfig {
    pub fn new(k_total: usize, n_total: usize, scheme: Scheme, erasure_prob: f64, seed: u64) -> Self {
        SessionConfig {
            k_total,
            n_total,
            scheme,
            channel: ChannelConfig::new(erasure_prob, seed),
            budget: SearchBudget::default(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::fixtures::golden_sfm;
    use crate::solver::Algorithm;

    fn lossless(n: usize) -> ErasureChannel {
        ErasureChannel::new(&ChannelConfig::new(0.0, 0), n, 0).unwrap()
    }

    fn sfm(rows: &[&[u8]]) -> StateFeedbackMatrix {
        StateFeedbackMatrix::from_rows(&rows.iter().map(|r| r.to_vec()).collect::<Vec<_>>()).unwrap()
    }

    #[test]
    fn golden_lossless_sessions() {
        let optimal_semi = Scheme::Idnc {
            algorithm: Algorithm::Optimal,
            feedback: Feedback::Semi,
        };
        let out = run_coded_phase(&golden_sfm(), optimal_semi, &SearchBudget::default(), &mut lossless(5)).unwrap();
        assert_eq!(out.coded_transmissions, 3);
        assert_eq!(out.avg_decoding_delay, Some(Rational::new(22, 12)));
        assert_eq!(out.demands, 12);
        assert_eq!(
            out.per_round_trace,
            vec![RoundTrace {
                round: 1,
                sets_sent: 3,
                erasures: 0
            }]
        );
        for scheme in Scheme::ALL.into_iter().filter(|s| *s != Scheme::Rlnc) {
            let out = run_coded_phase(&golden_sfm(), scheme, &SearchBudget::default(), &mut lossless(5)).unwrap();
            assert_eq!(out.coded_transmissions, 3, "{scheme}");
        }
    }

    #[test]
    fn empty_matrix_needs_no_coded_phase() {
        for scheme in Scheme::ALL {
            let out = run_coded_phase(
                &StateFeedbackMatrix::empty(),
                scheme,
                &SearchBudget::default(),
                &mut lossless(2),
            )
            .unwrap();
            assert_eq!(out.coded_transmissions, 0);
            assert_eq!(out.demands, 0);
            assert_eq!(out.avg_decoding_delay, None);
            assert!(out.per_round_trace.is_empty());
        }
    }

    #[test]
    fn rlnc_deficits() {
        let one = sfm(&[&[1, 1, 1]]);
        let out = run_rlnc_baseline(&one, &mut lossless(1)).unwrap();
        assert_eq!(out.coded_transmissions, 3);
        assert_eq!(out.avg_decoding_delay, Some(Rational::from_integer(3)));

        let two = sfm(&[&[1, 1, 0, 0, 0], &[1, 1, 1, 1, 1]]);
        let out = run_rlnc_baseline(&two, &mut lossless(2)).unwrap();
        assert_eq!(out.coded_transmissions, 5);
        assert_eq!(out.avg_decoding_delay, Some(Rational::new(2 * 2 + 5 * 5, 7)));
    }

    #[test]
    fn systematic_phase() {
        let cfg = SessionConfig::new(6, 4, Scheme::Rlnc, 0.0, 1);
        assert!(run_systematic_phase(&cfg, &mut ChaCha8Rng::seed_from_u64(3))
            .unwrap()
            .is_empty());
        let cfg = SessionConfig::new(10, 10, Scheme::Rlnc, 0.3, 1);
        let a = run_systematic_phase(&cfg, &mut ChaCha8Rng::seed_from_u64(3)).unwrap();
        let b = run_systematic_phase(&cfg, &mut ChaCha8Rng::seed_from_u64(3)).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn systematic_losses_have_the_right_rate() {
        // Mean lost cells over 10^4 sessions of 5 x 8 within 3 standard errors.
        let (n, k, pe, trials) = (5, 8, 0.3, 10_000);
        let cfg = SessionConfig::new(k, n, Scheme::Rlnc, pe, 0);
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        let total: usize = (0..trials)
            .map(|_| run_systematic_phase(&cfg, &mut rng).unwrap().total_demands())
            .sum();
        let cells = (n * k * trials) as f64;
        let sd = (cells * pe * (1.0 - pe)).sqrt();
        assert!((total as f64 - cells * pe).abs() < 3.0 * sd);
    }

    #[test]
    fn sessions_conserve_demands_and_replay() {
        for scheme in Scheme::ALL {
            for seed in 0..20 {
                let cfg = SessionConfig::new(8, 6, scheme, 0.3, seed);
                let (sfm, out) = run_session(&cfg).unwrap();
                assert_eq!(out.demands, sfm.total_demands());
                if out.demands > 0 {
                    assert!(out.avg_decoding_delay.unwrap() >= Rational::from_integer(1));
                    assert!(out.coded_transmissions >= 1);
                }
                assert_eq!(run_session(&cfg).unwrap().1, out);
            }
        }
    }

    #[test]
    fn semi_and_fully_agree_without_coded_erasures() {
        // Lossy systematic phase, lossless coded phase.
        for seed in 0..30 {
            let cfg = SessionConfig::new(10, 6, Scheme::Rlnc, 0.4, seed);
            let m = run_systematic_phase(&cfg, &mut ChaCha8Rng::seed_from_u64(seed)).unwrap();
            let run = |feedback| {
                let scheme = Scheme::Idnc {
                    algorithm: Algorithm::Optimal,
                    feedback,
                };
                run_coded_phase(&m, scheme, &SearchBudget::default(), &mut lossless(6)).unwrap()
            };
            let (semi, fully) = (run(Feedback::Semi), run(Feedback::Fully));
            assert_eq!(semi.coded_transmissions, fully.coded_transmissions);
            if !m.is_empty() {
                let u = solve(&m, Algorithm::Optimal, Feedback::Semi, &SearchBudget::default())
                    .unwrap()
                    .u_idnc;
                assert_eq!(semi.coded_transmissions, u);
            }
        }
    }
}
