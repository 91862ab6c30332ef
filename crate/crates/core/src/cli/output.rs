use std::fmt::Write as _;
use std::io::Write as _;
use std::path::Path;

use serde::Serialize;

use crate::bounds::{DelayBounds, ThroughputBounds};
use crate::cliques::IdncGraph;
use crate::model::{rational_json, PacketSet, Rational, StateFeedbackMatrix};
use crate::sim::{BoundsReport, SchemesReport, BOUNDS_METRICS};
use crate::solver::{Algorithm, Feedback, SolveReport};

use super::CliError;

pub(super) fn to_json<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("output types serialize");
    s.push('\n');
    s
}

#[derive(Serialize)]
struct Complete {
    status: &'static str,
}

pub(super) fn complete_json() -> String {
    to_json(&Complete { status: "complete" })
}

fn one_based(set: PacketSet) -> Vec<usize> {
    set.iter().map(|k| k + 1).collect()
}

#[derive(Serialize)]
struct FirstSlot {
    packet: usize,
    slot: usize,
}

#[derive(Serialize)]
struct SolveOutput {
    status: &'static str,
    algorithm: Algorithm,
    feedback: Feedback,
    receivers: Vec<usize>,
    packets: Vec<usize>,
    u_idnc: usize,
    #[serde(with = "rational_json")]
    d_idnc: Rational,
    collection: Vec<Vec<usize>>,
    first_slots: Vec<FirstSlot>,
    next: Vec<usize>,
}

pub(super) fn solve_json(sfm: &StateFeedbackMatrix, r: &SolveReport) -> String {
    let packets: Vec<usize> = sfm.packet_ids().iter().map(|k| k + 1).collect();
    to_json(&SolveOutput {
        status: "solved",
        algorithm: r.algorithm,
        feedback: r.feedback,
        receivers: sfm.receiver_ids().iter().map(|n| n + 1).collect(),
        u_idnc: r.u_idnc,
        d_idnc: r.d_idnc,
        collection: r
            .collection
            .sets()
            .iter()
            .map(|&s| one_based(sfm.to_original(s)))
            .collect(),
        first_slots: r
            .per_packet_first_slot
            .iter()
            .zip(&packets)
            .map(|(&slot, &packet)| FirstSlot { packet, slot })
            .collect(),
        next: one_based(sfm.to_original(r.next)),
        packets,
    })
}

/// The instance a bounds report describes.
#[derive(Serialize)]
pub(super) struct Instance {
    source: &'static str,
    #[serde(skip_serializing_if = "Option::is_none")]
    seed: Option<u64>,
    packets: Vec<usize>,
    /// Zeros of the conflict matrix, i.e. edges of the coding graph.
    m0: usize,
    edges: Vec<[usize; 2]>,
    targets: Vec<usize>,
}

fn edge_list(g: &IdncGraph, ids: &[usize]) -> Vec<[usize; 2]> {
    let k = g.n_vertices();
    (0..k)
        .flat_map(|i| (i + 1..k).map(move |j| (i, j)))
        .filter(|&(i, j)| g.has_edge(i, j))
        .map(|(i, j)| [ids[i] + 1, ids[j] + 1])
        .collect()
}

impl Instance {
    pub(super) fn from_sfm(sfm: &StateFeedbackMatrix, g: &IdncGraph) -> Self {
        Instance {
            source: "file",
            seed: None,
            packets: sfm.packet_ids().iter().map(|k| k + 1).collect(),
            m0: g.edge_count(),
            edges: edge_list(g, sfm.packet_ids()),
            targets: sfm.targets(),
        }
    }

    pub(super) fn random(g: &IdncGraph, targets: &[usize], seed: u64) -> Self {
        let ids: Vec<usize> = (0..g.n_vertices()).collect();
        Instance {
            source: "random",
            seed: Some(seed),
            packets: ids.iter().map(|k| k + 1).collect(),
            m0: g.edge_count(),
            edges: edge_list(g, &ids),
            targets: targets.to_vec(),
        }
    }
}

#[derive(Serialize)]
struct BoundsOutput<'a> {
    status: &'static str,
    instance: &'a Instance,
    throughput: &'a ThroughputBounds,
    delay: &'a DelayBounds,
}

pub(super) fn bounds_json(instance: &Instance, throughput: &ThroughputBounds, delay: &DelayBounds) -> String {
    to_json(&BoundsOutput {
        status: "bounded",
        instance,
        throughput,
        delay,
    })
}

fn num(x: f64) -> String {
    format!("{x:.6}")
}

pub(super) fn schemes_csv(reports: &[SchemesReport]) -> String {
    let mut out = String::from("scheme,nt,pe,trials,mean_tx,se_tx,mean_delay,se_delay\n");
    for p in reports.iter().flat_map(|r| &r.points) {
        let _ = writeln!(
            out,
            "{},{},{},{},{},{},{},{}",
            p.scheme,
            p.nt,
            p.pe,
            p.trials,
            num(p.transmissions.mean),
            num(p.transmissions.se),
            num(p.delay.mean),
            num(p.delay.se)
        );
    }
    out
}

pub(super) fn bounds_sweep_csv(report: &BoundsReport) -> String {
    let mut out = String::from("m0,trials,resampled");
    for m in BOUNDS_METRICS {
        let _ = write!(out, ",mean_{m},se_{m}");
    }
    out.push('\n');
    for p in &report.points {
        let _ = write!(out, "{},{},{}", p.m0, p.trials, p.resampled);
        for s in &p.metrics {
            let _ = write!(out, ",{},{}", num(s.mean), num(s.se));
        }
        out.push('\n');
    }
    out
}

/// Writes through a temporary file in the target directory, then renames.
pub(super) fn write_atomic(path: &Path, text: &str) -> Result<(), CliError> {
    let io = |source| CliError::Io {
        path: path.to_path_buf(),
        source,
    };
    let dir = match path.parent() {
        Some(d) if !d.as_os_str().is_empty() => d,
        _ => Path::new("."),
    };
    let mut tmp = tempfile::NamedTempFile::new_in(dir).map_err(io)?;
    tmp.write_all(text.as_bytes()).map_err(io)?;
    tmp.as_file().sync_all().map_err(io)?;
    tmp.persist(path).map_err(|e| io(e.error))?;
    Ok(())
}
