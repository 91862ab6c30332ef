//! The `idnc` command-line front end.
//!
//! [`parse_args`] turns an argument vector into a validated
//! [`ExperimentSpec`]; [`run`] executes it and writes the result atomically.
//! Exit codes: 0 success, 1 usage or malformed input, 2 optimal search over
//! budget, 3 I/O failure.
//!
//! Packet and receiver ids in JSON output are 1-based positions in the input
//! matrix, before any all-zero rows or columns are dropped.

mod args;
mod output;

use std::ffi::OsString;
use std::path::{Path, PathBuf};

use clap::Parser;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::bounds::{BoundsError, ThroughputBounds};
use crate::cliques::{CliqueFinder, IdncGraph};
use crate::model::io::{sfm_from_csv, sfm_from_json};
use crate::model::{ModelError, StateFeedbackMatrix};
use crate::sim::{
    monte_carlo_bounds, monte_carlo_schemes, random_graph, BoundsSweepConfig, SchemesSweepConfig, SimError,
};
use crate::solver::{solve, Algorithm, Feedback, Scheme, SearchBudget, SolverError};

use args::{Cli, Command as RawCommand, FormatArg, ModeArg, OutputArgs, SchemeRunArgs, SweepCommand};

/// Environment variable overriding the optimal search budget.
pub const BUDGET_ENV: &str = "IDNC_BUDGET";

#[derive(Debug, Error)]
pub enum CliError {
    /// Help or version text; not a failure.
    #[error("{0}")]
    Info(String),
    #[error("{0}")]
    Usage(String),
    #[error("{path}: {message}")]
    Input { path: PathBuf, message: String },
    #[error("{0}")]
    Budget(String),
    #[error("{path}: {source}")]
    Io { path: PathBuf, source: std::io::Error },
    #[error("{0}")]
    Failed(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Info(_) => 0,
            CliError::Usage(_) | CliError::Input { .. } | CliError::Failed(_) => 1,
            CliError::Budget(_) => 2,
            CliError::Io { .. } => 3,
        }
    }
}

fn budget_error(e: &SolverError) -> bool {
    matches!(e, SolverError::BudgetExceeded { .. })
}

impl From<SolverError> for CliError {
    fn from(e: SolverError) -> Self {
        if budget_error(&e) {
            CliError::Budget(e.to_string())
        } else {
            CliError::Failed(e.to_string())
        }
    }
}

impl From<BoundsError> for CliError {
    fn from(e: BoundsError) -> Self {
        match e {
            BoundsError::Solver(s) => s.into(),
            e => CliError::Failed(e.to_string()),
        }
    }
}

impl From<SimError> for CliError {
    fn from(e: SimError) -> Self {
        match e {
            SimError::Solver(s) => s.into(),
            SimError::Bounds(b) => b.into(),
            SimError::Config(m) => CliError::Usage(m),
            e => CliError::Failed(e.to_string()),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Format {
    Json,
    Csv,
}

/// Where a single-instance bounds command gets its instance.
#[derive(Clone, Debug, PartialEq)]
pub enum InstanceSource {
    File(PathBuf),
    Random { k: usize, m0: usize, t_max: usize },
}

#[derive(Clone, Debug, PartialEq)]
pub enum Experiment {
    Solve {
        input: PathBuf,
        algorithm: Algorithm,
        feedback: Feedback,
    },
    Bounds {
        source: InstanceSource,
        mode: CliqueFinder,
    },
    /// One scheme sweep per erasure probability.
    Schemes(Vec<SchemesSweepConfig>),
    BoundsSweep(BoundsSweepConfig),
}

/// A validated command line.
#[derive(Clone, Debug, PartialEq)]
pub struct ExperimentSpec {
    pub experiment: Experiment,
    pub output: Option<PathBuf>,
    pub format: Format,
    pub seed: Option<u64>,
    pub budget: SearchBudget,
}

impl ExperimentSpec {
    pub fn is_randomized(&self) -> bool {
        !matches!(
            self.experiment,
            Experiment::Solve { .. }
                | Experiment::Bounds {
                    source: InstanceSource::File(_),
                    ..
                }
        )
    }
}

fn budget_from_env() -> Result<SearchBudget, CliError> {
    match std::env::var(BUDGET_ENV) {
        Err(_) => Ok(SearchBudget::default()),
        Ok(v) => match v.trim().parse::<usize>() {
            Ok(n) if n > 0 => Ok(SearchBudget { max_candidates: n }),
            _ => Err(CliError::Usage(format!(
                "{BUDGET_ENV} must be a positive integer, found {v:?}"
            ))),
        },
    }
}

fn require_seed(seed: Option<u64>, command: &str) -> Result<u64, CliError> {
    seed.ok_or_else(|| CliError::Usage(format!("{command}: --seed is required for randomized runs")))
}

fn format_of(out: &OutputArgs, default: Format, allowed: &[Format]) -> Result<Format, CliError> {
    let f = match out.format {
        None => default,
        Some(FormatArg::Json) => Format::Json,
        Some(FormatArg::Csv) => Format::Csv,
    };
    if allowed.contains(&f) {
        Ok(f)
    } else {
        Err(CliError::Usage(format!("this command cannot write {f:?} output")))
    }
}

fn parse_schemes(names: &[String]) -> Result<Vec<Scheme>, CliError> {
    if names.iter().any(|s| s == "all") {
        return Ok(Scheme::ALL.to_vec());
    }
    let mut schemes = Vec::new();
    for name in names {
        let s: Scheme = name.parse().map_err(CliError::Usage)?;
        if !schemes.contains(&s) {
            schemes.push(s);
        }
    }
    Ok(schemes)
}

fn scheme_configs(
    kt: usize,
    nt: Vec<usize>,
    pe: Vec<f64>,
    trials: usize,
    run: &SchemeRunArgs,
    command: &str,
    budget: SearchBudget,
) -> Result<Vec<SchemesSweepConfig>, CliError> {
    let seed = require_seed(run.seed, command)?;
    let schemes = parse_schemes(&run.scheme)?;
    if kt == 0 || trials == 0 || nt.contains(&0) {
        return Err(CliError::Usage("--kt, --nt and --trials must be positive".into()));
    }
    if let Some(p) = pe.iter().find(|p| !(0.0..1.0).contains(*p)) {
        return Err(CliError::Usage(format!("--pe {p} is outside [0, 1)")));
    }
    Ok(pe
        .into_iter()
        .map(|pe| {
            let mut cfg = SchemesSweepConfig::new(kt, nt.clone(), pe, trials, seed);
            cfg.schemes = schemes.clone();
            cfg.budget = budget;
            cfg.parallel = !run.serial;
            cfg
        })
        .collect())
}

/// Parses a full argument vector, program name first.
///
/// Reads the budget override from [`BUDGET_ENV`].
pub fn parse_args<I, T>(argv: I) -> Result<ExperimentSpec, CliError>
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = Cli::try_parse_from(argv).map_err(|e| match e.kind() {
        clap::error::ErrorKind::DisplayHelp | clap::error::ErrorKind::DisplayVersion => CliError::Info(e.to_string()),
        _ => CliError::Usage(e.to_string()),
    })?;
    let budget = budget_from_env()?;
    let spec = match cli.command {
        RawCommand::Solve(a) => ExperimentSpec {
            format: format_of(&a.output, Format::Json, &[Format::Json])?,
            experiment: Experiment::Solve {
                input: a.sfm,
                algorithm: a.scheme,
                feedback: a.feedback,
            },
            output: a.output.out,
            seed: None,
            budget,
        },
        RawCommand::Bounds(a) => {
            let source = match (a.sfm, a.k, a.m0) {
                (Some(path), None, None) => {
                    if a.seed.is_some() || a.t_max.is_some() {
                        return Err(CliError::Usage(
                            "bounds: --seed and --t-max apply only to random instances".into(),
                        ));
                    }
                    InstanceSource::File(path)
                }
                (None, Some(k), Some(m0)) => {
                    require_seed(a.seed, "bounds")?;
                    let t_max = a.t_max.unwrap_or(k);
                    if k == 0 || t_max == 0 {
                        return Err(CliError::Usage("bounds: --k and --t-max must be positive".into()));
                    }
                    InstanceSource::Random { k, m0, t_max }
                }
                _ => return Err(CliError::Usage("bounds: give either --sfm or both --k and --m0".into())),
            };
            ExperimentSpec {
                format: format_of(&a.output, Format::Json, &[Format::Json])?,
                experiment: Experiment::Bounds {
                    source,
                    mode: match a.mode {
                        ModeArg::Exact => CliqueFinder::Exact,
                        ModeArg::Heuristic => CliqueFinder::Heuristic,
                    },
                },
                output: a.output.out,
                seed: a.seed,
                budget,
            }
        }
        RawCommand::Simulate(a) => ExperimentSpec {
            format: format_of(&a.run.output, Format::Csv, &[Format::Csv, Format::Json])?,
            experiment: Experiment::Schemes(scheme_configs(a.kt, a.nt, a.pe, a.trials, &a.run, "simulate", budget)?),
            output: a.run.output.out.clone(),
            seed: a.run.seed,
            budget,
        },
        RawCommand::Sweep(SweepCommand::Schemes(a)) => ExperimentSpec {
            format: format_of(&a.run.output, Format::Csv, &[Format::Csv, Format::Json])?,
            experiment: Experiment::Schemes(scheme_configs(
                a.kt,
                a.nt,
                a.pe,
                a.trials,
                &a.run,
                "sweep schemes",
                budget,
            )?),
            output: a.run.output.out.clone(),
            seed: a.run.seed,
            budget,
        },
        RawCommand::Sweep(SweepCommand::Bounds(a)) => {
            let seed = require_seed(a.seed, "sweep bounds")?;
            let m0 = if a.m0.is_empty() {
                (0..=10).map(|i| i * 10).collect()
            } else {
                a.m0
            };
            let mut cfg = BoundsSweepConfig::new(a.k, m0, a.trials, seed);
            cfg.t_max = a.t_max.unwrap_or(a.k);
            cfg.budget = budget;
            cfg.parallel = !a.serial;
            ExperimentSpec {
                format: format_of(&a.output, Format::Csv, &[Format::Csv, Format::Json])?,
                experiment: Experiment::BoundsSweep(cfg),
                output: a.output.out,
                seed: Some(seed),
                budget,
            }
        }
    };
    Ok(spec)
}

fn read_input(path: &Path) -> Result<StateFeedbackMatrix, CliError> {
    let text = std::fs::read_to_string(path).map_err(|source| CliError::Io {
        path: path.to_path_buf(),
        source,
    })?;
    let csv = path.extension().is_some_and(|e| e.eq_ignore_ascii_case("csv"));
    let parsed = if csv { sfm_from_csv(&text) } else { sfm_from_json(&text) };
    parsed.map_err(|e: ModelError| CliError::Input {
        path: path.to_path_buf(),
        message: e.to_string(),
    })
}

/// Produces the output document of `spec` without writing it.
pub fn render(spec: &ExperimentSpec) -> Result<String, CliError> {
    match &spec.experiment {
        Experiment::Solve {
            input,
            algorithm,
            feedback,
        } => {
            let sfm = read_input(input)?;
            if sfm.is_empty() {
                return Ok(output::complete_json());
            }
            let report = solve(&sfm, *algorithm, *feedback, &spec.budget)?;
            Ok(output::solve_json(&sfm, &report))
        }
        Experiment::Bounds { source, mode } => {
            let (g, targets, instance) = match source {
                InstanceSource::File(path) => {
                    let sfm = read_input(path)?;
                    if sfm.is_empty() {
                        return Ok(output::complete_json());
                    }
                    let g = IdncGraph::from_sfm(&sfm);
                    let instance = output::Instance::from_sfm(&sfm, &g);
                    (g, sfm.targets(), instance)
                }
                InstanceSource::Random { k, m0, t_max } => {
                    let seed = spec.seed.expect("validated by parse_args");
                    let mut rng = ChaCha8Rng::seed_from_u64(seed);
                    let g = random_graph(*k, *m0, &mut rng)?;
                    let targets: Vec<usize> = (0..*k).map(|_| rng.gen_range(1..=*t_max)).collect();
                    let instance = output::Instance::random(&g, &targets, seed);
                    (g, targets, instance)
                }
            };
            let throughput: ThroughputBounds = crate::bounds::tight_bounds_u(&g, *mode)?;
            let delay = crate::bounds::delay_bounds(&g, &targets, *mode)?;
            Ok(output::bounds_json(&instance, &throughput, &delay))
        }
        Experiment::Schemes(cfgs) => {
            let reports = cfgs.iter().map(monte_carlo_schemes).collect::<Result<Vec<_>, _>>()?;
            Ok(match spec.format {
                Format::Csv => output::schemes_csv(&reports),
                Format::Json => output::to_json(&reports),
            })
        }
        Experiment::BoundsSweep(cfg) => {
            let report = monte_carlo_bounds(cfg)?;
            Ok(match spec.format {
                Format::Csv => output::bounds_sweep_csv(&report),
                Format::Json => output::to_json(&report),
            })
        }
    }
}

/// Runs `spec`, writing to its output file or to standard output.
pub fn run(spec: &ExperimentSpec) -> Result<(), CliError> {
    let text = render(spec)?;
    match &spec.output {
        Some(path) => output::write_atomic(path, &text),
        None => {
            use std::io::Write;
            let mut stdout = std::io::stdout().lock();
            stdout.write_all(text.as_bytes()).map_err(|source| CliError::Io {
                path: PathBuf::from("<stdout>"),
                source,
            })
        }
    }
}

/// Parses, runs and reports; returns the process exit code.
pub fn main_with_args<I, T>(argv: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    match parse_args(argv).and_then(|spec| run(&spec)) {
        Ok(()) => 0,
        Err(CliError::Info(text)) => {
            print!("{text}");
            0
        }
        Err(e) => {
            let text = e.to_string();
            eprintln!("idnc: {}", text.trim_end());
            e.exit_code()
        }
    }
}
