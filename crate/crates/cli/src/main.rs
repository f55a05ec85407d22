//! Command-line front end: scenario assembly, simulation runs with trace
//! persistence, structural analysis, and theorem verification.
//!
//! Exit codes: 0 success (simulations: converged), 1 malformed config or
//! arguments, 2 I/O failure, 3 step budget exhausted before convergence.

// `!(x > 0.0)` style checks double as NaN rejection
#![allow(clippy::neg_cmp_op_on_partial_ord)]

mod config;
mod output;
mod report;

use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::sync::atomic::{AtomicUsize, Ordering};
use std::sync::Mutex;

use clap::{Parser, Subcommand};

use polarsim::scenarios::{self, NamedExample};
use polarsim::{simulate, SimStatus, SimulationTrace};

use config::{
    BeliefSpec, DiscSpec, InfluenceSpec, PolarizationSpec, ScenarioConfig, UpdateSpec,
    SCHEMA_VERSION,
};
use output::TraceFormat;
use report::CheckName;

#[derive(Debug)]
pub enum CliError {
    Config(String),
    Io(String),
}

impl std::fmt::Display for CliError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            CliError::Config(msg) | CliError::Io(msg) => write!(f, "{msg}"),
        }
    }
}

impl CliError {
    fn exit_code(&self) -> ExitCode {
        match self {
            CliError::Config(_) => ExitCode::from(1),
            CliError::Io(_) => ExitCode::from(2),
        }
    }
}

#[derive(Parser)]
#[command(
    name = "polarsim",
    version,
    about = "Simulate and analyze belief dynamics on weighted influence graphs"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run scenarios and write their traces
    Simulate {
        /// Scenario config files (JSON)
        #[arg(required = true)]
        configs: Vec<PathBuf>,
        /// Trace file (one config) or directory (several configs); no trace
        /// is written when omitted
        #[arg(long)]
        output: Option<PathBuf>,
        /// Trace format: csv or jsonl
        #[arg(long, default_value = "csv")]
        format: String,
        /// Worker threads when several configs are given
        #[arg(long, default_value_t = 1)]
        jobs: usize,
    },
    /// Print structural predicates and the prognosis as one JSON object
    Analyze { config: PathBuf },
    /// Run theorem verifiers against a scenario
    Verify {
        config: PathBuf,
        /// Comma-separated checks (default: all): extremal-bounds,
        /// monotone-extremes, path-bound, consensus-value,
        /// degroot-equivalence, sum-conservation
        #[arg(long, value_delimiter = ',')]
        checks: Vec<String>,
        /// Seed for sampled checks
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Sampled (path, step) pairs for the path-bound check
        #[arg(long, default_value_t = 200)]
        samples: usize,
    },
    /// Emit a scenario config for a graph preset or a named example
    Scenario {
        /// clique | circular | disconnected | faint | unrelenting |
        /// malleable | vaccine | borderline
        name: String,
        /// Number of agents (graph presets only; default 100)
        #[arg(long)]
        agents: Option<usize>,
        /// Initial beliefs (graph presets only; default uniform)
        #[arg(long)]
        init: Option<String>,
        /// Output path (stdout when omitted)
        #[arg(long)]
        emit: Option<PathBuf>,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Simulate {
            configs,
            output,
            format,
            jobs,
        } => cmd_simulate(&configs, output.as_deref(), &format, jobs),
        Command::Analyze { config } => cmd_analyze(&config),
        Command::Verify {
            config,
            checks,
            seed,
            samples,
        } => cmd_verify(&config, &checks, seed, samples),
        Command::Scenario {
            name,
            agents,
            init,
            emit,
        } => cmd_scenario(&name, agents, init.as_deref(), emit.as_deref()),
    };
    match result {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            e.exit_code()
        }
    }
}

fn load_scenario(path: &Path) -> Result<(ScenarioConfig, config::ResolvedScenario), CliError> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| CliError::Io(format!("cannot read {}: {e}", path.display())))?;
    let parsed =
        config::parse(&text).map_err(|e| CliError::Config(format!("{}: {e}", path.display())))?;
    let resolved = config::resolve(&parsed)
        .map_err(|e| CliError::Config(format!("{}: {e}", path.display())))?;
    Ok((parsed, resolved))
}

fn run_scenario(resolved: &config::ResolvedScenario) -> SimulationTrace {
    simulate(
        &resolved.config,
        &resolved.graph,
        resolved.kind,
        resolved.max_steps,
        resolved.tolerance,
        &resolved.discretizations,
        &resolved.params,
    )
    .expect("resolved scenarios are dimensionally consistent")
}

fn simulate_one(
    path: &Path,
    target: Option<&Path>,
    format: TraceFormat,
) -> Result<(String, SimStatus), CliError> {
    let (_, resolved) = load_scenario(path)?;
    let trace = run_scenario(&resolved);
    if let Some(target) = target {
        output::write_trace(&trace, format, target)?;
    }
    Ok((
        output::summary_line(&path.display().to_string(), &trace),
        trace.status,
    ))
}

fn trace_targets(
    configs: &[PathBuf],
    output: Option<&Path>,
    format: TraceFormat,
) -> Result<Vec<Option<PathBuf>>, CliError> {
    let Some(output) = output else {
        return Ok(vec![None; configs.len()]);
    };
    if configs.len() == 1 {
        return Ok(vec![Some(output.to_path_buf())]);
    }
    // several configs: the output is a directory, one trace per config
    std::fs::create_dir_all(output)
        .map_err(|e| CliError::Io(format!("cannot create {}: {e}", output.display())))?;
    let stems: Vec<String> = configs
        .iter()
        .enumerate()
        .map(|(index, path)| {
            path.file_stem()
                .map(|s| s.to_string_lossy().into_owned())
                .unwrap_or_else(|| format!("run-{index}"))
        })
        .collect();
    Ok(stems
        .iter()
        .enumerate()
        .map(|(index, stem)| {
            // disambiguate colliding stems so no trace overwrites another
            let name = if stems.iter().filter(|s| *s == stem).count() > 1 {
                format!("{stem}-{index}")
            } else {
                stem.clone()
            };
            Some(output.join(format!("{name}.trace.{}", format.extension())))
        })
        .collect())
}

fn cmd_simulate(
    configs: &[PathBuf],
    output: Option<&Path>,
    format: &str,
    jobs: usize,
) -> Result<ExitCode, CliError> {
    let format = TraceFormat::parse(format)?;
    let targets = trace_targets(configs, output, format)?;

    type RunResult = Result<(String, SimStatus), CliError>;
    let results: Mutex<Vec<Option<RunResult>>> =
        Mutex::new((0..configs.len()).map(|_| None).collect());
    let next = AtomicUsize::new(0);
    let workers = jobs.max(1).min(configs.len());
    std::thread::scope(|scope| {
        for _ in 0..workers {
            scope.spawn(|| loop {
                let index = next.fetch_add(1, Ordering::Relaxed);
                if index >= configs.len() {
                    break;
                }
                let outcome = simulate_one(&configs[index], targets[index].as_deref(), format);
                results.lock().unwrap()[index] = Some(outcome);
            });
        }
    });

    let mut any_config_error = false;
    let mut any_io_error = false;
    let mut any_budget_exhausted = false;
    for result in results.into_inner().unwrap() {
        match result.expect("every config was processed") {
            Ok((summary, status)) => {
                println!("{summary}");
                any_budget_exhausted |= status == SimStatus::MaxStepsReached;
            }
            Err(e) => {
                eprintln!("error: {e}");
                match e {
                    CliError::Config(_) => any_config_error = true,
                    CliError::Io(_) => any_io_error = true,
                }
            }
        }
    }
    Ok(if any_io_error {
        ExitCode::from(2)
    } else if any_config_error {
        ExitCode::from(1)
    } else if any_budget_exhausted {
        ExitCode::from(3)
    } else {
        ExitCode::SUCCESS
    })
}

fn cmd_analyze(path: &Path) -> Result<ExitCode, CliError> {
    let (_, resolved) = load_scenario(path)?;
    let report = report::analyze(&resolved);
    println!(
        "{}",
        serde_json::to_string_pretty(&report).expect("report serializes")
    );
    Ok(ExitCode::SUCCESS)
}

fn cmd_verify(
    path: &Path,
    checks: &[String],
    seed: u64,
    samples: usize,
) -> Result<ExitCode, CliError> {
    let names: Vec<CheckName> = if checks.is_empty() {
        CheckName::ALL.to_vec()
    } else {
        checks
            .iter()
            .map(|c| CheckName::parse(c))
            .collect::<Result<_, _>>()?
    };
    let (_, resolved) = load_scenario(path)?;
    let results = report::run_checks(&resolved, &names, seed, samples)?;
    let mut passed = 0;
    let mut failed = 0;
    let mut unmet = 0;
    for (name, outcome) in &results {
        println!("{}: {outcome}", name.label());
        match outcome {
            report::Outcome::Pass(_) => passed += 1,
            report::Outcome::Fail(_) => failed += 1,
            report::Outcome::Unmet(_) => unmet += 1,
        }
    }
    println!("verify: {passed} passed, {failed} failed, {unmet} not applicable");
    Ok(if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    })
}

fn identity_matrix(n: usize) -> Vec<Vec<f64>> {
    (0..n)
        .map(|i| (0..n).map(|j| if i == j { 1.0 } else { 0.0 }).collect())
        .collect()
}

fn disc_specs(example: &NamedExample) -> Vec<DiscSpec> {
    example
        .discretizations
        .iter()
        .map(|d| {
            let boundaries = d.boundaries();
            let k = boundaries.len() - 1;
            let equal = polarsim::Discretization::equal_bins(k)
                .map(|e| e.boundaries() == boundaries)
                .unwrap_or(false);
            if equal {
                DiscSpec::Bins(k)
            } else {
                DiscSpec::Boundaries(boundaries.to_vec())
            }
        })
        .collect()
}

fn scenario_config(
    name: &str,
    agents: Option<usize>,
    init: Option<&str>,
) -> Result<ScenarioConfig, CliError> {
    const GRAPH_PRESETS: [&str; 6] = [
        "clique",
        "circular",
        "disconnected",
        "faint",
        "unrelenting",
        "malleable",
    ];
    if GRAPH_PRESETS.contains(&name) {
        return Ok(ScenarioConfig {
            schema_version: SCHEMA_VERSION,
            n: agents.unwrap_or(100),
            beliefs: BeliefSpec::Preset(init.unwrap_or("uniform").to_string()),
            influence: InfluenceSpec::Preset(name.to_string()),
            update: UpdateSpec::ConfirmationBias,
            max_steps: polarsim::dynamics::DEFAULT_MAX_STEPS,
            tolerance: polarsim::dynamics::DEFAULT_TOLERANCE,
            polarization: PolarizationSpec::default(),
            notes: None,
        });
    }
    match scenarios::named_example(name) {
        Ok(example) => {
            if agents.is_some() || init.is_some() {
                return Err(CliError::Config(format!(
                    "scenario {name:?} fixes its agents and beliefs; drop --agents/--init"
                )));
            }
            let influence = if name == "vaccine" {
                // the example specifies no weights; leave a placeholder for
                // the user to fill in
                InfluenceSpec::Matrix(identity_matrix(example.beliefs.n()))
            } else {
                InfluenceSpec::Preset("clique".to_string())
            };
            Ok(ScenarioConfig {
                schema_version: SCHEMA_VERSION,
                n: example.beliefs.n(),
                beliefs: BeliefSpec::Explicit(example.beliefs.values().to_vec()),
                influence,
                update: UpdateSpec::ConfirmationBias,
                max_steps: polarsim::dynamics::DEFAULT_MAX_STEPS,
                tolerance: polarsim::dynamics::DEFAULT_TOLERANCE,
                polarization: PolarizationSpec {
                    discretizations: disc_specs(&example),
                    ..PolarizationSpec::default()
                },
                notes: Some(example.notes.to_string()),
            })
        }
        Err(_) => Err(CliError::Config(format!(
            "unknown scenario {name:?}; expected a graph preset ({}) or a named \
             example (vaccine, borderline)",
            GRAPH_PRESETS.join(", ")
        ))),
    }
}

fn cmd_scenario(
    name: &str,
    agents: Option<usize>,
    init: Option<&str>,
    emit: Option<&Path>,
) -> Result<ExitCode, CliError> {
    let scenario = scenario_config(name, agents, init)?;
    // never emit a config that cannot be loaded back
    config::resolve(&scenario)?;
    let text = config::to_json(&scenario);
    match emit {
        Some(path) => std::fs::write(path, text)
            .map_err(|e| CliError::Io(format!("cannot write {}: {e}", path.display())))?,
        None => print!("{text}"),
    }
    Ok(ExitCode::SUCCESS)
}
