//! Structural analysis reports and the verification runner.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use polarsim::checks::{
    self, check_consensus_value, check_extremal_bounds, check_monotone_extremes,
    check_sum_conservation, sample_path_bounds, PrognosisReport,
};
use polarsim::graph::{
    degroot_matrix, is_balanced, is_radical_config, is_reciprocal, is_regular,
    is_strongly_connected, is_weakly_connected, min_confirmation_bias_factor,
    min_positive_influence, violates_extremes_assumption, DEFAULT_BALANCE_TOL,
};
use polarsim::{simulate, step, Error, SimulationTrace, UpdateKind};

use crate::config::ResolvedScenario;
use crate::CliError;

#[derive(Serialize)]
struct StructureSection {
    balanced: bool,
    weakly_connected: bool,
    strongly_connected: bool,
    reciprocal: bool,
    regular: bool,
    min_positive_influence: f64,
}

#[derive(Serialize)]
struct BeliefSection {
    mean: f64,
    spread: f64,
    radical: bool,
    violates_extremes_assumption: bool,
    min_confirmation_bias_factor: f64,
}

#[derive(Serialize)]
struct PrognosisSection {
    discretization: Vec<f64>,
    balanced: bool,
    weakly_connected: bool,
    radical: bool,
    predicted_consensus: Option<f64>,
    borderline_risk: Option<f64>,
}

#[derive(Serialize)]
pub struct AnalysisReport {
    n: usize,
    update: &'static str,
    structure: StructureSection,
    beliefs: BeliefSection,
    prognosis: Vec<PrognosisSection>,
}

fn update_name(kind: UpdateKind) -> &'static str {
    match kind {
        UpdateKind::ConfirmationBias => "confirmation-bias",
        UpdateKind::Classical => "classical",
    }
}

/// All structural predicates of the scenario plus one prognosis per
/// configured discretization.
pub fn analyze(scenario: &ResolvedScenario) -> AnalysisReport {
    let graph = &scenario.graph;
    let config = &scenario.config;
    let prognosis = scenario
        .discretizations
        .iter()
        .map(|disc| {
            let PrognosisReport {
                balanced,
                weakly_connected,
                radical,
                predicted_consensus,
                borderline_risk,
            } = checks::prognosis(graph, config, disc, scenario.kind);
            PrognosisSection {
                discretization: disc.boundaries().to_vec(),
                balanced,
                weakly_connected,
                radical,
                predicted_consensus,
                borderline_risk,
            }
        })
        .collect();
    AnalysisReport {
        n: graph.n(),
        update: update_name(scenario.kind),
        structure: StructureSection {
            balanced: is_balanced(graph, DEFAULT_BALANCE_TOL),
            weakly_connected: is_weakly_connected(graph),
            strongly_connected: is_strongly_connected(graph),
            reciprocal: is_reciprocal(graph),
            regular: is_regular(graph),
            min_positive_influence: min_positive_influence(graph),
        },
        beliefs: BeliefSection {
            mean: config.mean(),
            spread: config.spread(),
            radical: is_radical_config(config),
            violates_extremes_assumption: violates_extremes_assumption(config),
            min_confirmation_bias_factor: min_confirmation_bias_factor(config),
        },
        prognosis,
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CheckName {
    ExtremalBounds,
    MonotoneExtremes,
    PathBound,
    ConsensusValue,
    DegrootEquivalence,
    SumConservation,
}

impl CheckName {
    pub const ALL: [CheckName; 6] = [
        CheckName::ExtremalBounds,
        CheckName::MonotoneExtremes,
        CheckName::PathBound,
        CheckName::ConsensusValue,
        CheckName::DegrootEquivalence,
        CheckName::SumConservation,
    ];

    pub fn parse(name: &str) -> Result<Self, CliError> {
        match name {
            "extremal-bounds" => Ok(Self::ExtremalBounds),
            "monotone-extremes" => Ok(Self::MonotoneExtremes),
            "path-bound" => Ok(Self::PathBound),
            "consensus-value" => Ok(Self::ConsensusValue),
            "degroot-equivalence" => Ok(Self::DegrootEquivalence),
            "sum-conservation" => Ok(Self::SumConservation),
            other => Err(CliError::Config(format!(
                "checks: unknown check {other:?} (expected one of: {})",
                Self::ALL.map(|c| c.label()).join(", ")
            ))),
        }
    }

    pub fn label(self) -> &'static str {
        match self {
            Self::ExtremalBounds => "extremal-bounds",
            Self::MonotoneExtremes => "monotone-extremes",
            Self::PathBound => "path-bound",
            Self::ConsensusValue => "consensus-value",
            Self::DegrootEquivalence => "degroot-equivalence",
            Self::SumConservation => "sum-conservation",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Outcome {
    Pass(String),
    Fail(String),
    /// The theorem behind the check does not apply to this scenario.
    Unmet(String),
}

impl std::fmt::Display for Outcome {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Outcome::Pass(detail) => write!(f, "PASS ({detail})"),
            Outcome::Fail(detail) => write!(f, "FAIL ({detail})"),
            Outcome::Unmet(detail) => write!(f, "NOT APPLICABLE ({detail})"),
        }
    }
}

fn verdict_outcome(result: Result<checks::Verdict, Error>) -> Outcome {
    match result {
        Ok(v) if v.pass => Outcome::Pass(v.detail),
        Ok(v) => Outcome::Fail(v.detail),
        Err(Error::HypothesesUnmet(reason)) => Outcome::Unmet(reason),
        Err(e) => Outcome::Fail(e.to_string()),
    }
}

const SUM_PER_STEP_TOL: f64 = 1e-10;
const SUM_TOTAL_TOL: f64 = 1e-7;
const DEGROOT_STEPS: usize = 30;
const DEGROOT_TOL: f64 = 1e-12;

fn degroot_equivalence(scenario: &ResolvedScenario) -> Outcome {
    let matrix = degroot_matrix(&scenario.graph);
    let mut beliefs = scenario.config.clone();
    let mut worst = 0.0f64;
    for _ in 0..DEGROOT_STEPS {
        let by_matrix = matrix
            .apply(beliefs.values())
            .expect("matrix matches graph size");
        let by_step = step(&beliefs, &scenario.graph, UpdateKind::Classical)
            .expect("dimensions validated at resolve time");
        for (a, b) in by_step.values().iter().zip(&by_matrix) {
            worst = worst.max((a - b).abs());
        }
        beliefs = by_step;
    }
    let detail = format!(
        "max deviation {worst:.3e} over {DEGROOT_STEPS} classical steps (tol {DEGROOT_TOL:.0e})"
    );
    if worst <= DEGROOT_TOL {
        Outcome::Pass(detail)
    } else {
        Outcome::Fail(detail)
    }
}

fn sum_conservation(scenario: &ResolvedScenario, trace: &SimulationTrace) -> Outcome {
    let symmetric = checks::prognosis(
        &scenario.graph,
        &scenario.config,
        &scenario.discretizations[0],
        scenario.kind,
    )
    .predicted_consensus
    .is_some();
    if !symmetric {
        return Outcome::Unmet(
            "belief-mass conservation is only guaranteed on regular graphs with \
             reciprocal (confirmation-bias) or balanced (classical) influence"
                .into(),
        );
    }
    let verdict = check_sum_conservation(trace, SUM_PER_STEP_TOL, SUM_TOTAL_TOL);
    if verdict.pass {
        Outcome::Pass(verdict.detail)
    } else {
        Outcome::Fail(verdict.detail)
    }
}

/// Runs the requested checks against one simulation of the scenario.
/// Path-bound sampling is seeded for reproducible runs.
pub fn run_checks(
    scenario: &ResolvedScenario,
    names: &[CheckName],
    seed: u64,
    samples: usize,
) -> Result<Vec<(CheckName, Outcome)>, CliError> {
    let trace = simulate(
        &scenario.config,
        &scenario.graph,
        scenario.kind,
        scenario.max_steps,
        scenario.tolerance,
        &scenario.discretizations,
        &scenario.params,
    )
    .map_err(|e| CliError::Config(e.to_string()))?;

    let results = names
        .iter()
        .map(|&name| {
            let outcome = match name {
                CheckName::ExtremalBounds => {
                    if check_extremal_bounds(&trace) {
                        Outcome::Pass("beliefs stay within the previous step's extremes".into())
                    } else {
                        Outcome::Fail("a belief escaped the previous step's extremes".into())
                    }
                }
                CheckName::MonotoneExtremes => {
                    if check_monotone_extremes(&trace) {
                        Outcome::Pass("max never rises, min never falls".into())
                    } else {
                        Outcome::Fail("extremes moved outward along the trace".into())
                    }
                }
                CheckName::PathBound => {
                    let mut rng = ChaCha8Rng::seed_from_u64(seed);
                    verdict_outcome(sample_path_bounds(
                        &trace,
                        &scenario.graph,
                        samples,
                        &mut rng,
                    ))
                }
                CheckName::ConsensusValue => match check_consensus_value(
                    &scenario.graph,
                    &scenario.config,
                    scenario.kind,
                    scenario.max_steps,
                ) {
                    Ok(v) => {
                        let detail = format!(
                            "predicted {}, observed {}, max deviation {:.3e} after {} steps",
                            v.predicted, v.observed, v.max_deviation, v.steps
                        );
                        if v.pass {
                            Outcome::Pass(detail)
                        } else {
                            Outcome::Fail(detail)
                        }
                    }
                    Err(Error::HypothesesUnmet(reason)) => Outcome::Unmet(reason),
                    Err(e) => Outcome::Fail(e.to_string()),
                },
                CheckName::DegrootEquivalence => degroot_equivalence(scenario),
                CheckName::SumConservation => sum_conservation(scenario, &trace),
            };
            (name, outcome)
        })
        .collect();
    Ok(results)
}
