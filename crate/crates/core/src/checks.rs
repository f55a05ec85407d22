//! Executable verifiers for the structural results the dynamics are known to
//! satisfy: per-trace invariants, convergence and consensus predictions, and
//! conservation laws.
//!
//! Limit statements are checked through finite surrogates: a step budget and
//! a spread target, both reported in the verdict so a failure distinguishes
//! "diverged" from "budget too small".

use rand::Rng;

use crate::dynamics::{simulate, SimulationTrace, StepRecord};
use crate::error::{Error, Result};
use crate::graph::{
    is_balanced, is_radical_config, is_reciprocal, is_regular, is_strongly_connected,
    is_weakly_connected, min_confirmation_bias_factor, shortest_path, InfluencePath,
    DEFAULT_BALANCE_TOL,
};
use crate::model::{BeliefConfig, Discretization, InfluenceGraph, UpdateKind};
use crate::polarization::PolarizationParams;

/// Slack for float accumulation when checking exact inequalities on traces.
pub const FLOAT_SLACK: f64 = 1e-12;
/// A trace counts as having reached a common limit when its spread falls
/// below this.
pub const LIMIT_SPREAD_TOL: f64 = 1e-6;
/// A predicted limit this close to a bin boundary is flagged as borderline.
pub const BORDERLINE_TOL: f64 = 1e-6;
/// Default step budget for limit checks.
pub const DEFAULT_BUDGET: usize = 100_000;
/// Default number of sampled (path, step) pairs for the path-bound check.
pub const DEFAULT_PATH_BOUND_SAMPLES: usize = 200;

// movement threshold used when a check needs to run the dynamics itself;
// well below the spread target so the run does not stop early
const CHECK_MOVEMENT_TOL: f64 = 1e-9;

/// Structural flags of a scenario plus the consensus prediction they
/// license, if any.
#[derive(Debug, Clone, PartialEq)]
pub struct PrognosisReport {
    pub balanced: bool,
    pub weakly_connected: bool,
    pub radical: bool,
    /// Mean of the initial beliefs, present only when the symmetry
    /// hypotheses guarantee convergence to it.
    pub predicted_consensus: Option<f64>,
    /// The borderline point within [`BORDERLINE_TOL`] of the predicted
    /// consensus, if one exists; convergence onto a bin boundary can keep
    /// polarization from vanishing.
    pub borderline_risk: Option<f64>,
}

/// Outcome of a single verifier run.
#[derive(Debug, Clone, PartialEq)]
pub struct Verdict {
    pub pass: bool,
    pub detail: String,
}

/// Outcome of the consensus-value check, with the observed limit.
#[derive(Debug, Clone, PartialEq)]
pub struct ConsensusVerdict {
    pub pass: bool,
    pub predicted: f64,
    /// Mean of the final beliefs.
    pub observed: f64,
    /// Largest final distance of any agent from the prediction.
    pub max_deviation: f64,
    pub steps: usize,
}

fn consensus_hypotheses(graph: &InfluenceGraph, kind: UpdateKind) -> bool {
    if !is_regular(graph) || !is_weakly_connected(graph) {
        return false;
    }
    match kind {
        UpdateKind::ConfirmationBias => is_reciprocal(graph),
        UpdateKind::Classical => is_balanced(graph, DEFAULT_BALANCE_TOL),
    }
}

/// Classifies a scenario before running it: balance, connectivity,
/// radicality, and — when the symmetry hypotheses hold for the chosen update
/// — the predicted consensus value together with its borderline risk under
/// `disc`.
pub fn prognosis(
    graph: &InfluenceGraph,
    config0: &BeliefConfig,
    disc: &Discretization,
    kind: UpdateKind,
) -> PrognosisReport {
    let predicted_consensus = consensus_hypotheses(graph, kind).then(|| config0.mean());
    let borderline_risk = predicted_consensus.and_then(|v| {
        disc.borderlines()
            .iter()
            .copied()
            .find(|c| (v - c).abs() < BORDERLINE_TOL)
    });
    PrognosisReport {
        balanced: is_balanced(graph, DEFAULT_BALANCE_TOL),
        weakly_connected: is_weakly_connected(graph),
        radical: is_radical_config(config0),
        predicted_consensus,
        borderline_risk,
    }
}

fn min_max(record: &StepRecord) -> (f64, f64) {
    (record.beliefs.min(), record.beliefs.max())
}

/// True iff every belief at every step stays within the previous step's
/// extremes, up to float slack.
pub fn check_extremal_bounds(trace: &SimulationTrace) -> bool {
    trace.records.windows(2).all(|pair| {
        let (mn, mx) = min_max(&pair[0]);
        pair[1]
            .beliefs
            .values()
            .iter()
            .all(|&b| b >= mn - FLOAT_SLACK && b <= mx + FLOAT_SLACK)
    })
}

/// True iff the maximum belief never rises and the minimum never falls along
/// the trace, up to float slack.
pub fn check_monotone_extremes(trace: &SimulationTrace) -> bool {
    trace.records.windows(2).all(|pair| {
        let (mn0, mx0) = min_max(&pair[0]);
        let (mn1, mx1) = min_max(&pair[1]);
        mx1 <= mx0 + FLOAT_SLACK && mn1 >= mn0 - FLOAT_SLACK
    })
}

/// Verifies that influence traveling along `path` caps the endpoint's belief:
/// with `p = path.size()`, `C` the path's product influence, and `n` the
/// number of agents,
///
/// ```text
/// B_end(t + p) <= max(t) + (C * beta_min^p / n^p) * (B_start(t) - max(t))
/// ```
///
/// `beta_min` must be the minimal confirmation-bias factor of the initial
/// configuration and must be positive, i.e. no agent may hold belief 0
/// while another holds belief 1.
pub fn check_path_bound(
    trace: &SimulationTrace,
    path: &InfluencePath,
    t: usize,
    beta_min: f64,
) -> Result<bool> {
    if !(beta_min > 0.0) {
        return Err(Error::HypothesesUnmet(format!(
            "minimal confirmation-bias factor must be positive, got {beta_min}; \
             the configuration holds beliefs of exactly 0 and 1"
        )));
    }
    let hops = path.size();
    let Some(record_end) = trace.records.get(t + hops) else {
        return Err(Error::InvalidArgument(format!(
            "trace has {} records; need step {} for a {}-hop path starting at step {t}",
            trace.records.len(),
            t + hops,
            hops
        )));
    };
    let record_start = &trace.records[t];
    let n = record_start.beliefs.n() as f64;
    let (_, mx) = min_max(record_start);
    let shrink = path.product_influence() * beta_min.powi(hops as i32) / n.powi(hops as i32);
    let bound = mx + shrink * (record_start.beliefs[path.start()] - mx);
    Ok(record_end.beliefs[path.end()] <= bound + FLOAT_SLACK)
}

/// Samples up to `max_samples` random (path, step) pairs on a strongly
/// connected graph and checks the path bound for each.
pub fn sample_path_bounds(
    trace: &SimulationTrace,
    graph: &InfluenceGraph,
    max_samples: usize,
    rng: &mut impl Rng,
) -> Result<Verdict> {
    if !is_strongly_connected(graph) {
        return Err(Error::HypothesesUnmet(
            "path bounds apply to strongly connected influence graphs".into(),
        ));
    }
    let beta_min = min_confirmation_bias_factor(&trace.records[0].beliefs);
    if !(beta_min > 0.0) {
        return Err(Error::HypothesesUnmet(
            "initial configuration holds beliefs of exactly 0 and 1, so the \
             minimal confirmation-bias factor is 0"
                .into(),
        ));
    }
    let n = graph.n();
    let max_t = trace.records.len() - 1;
    let mut checked = 0usize;
    let mut failures = 0usize;
    for _ in 0..max_samples {
        let i = rng.random_range(0..n);
        let j = rng.random_range(0..n - 1);
        let j = if j >= i { j + 1 } else { j };
        let path = shortest_path(graph, i, j).expect("strongly connected");
        if path.size() > max_t {
            continue; // trace too short for this pair
        }
        let t = rng.random_range(0..=max_t - path.size());
        checked += 1;
        if !check_path_bound(trace, &path, t, beta_min)? {
            failures += 1;
        }
    }
    Ok(Verdict {
        pass: failures == 0 && checked > 0,
        detail: format!("{checked} sampled path bounds, {failures} violations"),
    })
}

/// Runs the dynamics and verifies the convergence guarantee for strongly
/// connected graphs: a non-radical start reaches a common limit (spread below
/// [`LIMIT_SPREAD_TOL`] within `budget` steps); a radical start under
/// confirmation bias stays bit-exactly fixed.
pub fn check_convergence_theorem(
    graph: &InfluenceGraph,
    config0: &BeliefConfig,
    kind: UpdateKind,
    budget: usize,
) -> Result<Verdict> {
    if !is_strongly_connected(graph) {
        return Err(Error::HypothesesUnmet(
            "influence graph is not strongly connected".into(),
        ));
    }
    let params = PolarizationParams::default();
    if kind == UpdateKind::ConfirmationBias && is_radical_config(config0) {
        let trace = simulate(config0, graph, kind, budget.min(8), 1e-15, &[], &params)?;
        let fixed = trace.records.iter().all(|r| {
            r.beliefs
                .values()
                .iter()
                .zip(config0.values())
                .all(|(a, b)| a.to_bits() == b.to_bits())
        });
        return Ok(Verdict {
            pass: fixed,
            detail: if fixed {
                "radical configuration is a fixed point".into()
            } else {
                "radical configuration moved under the update".into()
            },
        });
    }
    let trace = simulate(
        config0,
        graph,
        kind,
        budget,
        CHECK_MOVEMENT_TOL,
        &[],
        &params,
    )?;
    let spread = trace.final_record().spread;
    Ok(Verdict {
        pass: spread < LIMIT_SPREAD_TOL,
        detail: format!(
            "final spread {spread:.3e} after {} steps (target < {LIMIT_SPREAD_TOL:.0e}, budget {budget})",
            trace.steps(),
        ),
    })
}

/// Runs the dynamics and verifies that all beliefs approach the average of
/// the initial ones, which the symmetry hypotheses (regular + weakly
/// connected, plus reciprocity under confirmation bias or balance under the
/// classical update) guarantee.
pub fn check_consensus_value(
    graph: &InfluenceGraph,
    config0: &BeliefConfig,
    kind: UpdateKind,
    budget: usize,
) -> Result<ConsensusVerdict> {
    if !consensus_hypotheses(graph, kind) {
        return Err(Error::HypothesesUnmet(format!(
            "consensus value is only predicted for regular, weakly connected graphs \
             that are {}",
            match kind {
                UpdateKind::ConfirmationBias => "reciprocal (confirmation-bias update)",
                UpdateKind::Classical => "balanced (classical update)",
            }
        )));
    }
    let predicted = config0.mean();
    let trace = simulate(
        config0,
        graph,
        kind,
        budget,
        CHECK_MOVEMENT_TOL,
        &[],
        &PolarizationParams::default(),
    )?;
    let final_beliefs = trace.final_beliefs();
    let max_deviation = final_beliefs
        .values()
        .iter()
        .map(|b| (b - predicted).abs())
        .fold(0.0, f64::max);
    Ok(ConsensusVerdict {
        pass: max_deviation < LIMIT_SPREAD_TOL,
        predicted,
        observed: final_beliefs.mean(),
        max_deviation,
        steps: trace.steps(),
    })
}

/// Verifies that the total belief mass is conserved along a trace: per-step
/// drift below `per_step_tol` and total drift below `total_tol`.
///
/// Conservation is a consequence of symmetry (reciprocal regular graphs under
/// confirmation bias, regular circulations under the classical update); on
/// other scenarios this check is expected to fail.
pub fn check_sum_conservation(
    trace: &SimulationTrace,
    per_step_tol: f64,
    total_tol: f64,
) -> Verdict {
    let sums: Vec<f64> = trace
        .records
        .iter()
        .map(|r| r.beliefs.values().iter().sum())
        .collect();
    let max_step_drift = sums
        .windows(2)
        .map(|pair| (pair[1] - pair[0]).abs())
        .fold(0.0, f64::max);
    let total_drift = (sums[sums.len() - 1] - sums[0]).abs();
    Verdict {
        pass: max_step_drift < per_step_tol && total_drift < total_tol,
        detail: format!(
            "max per-step drift {max_step_drift:.3e} (tol {per_step_tol:.0e}), \
             total drift {total_drift:.3e} (tol {total_tol:.0e})"
        ),
    }
}
