//! One-step belief updates and the multi-step simulation loop.
//!
//! Both update rules move each agent toward a weighted average of its
//! neighbors' opinions; the confirmation-bias rule additionally discounts
//! each neighbor by how far its opinion sits from the agent's own.

use crate::error::{Error, Result};
use crate::model::{AgentId, BeliefConfig, Discretization, InfluenceGraph, UpdateKind};
use crate::polarization::{kbin_polarization, PolarizationParams};

/// Default per-step movement threshold for convergence detection.
pub const DEFAULT_TOLERANCE: f64 = 1e-8;
/// Default step budget.
pub const DEFAULT_MAX_STEPS: usize = 100_000;

/// Similarity weight `1 - |b_j - b_i|`; 1 for identical beliefs, 0 for
/// extreme opposites. Symmetric in its arguments.
pub fn confirmation_bias_factor(b_i: f64, b_j: f64) -> f64 {
    1.0 - (b_j - b_i).abs()
}

/// State of one simulation step: the beliefs plus the summary statistics
/// recorded for it.
#[derive(Debug, Clone, PartialEq)]
pub struct StepRecord {
    pub t: usize,
    pub beliefs: BeliefConfig,
    /// Max minus min belief at this step.
    pub spread: f64,
    /// One polarization value per configured discretization.
    pub polarization: Vec<f64>,
}

/// How a simulation ended.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SimStatus {
    /// Per-step movement dropped below tolerance at this step.
    Converged {
        at_step: usize,
    },
    MaxStepsReached,
}

/// Recorded run of the dynamics, one record per step starting at `t = 0`.
#[derive(Debug, Clone, PartialEq)]
pub struct SimulationTrace {
    pub records: Vec<StepRecord>,
    pub status: SimStatus,
    pub update_kind: UpdateKind,
}

impl SimulationTrace {
    pub fn final_record(&self) -> &StepRecord {
        self.records.last().expect("trace has a record for t = 0")
    }

    pub fn final_beliefs(&self) -> &BeliefConfig {
        &self.final_record().beliefs
    }

    pub fn steps(&self) -> usize {
        self.records.len() - 1
    }

    pub fn converged(&self) -> bool {
        matches!(self.status, SimStatus::Converged { .. })
    }
}

/// Applies one synchronous update: every agent reads the time-`t` snapshot
/// and writes its time-`t+1` belief.
///
/// Under `ConfirmationBias`, agent `i` moves by the average over its
/// neighbors `j` of `factor(i, j) * weight(j, i) * (b_j - b_i)`; `Classical`
/// replaces the factor with 1. Outputs provably stay within the previous
/// step's belief range, so no clamping is applied.
pub fn step(
    config: &BeliefConfig,
    graph: &InfluenceGraph,
    kind: UpdateKind,
) -> Result<BeliefConfig> {
    if config.n() != graph.n() {
        return Err(Error::DimensionMismatch {
            graph: graph.n(),
            config: config.n(),
        });
    }
    let neighbors = graph.neighbor_lists();
    Ok(BeliefConfig::from_update(step_values(
        config.values(),
        graph,
        &neighbors,
        kind,
    )))
}

/// Inner update on raw values; `neighbors` must come from `graph`.
fn step_values(
    beliefs: &[f64],
    graph: &InfluenceGraph,
    neighbors: &[Vec<AgentId>],
    kind: UpdateKind,
) -> Vec<f64> {
    beliefs
        .iter()
        .enumerate()
        .map(|(i, &b_i)| {
            // ascending neighbor order, one final division: keeps runs
            // bit-for-bit reproducible on a given platform
            let mut correction = 0.0;
            for &j in &neighbors[i] {
                let factor = match kind {
                    UpdateKind::ConfirmationBias => confirmation_bias_factor(b_i, beliefs[j]),
                    UpdateKind::Classical => 1.0,
                };
                correction += factor * graph.weight(j, i) * (beliefs[j] - b_i);
            }
            b_i + correction / neighbors[i].len() as f64
        })
        .collect()
}

/// Iterates `step` from `config0`, recording spread and per-discretization
/// polarization at every step including `t = 0`.
///
/// The run is declared converged at the first step whose maximum per-agent
/// movement falls below `tol`; otherwise it stops after `max_steps` steps.
#[allow(clippy::too_many_arguments)]
pub fn simulate(
    config0: &BeliefConfig,
    graph: &InfluenceGraph,
    kind: UpdateKind,
    max_steps: usize,
    tol: f64,
    discs: &[Discretization],
    params: &PolarizationParams,
) -> Result<SimulationTrace> {
    if config0.n() != graph.n() {
        return Err(Error::DimensionMismatch {
            graph: graph.n(),
            config: config0.n(),
        });
    }
    if !(tol > 0.0) {
        return Err(Error::InvalidArgument(format!(
            "convergence tolerance must be positive, got {tol}"
        )));
    }
    let neighbors = graph.neighbor_lists();
    let record = |t: usize, beliefs: BeliefConfig| {
        let spread = beliefs.spread();
        let polarization = discs
            .iter()
            .map(|d| kbin_polarization(&beliefs, d, params))
            .collect();
        StepRecord {
            t,
            beliefs,
            spread,
            polarization,
        }
    };

    let mut records = Vec::with_capacity(16);
    records.push(record(0, config0.clone()));
    let mut status = SimStatus::MaxStepsReached;
    for t in 0..max_steps {
        let current = records.last().unwrap().beliefs.values();
        let next = step_values(current, graph, &neighbors, kind);
        let movement = current
            .iter()
            .zip(&next)
            .map(|(a, b)| (a - b).abs())
            .fold(0.0, f64::max);
        records.push(record(t + 1, BeliefConfig::from_update(next)));
        if movement < tol {
            status = SimStatus::Converged { at_step: t + 1 };
            break;
        }
    }
    Ok(SimulationTrace {
        records,
        status,
        update_kind: kind,
    })
}
