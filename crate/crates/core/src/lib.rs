//! Deterministic simulation and analysis of multi-agent belief dynamics on
//! weighted influence graphs.
//!
//! Agents hold a confidence value in `[0, 1]` about a single proposition and
//! synchronously average their neighbors' opinions, either plainly
//! ([`UpdateKind::Classical`]) or discounted by opinion distance
//! ([`UpdateKind::ConfirmationBias`]). Polarization of the resulting belief
//! configurations is tracked with the Esteban–Ray measure over a configurable
//! discretization of the belief space.
//!
//! Module map:
//! - [`model`]: belief configurations, influence graphs, discretizations.
//! - [`polarization`]: the Esteban–Ray measure and its k-bin lift.
//! - [`dynamics`]: one-step updates and the simulation loop.
//! - [`graph`]: connectivity, flow balance, symmetry, influence paths, and
//!   the stochastic-matrix form of the classical update.
//! - [`checks`]: executable verifiers for the convergence, consensus, and
//!   conservation guarantees.
//! - [`scenarios`]: standard initial beliefs and topologies.
//! - [`testkit`]: seeded generators for tests and benchmarks.

// `!(x > 0.0)` style checks double as NaN rejection
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod checks;
pub mod dynamics;
mod error;
pub mod graph;
pub mod model;
pub mod polarization;
pub mod scenarios;
pub mod testkit;

pub use dynamics::{simulate, step, SimStatus, SimulationTrace, StepRecord};
pub use error::{Error, Result};
pub use model::{
    belief_distribution, AgentId, BeliefConfig, BeliefDistribution, Discretization, InfluenceGraph,
    UpdateKind,
};
pub use polarization::{esteban_ray, is_zero_polarization, kbin_polarization, PolarizationParams};
