//! Scenario config files: JSON schema, validation, and resolution into core
//! types.

use serde::{Deserialize, Serialize};

use polarsim::scenarios::{self, BeliefPreset, GraphPreset};
use polarsim::{BeliefConfig, Discretization, InfluenceGraph, PolarizationParams, UpdateKind};

use crate::CliError;

pub const SCHEMA_VERSION: u32 = 1;
/// Explicit matrices beyond this size must be given as edge lists.
pub const MAX_EXPLICIT_MATRIX: usize = 64;

fn default_max_steps() -> usize {
    polarsim::dynamics::DEFAULT_MAX_STEPS
}

fn default_tolerance() -> f64 {
    polarsim::dynamics::DEFAULT_TOLERANCE
}

fn default_scale() -> f64 {
    1000.0
}

fn default_alpha() -> f64 {
    1.6
}

fn default_discretizations() -> Vec<DiscSpec> {
    vec![DiscSpec::Bins(5)]
}

/// On-disk scenario description. Unknown fields are rejected.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ScenarioConfig {
    pub schema_version: u32,
    pub n: usize,
    pub beliefs: BeliefSpec,
    pub influence: InfluenceSpec,
    pub update: UpdateSpec,
    #[serde(default = "default_max_steps")]
    pub max_steps: usize,
    #[serde(default = "default_tolerance")]
    pub tolerance: f64,
    #[serde(default)]
    pub polarization: PolarizationSpec,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub notes: Option<String>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(untagged)]
pub enum BeliefSpec {
    Preset(String),
    Explicit(Vec<f64>),
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(untagged)]
pub enum InfluenceSpec {
    Preset(String),
    Matrix(Vec<Vec<f64>>),
    WeightedPreset(WeightedPresetSpec),
    Edges(EdgeListSpec),
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct WeightedPresetSpec {
    pub preset: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub weight: Option<f64>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct EdgeListSpec {
    pub edges: Vec<(usize, usize, f64)>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum UpdateSpec {
    ConfirmationBias,
    Classical,
}

impl From<UpdateSpec> for UpdateKind {
    fn from(spec: UpdateSpec) -> Self {
        match spec {
            UpdateSpec::ConfirmationBias => UpdateKind::ConfirmationBias,
            UpdateSpec::Classical => UpdateKind::Classical,
        }
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PolarizationSpec {
    #[serde(rename = "K", default = "default_scale")]
    pub scale: f64,
    #[serde(default = "default_alpha")]
    pub alpha: f64,
    #[serde(default = "default_discretizations")]
    pub discretizations: Vec<DiscSpec>,
}

impl Default for PolarizationSpec {
    fn default() -> Self {
        Self {
            scale: default_scale(),
            alpha: default_alpha(),
            discretizations: default_discretizations(),
        }
    }
}

/// A bin count (equal widths) or explicit boundaries.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(untagged)]
pub enum DiscSpec {
    Bins(usize),
    Boundaries(Vec<f64>),
}

/// A config resolved into validated core values, ready to run.
#[derive(Debug, Clone)]
pub struct ResolvedScenario {
    pub config: BeliefConfig,
    pub graph: InfluenceGraph,
    pub kind: UpdateKind,
    pub max_steps: usize,
    pub tolerance: f64,
    pub params: PolarizationParams,
    pub discretizations: Vec<Discretization>,
}

pub fn parse(text: &str) -> Result<ScenarioConfig, CliError> {
    let config: ScenarioConfig =
        serde_json::from_str(text).map_err(|e| CliError::Config(format!("config: {e}")))?;
    if config.schema_version != SCHEMA_VERSION {
        return Err(CliError::Config(format!(
            "schema_version: expected {SCHEMA_VERSION}, got {}",
            config.schema_version
        )));
    }
    Ok(config)
}

pub fn to_json(config: &ScenarioConfig) -> String {
    let mut text = serde_json::to_string_pretty(config).expect("config serializes");
    text.push('\n');
    text
}

fn belief_preset(name: &str) -> Option<BeliefPreset> {
    match name {
        "uniform" => Some(BeliefPreset::Uniform),
        "mildly-polarized" => Some(BeliefPreset::MildlyPolarized),
        "extremely-polarized" => Some(BeliefPreset::ExtremelyPolarized),
        "tripolar" => Some(BeliefPreset::Tripolar),
        _ => None,
    }
}

fn graph_preset(name: &str, weight: Option<f64>) -> Result<GraphPreset, CliError> {
    let preset = match (name, weight) {
        ("clique", w) => GraphPreset::Clique(w.unwrap_or(0.5)),
        ("circular", w) => GraphPreset::Circular(w.unwrap_or(0.5)),
        (_, Some(_)) => {
            return Err(CliError::Config(format!(
                "influence.weight: only clique and circular take a weight, not {name:?}"
            )))
        }
        ("disconnected", _) => GraphPreset::Disconnected,
        ("faint", _) => GraphPreset::Faint,
        ("unrelenting", _) => GraphPreset::Unrelenting,
        ("malleable", _) => GraphPreset::Malleable,
        _ => {
            return Err(CliError::Config(format!(
                "influence: unknown graph preset {name:?}"
            )))
        }
    };
    Ok(preset)
}

fn resolve_beliefs(spec: &BeliefSpec, n: usize) -> Result<BeliefConfig, CliError> {
    let preset = match spec {
        BeliefSpec::Preset(name) => belief_preset(name)
            .ok_or_else(|| CliError::Config(format!("beliefs: unknown belief preset {name:?}")))?,
        BeliefSpec::Explicit(values) => BeliefPreset::Explicit(values.clone()),
    };
    scenarios::initial_beliefs(&preset, n).map_err(|e| CliError::Config(e.to_string()))
}

fn resolve_influence(spec: &InfluenceSpec, n: usize) -> Result<InfluenceGraph, CliError> {
    match spec {
        InfluenceSpec::Preset(name) => {
            let preset = graph_preset(name, None)?;
            scenarios::influence_graph(&preset, n)
                .map_err(|e| CliError::Config(format!("influence: {e}")))
        }
        InfluenceSpec::WeightedPreset(spec) => {
            let preset = graph_preset(&spec.preset, spec.weight)?;
            scenarios::influence_graph(&preset, n)
                .map_err(|e| CliError::Config(format!("influence: {e}")))
        }
        InfluenceSpec::Matrix(rows) => {
            if n > MAX_EXPLICIT_MATRIX {
                return Err(CliError::Config(format!(
                    "influence: explicit matrices are limited to n <= {MAX_EXPLICIT_MATRIX}; \
                     use an edge list for n = {n}"
                )));
            }
            if rows.len() != n {
                return Err(CliError::Config(format!(
                    "influence: matrix has {} rows, expected n = {n}",
                    rows.len()
                )));
            }
            InfluenceGraph::from_rows(rows.clone())
                .map_err(|e| CliError::Config(format!("influence: {e}")))
        }
        InfluenceSpec::Edges(spec) => {
            let mut weights = vec![0.0f64; n * n];
            let mut seen = vec![false; n * n];
            for (index, &(i, j, w)) in spec.edges.iter().enumerate() {
                if i >= n || j >= n {
                    return Err(CliError::Config(format!(
                        "influence.edges[{index}]: agent pair ({i}, {j}) out of range for n = {n}"
                    )));
                }
                if i == j {
                    return Err(CliError::Config(format!(
                        "influence.edges[{index}]: self-influence is fixed at 1, drop ({i}, {i})"
                    )));
                }
                if seen[i * n + j] {
                    return Err(CliError::Config(format!(
                        "influence.edges[{index}]: duplicate edge ({i}, {j})"
                    )));
                }
                seen[i * n + j] = true;
                weights[i * n + j] = w;
            }
            InfluenceGraph::from_fn(n, |i, j| weights[i * n + j])
                .map_err(|e| CliError::Config(format!("influence: {e}")))
        }
    }
}

fn resolve_discretization(spec: &DiscSpec, index: usize) -> Result<Discretization, CliError> {
    let result = match spec {
        DiscSpec::Bins(k) => Discretization::equal_bins(*k),
        DiscSpec::Boundaries(bounds) => Discretization::from_boundaries(bounds.clone()),
    };
    result.map_err(|e| CliError::Config(format!("polarization.discretizations[{index}]: {e}")))
}

pub fn resolve(config: &ScenarioConfig) -> Result<ResolvedScenario, CliError> {
    if config.n == 0 {
        return Err(CliError::Config("n: must be at least 1".into()));
    }
    let beliefs = resolve_beliefs(&config.beliefs, config.n)?;
    let graph = resolve_influence(&config.influence, config.n)?;
    if !(config.tolerance > 0.0) {
        return Err(CliError::Config(format!(
            "tolerance: must be positive, got {}",
            config.tolerance
        )));
    }
    let params = PolarizationParams::new(config.polarization.scale, config.polarization.alpha)
        .map_err(|e| CliError::Config(format!("polarization: {e}")))?;
    if config.polarization.discretizations.is_empty() {
        return Err(CliError::Config(
            "polarization.discretizations: need at least one entry".into(),
        ));
    }
    let discretizations = config
        .polarization
        .discretizations
        .iter()
        .enumerate()
        .map(|(i, spec)| resolve_discretization(spec, i))
        .collect::<Result<Vec<_>, _>>()?;
    Ok(ResolvedScenario {
        config: beliefs,
        graph,
        kind: config.update.into(),
        max_steps: config.max_steps,
        tolerance: config.tolerance,
        params,
        discretizations,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn minimal(beliefs: &str, influence: &str) -> String {
        format!(
            r#"{{
  "schema_version": 1,
  "n": 4,
  "beliefs": {beliefs},
  "influence": {influence},
  "update": "confirmation-bias"
}}"#
        )
    }

    #[test]
    fn parses_presets_and_defaults() {
        let config = parse(&minimal("\"uniform\"", "\"clique\"")).unwrap();
        assert_eq!(config.max_steps, 100_000);
        assert_eq!(config.tolerance, 1e-8);
        assert_eq!(config.polarization.scale, 1000.0);
        assert_eq!(config.polarization.alpha, 1.6);
        let resolved = resolve(&config).unwrap();
        assert_eq!(resolved.config.n(), 4);
        assert_eq!(resolved.discretizations.len(), 1);
        assert_eq!(resolved.discretizations[0].k(), 5);
        assert_eq!(resolved.kind, UpdateKind::ConfirmationBias);
    }

    #[test]
    fn rejects_unknown_fields_and_bad_values() {
        assert!(parse(r#"{"schema_version": 1, "n": 2, "beliefs": "uniform", "influence": "clique", "update": "classical", "surprise": 1}"#).is_err());
        assert!(
            parse(&minimal("\"uniform\"", "\"clique\"").replace("confirmation-bias", "both"))
                .is_err()
        );
        let config = parse(&minimal("[0.1, 0.2, 0.3, 1.2]", "\"clique\"")).unwrap();
        let err = resolve(&config).unwrap_err().to_string();
        assert!(err.contains("beliefs[3]"), "diagnostic was: {err}");
    }

    #[test]
    fn rejects_wrong_schema_version() {
        let text = minimal("\"uniform\"", "\"clique\"")
            .replace("\"schema_version\": 1", "\"schema_version\": 2");
        assert!(parse(&text).is_err());
    }

    #[test]
    fn explicit_matrix_and_edge_list_agree() {
        let matrix = minimal(
            "\"uniform\"",
            "[[1.0, 0.5, 0.0, 0.0], [0.0, 1.0, 0.5, 0.0], [0.0, 0.0, 1.0, 0.5], [0.5, 0.0, 0.0, 1.0]]",
        );
        let edges = minimal(
            "\"uniform\"",
            r#"{"edges": [[0, 1, 0.5], [1, 2, 0.5], [2, 3, 0.5], [3, 0, 0.5]]}"#,
        );
        let a = resolve(&parse(&matrix).unwrap()).unwrap();
        let b = resolve(&parse(&edges).unwrap()).unwrap();
        assert_eq!(a.graph, b.graph);
    }

    #[test]
    fn edge_list_diagnostics_carry_paths() {
        let bad = minimal("\"uniform\"", r#"{"edges": [[0, 9, 0.5]]}"#);
        let err = resolve(&parse(&bad).unwrap()).unwrap_err().to_string();
        assert!(err.contains("influence.edges[0]"), "{err}");
        let dup = minimal("\"uniform\"", r#"{"edges": [[0, 1, 0.5], [0, 1, 0.2]]}"#);
        let err = resolve(&parse(&dup).unwrap()).unwrap_err().to_string();
        assert!(err.contains("duplicate"), "{err}");
    }

    #[test]
    fn weighted_preset_applies_only_to_parametric_graphs() {
        let ok = minimal("\"uniform\"", r#"{"preset": "clique", "weight": 0.25}"#);
        let resolved = resolve(&parse(&ok).unwrap()).unwrap();
        assert_eq!(resolved.graph.weight(0, 1), 0.25);
        let bad = minimal("\"uniform\"", r#"{"preset": "faint", "weight": 0.25}"#);
        assert!(resolve(&parse(&bad).unwrap()).is_err());
    }

    #[test]
    fn discretizations_accept_bins_and_boundaries() {
        let text = r#"{
  "schema_version": 1,
  "n": 6,
  "beliefs": [0.0, 0.2, 0.4, 0.6, 0.8, 1.0],
  "influence": "clique",
  "update": "confirmation-bias",
  "polarization": { "K": 1000.0, "alpha": 1.6, "discretizations": [2, [0.0, 0.3333333333333333, 0.6666666666666666, 1.0]] }
}"#;
        let resolved = resolve(&parse(text).unwrap()).unwrap();
        assert_eq!(resolved.discretizations[0].k(), 2);
        assert_eq!(resolved.discretizations[1].k(), 3);
    }

    #[test]
    fn emit_parse_emit_is_byte_identical() {
        let config = ScenarioConfig {
            schema_version: 1,
            n: 100,
            beliefs: BeliefSpec::Preset("uniform".into()),
            influence: InfluenceSpec::Preset("clique".into()),
            update: UpdateSpec::ConfirmationBias,
            max_steps: 100_000,
            tolerance: 1e-8,
            polarization: PolarizationSpec::default(),
            notes: None,
        };
        let first = to_json(&config);
        let reparsed = parse(&first).unwrap();
        assert_eq!(first, to_json(&reparsed));
    }
}
