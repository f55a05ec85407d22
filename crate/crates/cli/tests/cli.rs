//! End-to-end tests of the `polarsim` binary: exit codes, trace files,
//! reports, and determinism.

use std::path::Path;
use std::process::{Command, Output};

fn polarsim(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_polarsim"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(output: &Output) -> String {
    String::from_utf8_lossy(&output.stdout).into_owned()
}

fn stderr(output: &Output) -> String {
    String::from_utf8_lossy(&output.stderr).into_owned()
}

fn write_config(dir: &Path, name: &str, body: &str) -> String {
    let path = dir.join(name);
    std::fs::write(&path, body).unwrap();
    path.display().to_string()
}

const CLIQUE_UNIFORM: &str = r#"{
  "schema_version": 1,
  "n": 50,
  "beliefs": "uniform",
  "influence": "clique",
  "update": "confirmation-bias"
}
"#;

const DISCONNECTED_EXTREME: &str = r#"{
  "schema_version": 1,
  "n": 100,
  "beliefs": "extremely-polarized",
  "influence": "disconnected",
  "update": "confirmation-bias"
}
"#;

#[test]
fn scenario_round_trips_through_simulate() {
    let dir = tempfile::tempdir().unwrap();
    let config_path = dir.path().join("clique.json");
    let emit = polarsim(&[
        "scenario",
        "clique",
        "--agents",
        "40",
        "--init",
        "uniform",
        "--emit",
        config_path.to_str().unwrap(),
    ]);
    assert_eq!(emit.status.code(), Some(0), "{}", stderr(&emit));

    let trace_path = dir.path().join("trace.csv");
    let run = polarsim(&[
        "simulate",
        config_path.to_str().unwrap(),
        "--output",
        trace_path.to_str().unwrap(),
    ]);
    assert_eq!(run.status.code(), Some(0), "{}", stderr(&run));
    let summary = stdout(&run);
    assert!(summary.contains("status=converged"), "{summary}");
    assert!(summary.contains("polarization="), "{summary}");

    let trace = std::fs::read_to_string(&trace_path).unwrap();
    let mut lines = trace.lines();
    let header = lines.next().unwrap();
    assert!(header.starts_with("t,spread,pol_0,belief_0,"));
    assert_eq!(header.split(',').count(), 2 + 1 + 40);
    assert!(lines.next().unwrap().starts_with("0,"));
}

#[test]
fn simulate_is_deterministic_byte_for_byte() {
    let dir = tempfile::tempdir().unwrap();
    let config = write_config(dir.path(), "cfg.json", CLIQUE_UNIFORM);
    let run_once = |name: &str| {
        let path = dir.path().join(name);
        let run = polarsim(&["simulate", &config, "--output", path.to_str().unwrap()]);
        assert_eq!(run.status.code(), Some(0));
        std::fs::read(path).unwrap()
    };
    assert_eq!(run_once("a.csv"), run_once("b.csv"));
}

#[test]
fn disconnected_halves_converge_separately_with_persistent_polarization() {
    let dir = tempfile::tempdir().unwrap();
    let config = write_config(dir.path(), "cfg.json", DISCONNECTED_EXTREME);
    let run = polarsim(&["simulate", &config]);
    // per-step movement dies out once each half agrees internally, so the
    // run converges even though polarization persists
    assert_eq!(run.status.code(), Some(0), "{}", stderr(&run));
    let summary = stdout(&run);
    assert!(summary.contains("status=converged"), "{summary}");
    let polarization: f64 = summary
        .split("polarization=")
        .nth(1)
        .unwrap()
        .trim()
        .parse()
        .unwrap();
    assert!(
        (polarization - 131.95).abs() < 0.5,
        "final polarization {polarization}"
    );
}

#[test]
fn out_of_range_belief_is_rejected_with_field_path() {
    let dir = tempfile::tempdir().unwrap();
    let config = write_config(
        dir.path(),
        "bad.json",
        r#"{
  "schema_version": 1,
  "n": 3,
  "beliefs": [0.1, 0.5, 1.2],
  "influence": "clique",
  "update": "classical"
}
"#,
    );
    let run = polarsim(&["simulate", &config]);
    assert_eq!(run.status.code(), Some(1));
    let message = stderr(&run);
    assert!(message.contains("beliefs[2]"), "{message}");
}

#[test]
fn unreadable_config_is_an_io_error() {
    let run = polarsim(&["simulate", "/nonexistent/config.json"]);
    assert_eq!(run.status.code(), Some(2));
}

#[test]
fn unknown_fields_are_rejected() {
    let dir = tempfile::tempdir().unwrap();
    let config = write_config(
        dir.path(),
        "bad.json",
        r#"{
  "schema_version": 1,
  "n": 3,
  "beliefs": "uniform",
  "influence": "clique",
  "update": "classical",
  "plot": true
}
"#,
    );
    let run = polarsim(&["simulate", &config]);
    assert_eq!(run.status.code(), Some(1));
}

#[test]
fn analyze_reports_structural_predicates() {
    let dir = tempfile::tempdir().unwrap();
    let config = write_config(
        dir.path(),
        "ring.json",
        r#"{
  "schema_version": 1,
  "n": 12,
  "beliefs": "uniform",
  "influence": "circular",
  "update": "confirmation-bias"
}
"#,
    );
    let run = polarsim(&["analyze", &config]);
    assert_eq!(run.status.code(), Some(0));
    let report: serde_json::Value = serde_json::from_str(&stdout(&run)).unwrap();
    assert_eq!(report["structure"]["balanced"], true);
    assert_eq!(report["structure"]["strongly_connected"], true);
    assert_eq!(report["structure"]["reciprocal"], false);
    assert_eq!(report["structure"]["regular"], true);
    // circular is not reciprocal, so no consensus prediction under
    // confirmation bias
    assert_eq!(
        report["prognosis"][0]["predicted_consensus"],
        serde_json::Value::Null
    );
}

#[test]
fn analyze_flags_disconnected_graphs() {
    let dir = tempfile::tempdir().unwrap();
    let config = write_config(dir.path(), "split.json", DISCONNECTED_EXTREME);
    let run = polarsim(&["analyze", &config]);
    assert_eq!(run.status.code(), Some(0));
    let report: serde_json::Value = serde_json::from_str(&stdout(&run)).unwrap();
    assert_eq!(report["structure"]["weakly_connected"], false);
    assert_eq!(report["structure"]["balanced"], true);
}

#[test]
fn exhausted_step_budget_exits_with_three() {
    let dir = tempfile::tempdir().unwrap();
    let config = write_config(
        dir.path(),
        "slow.json",
        r#"{
  "schema_version": 1,
  "n": 10,
  "beliefs": "uniform",
  "influence": "clique",
  "update": "confirmation-bias",
  "max_steps": 5,
  "tolerance": 1e-300
}
"#,
    );
    let run = polarsim(&["simulate", &config]);
    assert_eq!(run.status.code(), Some(3));
    assert!(
        stdout(&run).contains("status=max-steps-reached"),
        "{}",
        stdout(&run)
    );
}

#[test]
fn analyze_classifies_unrelenting_influencers() {
    let dir = tempfile::tempdir().unwrap();
    let config = write_config(
        dir.path(),
        "unrelenting.json",
        r#"{
  "schema_version": 1,
  "n": 20,
  "beliefs": "uniform",
  "influence": "unrelenting",
  "update": "confirmation-bias"
}
"#,
    );
    let run = polarsim(&["analyze", &config]);
    assert_eq!(run.status.code(), Some(0));
    let report: serde_json::Value = serde_json::from_str(&stdout(&run)).unwrap();
    assert_eq!(report["structure"]["balanced"], false);
    assert_eq!(report["structure"]["weakly_connected"], true);
    assert_eq!(report["structure"]["strongly_connected"], false);
}

#[test]
fn analyze_predicts_borderline_consensus() {
    let dir = tempfile::tempdir().unwrap();
    let config = write_config(
        dir.path(),
        "borderline.json",
        r#"{
  "schema_version": 1,
  "n": 6,
  "beliefs": [0.0, 0.2, 0.4, 0.6, 0.8, 1.0],
  "influence": "clique",
  "update": "confirmation-bias",
  "polarization": { "K": 1000.0, "alpha": 1.6, "discretizations": [2, 3] }
}
"#,
    );
    let run = polarsim(&["analyze", &config]);
    let report: serde_json::Value = serde_json::from_str(&stdout(&run)).unwrap();
    assert_eq!(report["prognosis"][0]["predicted_consensus"], 0.5);
    assert_eq!(report["prognosis"][0]["borderline_risk"], 0.5);
    assert_eq!(
        report["prognosis"][1]["borderline_risk"],
        serde_json::Value::Null
    );
}

#[test]
fn verify_passes_on_symmetric_scenario() {
    let dir = tempfile::tempdir().unwrap();
    let config = write_config(dir.path(), "cfg.json", CLIQUE_UNIFORM);
    let run = polarsim(&["verify", &config]);
    assert_eq!(run.status.code(), Some(0), "{}", stderr(&run));
    let text = stdout(&run);
    assert!(text.contains("extremal-bounds: PASS"), "{text}");
    assert!(text.contains("monotone-extremes: PASS"), "{text}");
    assert!(text.contains("consensus-value: PASS"), "{text}");
    assert!(text.contains("degroot-equivalence: PASS"), "{text}");
    assert!(text.contains("sum-conservation: PASS"), "{text}");
    // uniform beliefs span exactly 0 and 1, so the path bound's positivity
    // precondition fails; reported as not applicable, not as a failure
    assert!(text.contains("path-bound: NOT APPLICABLE"), "{text}");
    assert!(text.contains("0 failed"), "{text}");
}

#[test]
fn verify_path_bound_passes_on_interior_beliefs() {
    let dir = tempfile::tempdir().unwrap();
    let config = write_config(
        dir.path(),
        "cfg.json",
        r#"{
  "schema_version": 1,
  "n": 30,
  "beliefs": "mildly-polarized",
  "influence": "faint",
  "update": "confirmation-bias"
}
"#,
    );
    let run = polarsim(&["verify", &config, "--checks", "path-bound", "--seed", "11"]);
    assert_eq!(run.status.code(), Some(0), "{}", stderr(&run));
    assert!(
        stdout(&run).contains("path-bound: PASS"),
        "{}",
        stdout(&run)
    );
}

#[test]
fn verify_marks_unmet_hypotheses_without_failing() {
    let dir = tempfile::tempdir().unwrap();
    let config = write_config(dir.path(), "cfg.json", DISCONNECTED_EXTREME);
    let run = polarsim(&["verify", &config, "--checks", "consensus-value"]);
    assert_eq!(run.status.code(), Some(0), "{}", stderr(&run));
    let text = stdout(&run);
    assert!(text.contains("consensus-value: NOT APPLICABLE"), "{text}");
    assert!(text.contains("1 not applicable"), "{text}");
}

#[test]
fn verify_rejects_unknown_check_names() {
    let dir = tempfile::tempdir().unwrap();
    let config = write_config(dir.path(), "cfg.json", CLIQUE_UNIFORM);
    let run = polarsim(&["verify", &config, "--checks", "spectral-gap"]);
    assert_eq!(run.status.code(), Some(1));
    assert!(stderr(&run).contains("unknown check"), "{}", stderr(&run));
}

#[test]
fn scenario_vaccine_emits_placeholder_influence() {
    let run = polarsim(&["scenario", "vaccine"]);
    assert_eq!(run.status.code(), Some(0));
    let config: serde_json::Value = serde_json::from_str(&stdout(&run)).unwrap();
    assert_eq!(config["n"], 6);
    assert_eq!(config["beliefs"][0], 0.0);
    assert_eq!(config["beliefs"][3], 0.8);
    // placeholder identity matrix: nothing influences anything yet
    assert_eq!(config["influence"][0][0], 1.0);
    assert_eq!(config["influence"][0][1], 0.0);
    assert!(config["notes"].as_str().unwrap().contains("influence"));
}

#[test]
fn scenario_borderline_carries_both_discretizations() {
    let run = polarsim(&["scenario", "borderline"]);
    assert_eq!(run.status.code(), Some(0));
    let config: serde_json::Value = serde_json::from_str(&stdout(&run)).unwrap();
    // both example discretizations use equal bins, so they emit as counts
    assert_eq!(
        config["polarization"]["discretizations"],
        serde_json::json!([2, 3])
    );
    assert_eq!(config["beliefs"][5], 1.0);
}

#[test]
fn scenario_rejects_unknown_names_and_stray_flags() {
    let run = polarsim(&["scenario", "hypercube"]);
    assert_eq!(run.status.code(), Some(1));
    assert!(
        stderr(&run).contains("unknown scenario"),
        "{}",
        stderr(&run)
    );
    let run = polarsim(&["scenario", "vaccine", "--agents", "10"]);
    assert_eq!(run.status.code(), Some(1));
}

#[test]
fn jsonl_traces_hold_one_object_per_step() {
    let dir = tempfile::tempdir().unwrap();
    let config = write_config(dir.path(), "cfg.json", CLIQUE_UNIFORM);
    let trace_path = dir.path().join("trace.jsonl");
    let run = polarsim(&[
        "simulate",
        &config,
        "--output",
        trace_path.to_str().unwrap(),
        "--format",
        "jsonl",
    ]);
    assert_eq!(run.status.code(), Some(0));
    let text = std::fs::read_to_string(&trace_path).unwrap();
    for (t, line) in text.lines().enumerate() {
        let row: serde_json::Value = serde_json::from_str(line).unwrap();
        assert_eq!(row["t"].as_u64().unwrap() as usize, t);
        assert_eq!(row["beliefs"].as_array().unwrap().len(), 50);
    }
}

#[test]
fn simulate_fans_out_over_multiple_configs() {
    let dir = tempfile::tempdir().unwrap();
    let a = write_config(dir.path(), "a.json", CLIQUE_UNIFORM);
    let b = write_config(dir.path(), "b.json", DISCONNECTED_EXTREME);
    let out_dir = dir.path().join("traces");
    let run = polarsim(&[
        "simulate",
        &a,
        &b,
        "--output",
        out_dir.to_str().unwrap(),
        "--jobs",
        "2",
    ]);
    assert_eq!(run.status.code(), Some(0), "{}", stderr(&run));
    assert!(out_dir.join("a.trace.csv").exists());
    assert!(out_dir.join("b.trace.csv").exists());
    let summaries = stdout(&run);
    assert_eq!(summaries.lines().count(), 2);
    // summaries come back in input order regardless of scheduling
    assert!(summaries.lines().next().unwrap().contains("a.json"));
}

#[test]
fn colliding_config_stems_get_distinct_traces() {
    let dir = tempfile::tempdir().unwrap();
    let sub_a = dir.path().join("a");
    let sub_b = dir.path().join("b");
    std::fs::create_dir_all(&sub_a).unwrap();
    std::fs::create_dir_all(&sub_b).unwrap();
    let first = write_config(&sub_a, "cfg.json", CLIQUE_UNIFORM);
    let second = write_config(&sub_b, "cfg.json", DISCONNECTED_EXTREME);
    let out_dir = dir.path().join("traces");
    let run = polarsim(&[
        "simulate",
        &first,
        &second,
        "--output",
        out_dir.to_str().unwrap(),
    ]);
    assert_eq!(run.status.code(), Some(0), "{}", stderr(&run));
    assert!(out_dir.join("cfg-0.trace.csv").exists());
    assert!(out_dir.join("cfg-1.trace.csv").exists());
}

#[test]
fn bad_format_is_rejected() {
    let dir = tempfile::tempdir().unwrap();
    let config = write_config(dir.path(), "cfg.json", CLIQUE_UNIFORM);
    let run = polarsim(&["simulate", &config, "--format", "parquet"]);
    assert_eq!(run.status.code(), Some(1));
}
