//! Trace persistence: CSV and JSONL writers plus the one-line run summary.

use std::io::Write;

use serde::Serialize;

use polarsim::{SimStatus, SimulationTrace};

use crate::CliError;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TraceFormat {
    Csv,
    Jsonl,
}

impl TraceFormat {
    pub fn parse(name: &str) -> Result<Self, CliError> {
        match name {
            "csv" => Ok(Self::Csv),
            "jsonl" => Ok(Self::Jsonl),
            other => Err(CliError::Config(format!(
                "format: expected csv or jsonl, got {other:?}"
            ))),
        }
    }

    pub fn extension(self) -> &'static str {
        match self {
            Self::Csv => "csv",
            Self::Jsonl => "jsonl",
        }
    }
}

/// Columns: `t,spread,pol_0,…,pol_{d-1},belief_0,…,belief_{n-1}`. Floats use
/// shortest round-trip formatting.
pub fn write_csv(trace: &SimulationTrace, out: &mut impl Write) -> std::io::Result<()> {
    let discs = trace.records[0].polarization.len();
    let n = trace.records[0].beliefs.n();
    let mut header = String::from("t,spread");
    for d in 0..discs {
        header.push_str(&format!(",pol_{d}"));
    }
    for i in 0..n {
        header.push_str(&format!(",belief_{i}"));
    }
    writeln!(out, "{header}")?;
    for record in &trace.records {
        let mut line = format!("{},{}", record.t, record.spread);
        for p in &record.polarization {
            line.push_str(&format!(",{p}"));
        }
        for b in record.beliefs.values() {
            line.push_str(&format!(",{b}"));
        }
        writeln!(out, "{line}")?;
    }
    Ok(())
}

#[derive(Serialize)]
struct JsonlRow<'a> {
    t: usize,
    spread: f64,
    polarization: &'a [f64],
    beliefs: &'a [f64],
}

/// One JSON object per step.
pub fn write_jsonl(trace: &SimulationTrace, out: &mut impl Write) -> std::io::Result<()> {
    for record in &trace.records {
        let row = JsonlRow {
            t: record.t,
            spread: record.spread,
            polarization: &record.polarization,
            beliefs: record.beliefs.values(),
        };
        writeln!(
            out,
            "{}",
            serde_json::to_string(&row).expect("row serializes")
        )?;
    }
    Ok(())
}

pub fn write_trace(
    trace: &SimulationTrace,
    format: TraceFormat,
    path: &std::path::Path,
) -> Result<(), CliError> {
    let file = std::fs::File::create(path)
        .map_err(|e| CliError::Io(format!("cannot create {}: {e}", path.display())))?;
    let mut writer = std::io::BufWriter::new(file);
    let result = match format {
        TraceFormat::Csv => write_csv(trace, &mut writer),
        TraceFormat::Jsonl => write_jsonl(trace, &mut writer),
    };
    result
        .and_then(|()| writer.flush())
        .map_err(|e| CliError::Io(format!("cannot write {}: {e}", path.display())))
}

/// Status, final spread, and final polarization per discretization.
pub fn summary_line(label: &str, trace: &SimulationTrace) -> String {
    let status = match trace.status {
        SimStatus::Converged { .. } => "converged",
        SimStatus::MaxStepsReached => "max-steps-reached",
    };
    let last = trace.final_record();
    let polarization = last
        .polarization
        .iter()
        .map(|p| p.to_string())
        .collect::<Vec<_>>()
        .join(",");
    format!(
        "config={label} status={status} steps={} spread={} polarization={polarization}",
        trace.steps(),
        last.spread,
    )
}
