//! CSV and JSON rendering of experiment results.
//!
//! JSON documents are objects of the form
//! `{"schema_version": 1, "kind": "<report kind>", ...report fields}`.
//! Every float, in JSON and CSV alike, is rounded to 9 significant digits
//! before it is written. Rounding is idempotent, so parsing a report and
//! writing it again reproduces the original bytes.

use std::io::Write;

use serde::de::DeserializeOwned;
use serde::Serialize;
use serde_json::{Map, Value};
use thiserror::Error;

use super::bench::BenchReport;
use super::suite::SuiteReport;
use super::trial::{GraphComparison, TableRow, TrialFailure, TrialResult};
use crate::centrality::CentralityScores;

pub const SCHEMA_VERSION: u64 = 1;

#[derive(Debug, Error)]
pub enum ReportError {
    #[error("i/o error: {0}")]
    Io(#[from] std::io::Error),
    #[error("json error: {0}")]
    Json(#[from] serde_json::Error),
    #[error("csv error: {0}")]
    Csv(#[from] csv::Error),
    #[error("unsupported report: {0}")]
    Schema(String),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Format {
    Csv,
    Json,
}

impl std::str::FromStr for Format {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "csv" => Ok(Format::Csv),
            "json" => Ok(Format::Json),
            other => Err(format!("unknown format {other:?} (expected csv or json)")),
        }
    }
}

/// A result type that can be written as CSV or versioned JSON.
pub trait Report: Serialize + DeserializeOwned {
    const KIND: &'static str;

    fn write_csv<W: Write>(&self, out: W) -> Result<(), ReportError>;
}

/// Rounds to 9 significant digits.
pub(crate) fn round_sig9(x: f64) -> f64 {
    if !x.is_finite() || x == 0.0 {
        return x;
    }
    format!("{x:.8e}").parse().unwrap_or(x)
}

pub(crate) fn fmt_float(x: f64) -> String {
    round_sig9(x).to_string()
}

fn fmt_opt(x: Option<f64>) -> String {
    x.map(fmt_float).unwrap_or_default()
}

fn round_floats(value: &mut Value) {
    match value {
        Value::Number(n) if n.is_f64() => {
            if let Some(rounded) = n
                .as_f64()
                .and_then(|f| serde_json::Number::from_f64(round_sig9(f)))
            {
                *n = rounded;
            }
        }
        Value::Array(items) => items.iter_mut().for_each(round_floats),
        Value::Object(map) => map.values_mut().for_each(round_floats),
        _ => {}
    }
}

fn to_json_value<R: Report>(report: &R) -> Result<Value, ReportError> {
    let mut body = serde_json::to_value(report)?;
    round_floats(&mut body);
    let Value::Object(fields) = body else {
        return Err(ReportError::Schema(format!(
            "{} is not a JSON object",
            R::KIND
        )));
    };
    let mut doc = Map::new();
    doc.insert("schema_version".into(), SCHEMA_VERSION.into());
    doc.insert("kind".into(), R::KIND.into());
    doc.extend(fields);
    Ok(Value::Object(doc))
}

/// Writes `report` in the requested format.
pub fn write_report<R: Report, W: Write>(
    report: &R,
    format: Format,
    mut out: W,
) -> Result<(), ReportError> {
    match format {
        Format::Csv => report.write_csv(out),
        Format::Json => {
            let doc = to_json_value(report)?;
            serde_json::to_writer_pretty(&mut out, &doc)?;
            out.write_all(b"\n")?;
            Ok(())
        }
    }
}

/// Parses a JSON document produced by [`write_report`].
pub fn read_json<R: Report>(text: &str) -> Result<R, ReportError> {
    let Value::Object(mut doc) = serde_json::from_str(text)? else {
        return Err(ReportError::Schema("expected a JSON object".into()));
    };
    match doc.remove("schema_version").and_then(|v| v.as_u64()) {
        Some(SCHEMA_VERSION) => {}
        other => {
            return Err(ReportError::Schema(format!(
                "unsupported schema_version {other:?}"
            )))
        }
    }
    match doc.remove("kind") {
        Some(Value::String(kind)) if kind == R::KIND => {}
        other => {
            return Err(ReportError::Schema(format!(
                "expected kind {:?}, found {other:?}",
                R::KIND
            )))
        }
    }
    Ok(serde_json::from_value(Value::Object(doc))?)
}

fn failure_label(failure: &Option<TrialFailure>) -> &'static str {
    match failure {
        None => "",
        Some(TrialFailure::NonConvergence { .. }) => "non_convergence",
        Some(TrialFailure::ZeroMatrix) => "zero_matrix",
        Some(TrialFailure::DegenerateRanking) => "degenerate_ranking",
        Some(TrialFailure::Statistics { .. }) => "statistics",
    }
}

fn write_table_rows<W: Write>(rows: &[TableRow], out: W) -> Result<(), ReportError> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(["vertex", "pagerank", "pr_rank", "eigenvector", "ev_rank"])?;
    for row in rows {
        w.write_record([
            row.vertex.to_string(),
            fmt_float(row.pagerank),
            row.pr_rank.to_string(),
            fmt_float(row.eigenvector),
            row.ev_rank.to_string(),
        ])?;
    }
    w.flush()?;
    Ok(())
}

impl Report for TrialResult {
    const KIND: &'static str = "trial_result";

    /// One row per vertex, in the five-column comparison-table layout.
    fn write_csv<W: Write>(&self, out: W) -> Result<(), ReportError> {
        write_table_rows(&self.rows, out)
    }
}

impl Report for GraphComparison {
    const KIND: &'static str = "graph_comparison";

    /// Same layout as [`TrialResult`].
    fn write_csv<W: Write>(&self, out: W) -> Result<(), ReportError> {
        write_table_rows(&self.rows, out)
    }
}

impl Report for CentralityScores {
    const KIND: &'static str = "centrality_scores";

    /// `# key=value` metadata lines, then `node,score` rows.
    fn write_csv<W: Write>(&self, mut out: W) -> Result<(), ReportError> {
        writeln!(out, "# method={}", self.method)?;
        if let Some(lambda) = self.dominant_eigenvalue {
            writeln!(out, "# dominant_eigenvalue={}", fmt_float(lambda))?;
        }
        writeln!(out, "# iterations={}", self.iterations)?;
        writeln!(out, "# converged={}", self.converged)?;
        let mut w = csv::Writer::from_writer(out);
        w.write_record(["node", "score"])?;
        for (node, &score) in self.scores.iter().enumerate() {
            w.write_record([node.to_string(), fmt_float(score)])?;
        }
        w.flush()?;
        Ok(())
    }
}

impl Report for SuiteReport {
    const KIND: &'static str = "suite_report";

    /// One row per trial.
    fn write_csv<W: Write>(&self, out: W) -> Result<(), ReportError> {
        let mut w = csv::Writer::from_writer(out);
        w.write_record([
            "size",
            "trial_index",
            "seed",
            "edge_count",
            "spearman_rho",
            "pearson_r",
            "top_k_overlap",
            "significant",
            "failure",
        ])?;
        for t in &self.trials {
            let r = t.report.as_ref();
            w.write_record([
                t.size.to_string(),
                t.trial_index.to_string(),
                t.seed.to_string(),
                t.edge_count.to_string(),
                fmt_opt(r.map(|r| r.spearman_rho)),
                fmt_opt(r.map(|r| r.pearson_r)),
                fmt_opt(r.map(|r| r.top_k_overlap)),
                r.and_then(|r| r.significant)
                    .map(|s| s.to_string())
                    .unwrap_or_default(),
                failure_label(&t.failure).to_string(),
            ])?;
        }
        w.flush()?;
        Ok(())
    }
}

impl Report for BenchReport {
    const KIND: &'static str = "bench_report";

    /// One row per (size, method, representation).
    fn write_csv<W: Write>(&self, out: W) -> Result<(), ReportError> {
        let mut w = csv::Writer::from_writer(out);
        w.write_record([
            "size",
            "method",
            "representation",
            "edges",
            "iterations",
            "edge_visits",
            "repetitions",
            "median_ms",
            "per_iteration_us",
        ])?;
        for r in &self.rows {
            w.write_record([
                r.size.to_string(),
                r.method.to_string(),
                r.representation.as_str().to_string(),
                r.edges.to_string(),
                r.iterations.to_string(),
                r.edge_visits.to_string(),
                r.repetitions.to_string(),
                fmt_float(r.median_ms),
                fmt_float(r.per_iteration_us),
            ])?;
        }
        w.flush()?;
        Ok(())
    }
}

/// Writes `(a, b)` scatter points as a two-column CSV.
pub fn write_scatter_csv<W: Write>(
    points: &[(f64, f64)],
    labels: (&str, &str),
    out: W,
) -> Result<(), ReportError> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record([labels.0, labels.1])?;
    for &(a, b) in points {
        w.write_record([fmt_float(a), fmt_float(b)])?;
    }
    w.flush()?;
    Ok(())
}
