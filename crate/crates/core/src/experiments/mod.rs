//! Comparison experiments between PageRank and eigenvector centrality.
//!
//! * [`run_trial`] generates one seeded random digraph, runs both solvers and
//!   compares the resulting rankings.
//! * [`run_suite`] repeats trials over several graph sizes and aggregates
//!   rank correlations per size.
//! * [`run_bench`] times list- and matrix-based solvers on growing graphs and
//!   fits log-log slopes.
//! * [`write_report`] renders any of the results as CSV or JSON.

mod bench;
mod report;
mod suite;
mod trial;

pub use bench::{loglog_slope, run_bench, BenchReport, BenchRow, BenchSeries, Representation};
pub use report::{
    read_json, write_report, write_scatter_csv, Format, Report, ReportError, SCHEMA_VERSION,
};
pub use suite::{
    run_suite, run_suite_with_threads, trial_seed, SizeAggregate, SuiteConfig, SuiteReport,
};
pub use trial::{
    compare_graph, run_trial, run_trial_timed, scatter_data, GraphComparison, PageRankLinks,
    Solvers, TableRow, TrialFailure, TrialResult, TrialTiming,
};

use thiserror::Error;

use crate::centrality::CentralityError;
use crate::graph::GraphError;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum ExperimentError {
    #[error("invalid configuration: {0}")]
    InvalidConfig(String),
    #[error("length mismatch: {left} vs {right}")]
    LengthMismatch { left: usize, right: usize },
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error(transparent)]
    Centrality(#[from] CentralityError),
}
