//! Node centrality: PageRank, eigenvector (dominant eigenpair) and degree.
//!
//! Every solver is a pure function of the graph and a [`SolverConfig`]. The
//! list-based solvers count edge visits so per-iteration work can be checked
//! independently of wall time: each iteration touches every edge exactly
//! once, so `edge_visits == iterations * E`. The dense solvers count matrix
//! cells instead (`iterations * V^2`).

mod degree;
mod eigenvector;
mod pagerank;

pub use degree::{degree_centrality, DegreeMode};
pub use eigenvector::{
    eigenvector_centrality, eigenvector_centrality_matrix, eigenvector_residual,
};
pub use pagerank::{pagerank, pagerank_matrix, pagerank_residual};

use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum CentralityError {
    #[error("invalid solver configuration: {0}")]
    InvalidConfig(String),
    #[error("no convergence after {iterations} iterations (residual {residual:e})")]
    NonConvergence { iterations: usize, residual: f64 },
    #[error("graph has no edges; eigenvector centrality is undefined")]
    ZeroMatrix,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Method {
    #[serde(rename = "pagerank")]
    PageRank,
    #[serde(rename = "eigenvector")]
    Eigenvector,
    #[serde(rename = "degree_in")]
    DegreeIn,
    #[serde(rename = "degree_out")]
    DegreeOut,
}

impl Method {
    pub fn as_str(self) -> &'static str {
        match self {
            Method::PageRank => "pagerank",
            Method::Eigenvector => "eigenvector",
            Method::DegreeIn => "degree_in",
            Method::DegreeOut => "degree_out",
        }
    }
}

impl std::fmt::Display for Method {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.as_str())
    }
}

/// Iteration controls shared by the PageRank and eigenvector solvers.
///
/// The two methods use different defaults, see [`SolverConfig::pagerank`]
/// and [`SolverConfig::eigenvector`]. `damping` is ignored by the
/// eigenvector solver.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SolverConfig {
    pub damping: f64,
    pub tolerance: f64,
    pub max_iterations: usize,
}

impl SolverConfig {
    pub const DEFAULT_DAMPING: f64 = 0.85;

    /// d = 0.85, tolerance 1e-8, 200 iterations.
    pub fn pagerank() -> Self {
        Self {
            damping: Self::DEFAULT_DAMPING,
            tolerance: 1e-8,
            max_iterations: 200,
        }
    }

    /// tolerance 1e-10, 1000 iterations.
    pub fn eigenvector() -> Self {
        Self {
            damping: Self::DEFAULT_DAMPING,
            tolerance: 1e-10,
            max_iterations: 1000,
        }
    }

    pub fn with_damping(mut self, damping: f64) -> Self {
        self.damping = damping;
        self
    }

    pub fn with_tolerance(mut self, tolerance: f64) -> Self {
        self.tolerance = tolerance;
        self
    }

    pub fn with_max_iterations(mut self, max_iterations: usize) -> Self {
        self.max_iterations = max_iterations;
        self
    }

    pub fn validate(&self) -> Result<(), CentralityError> {
        if !(self.damping > 0.0 && self.damping < 1.0) {
            return Err(CentralityError::InvalidConfig(format!(
                "damping {} must lie in (0, 1)",
                self.damping
            )));
        }
        if !self.tolerance.is_finite() || self.tolerance <= 0.0 {
            return Err(CentralityError::InvalidConfig(format!(
                "tolerance {} must be positive",
                self.tolerance
            )));
        }
        if self.max_iterations == 0 {
            return Err(CentralityError::InvalidConfig(
                "max_iterations must be positive".into(),
            ));
        }
        Ok(())
    }
}

/// Per-node scores plus convergence metadata.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CentralityScores {
    pub method: Method,
    pub scores: Vec<f64>,
    /// Present iff `method` is [`Method::Eigenvector`].
    pub dominant_eigenvalue: Option<f64>,
    pub iterations: usize,
    pub converged: bool,
    /// Max-norm change over the final iteration.
    pub residual: f64,
    /// Edges (list solvers) or matrix cells (dense solvers) read while iterating.
    pub edge_visits: u64,
}

impl CentralityScores {
    pub fn len(&self) -> usize {
        self.scores.len()
    }

    pub fn is_empty(&self) -> bool {
        self.scores.is_empty()
    }
}

pub(crate) fn max_abs_diff(a: &[f64], b: &[f64]) -> f64 {
    a.iter()
        .zip(b)
        .map(|(x, y)| (x - y).abs())
        .fold(0.0, f64::max)
}

#[cfg(test)]
pub(crate) mod fixtures {
    use crate::graph::Graph;

    pub const SAMPLE7_ROWS: [[f64; 7]; 7] = [
        [0., 1., 1., 0., 1., 1., 1.],
        [1., 0., 0., 1., 0., 1., 1.],
        [0., 1., 0., 1., 1., 0., 0.],
        [1., 0., 1., 0., 0., 1., 0.],
        [1., 1., 1., 1., 0., 0., 0.],
        [0., 1., 1., 1., 0., 0., 1.],
        [0., 0., 1., 0., 0., 0., 0.],
    ];

    pub fn sample7() -> Graph {
        Graph::from_rows(&SAMPLE7_ROWS).unwrap()
    }

    pub fn two_cycle() -> Graph {
        Graph::build(2, [(0, 1), (1, 0)]).unwrap()
    }

    pub fn complete(n: usize) -> Graph {
        let edges = (0..n).flat_map(|i| (0..n).filter(move |&j| j != i).map(move |j| (i, j)));
        Graph::build(n, edges).unwrap()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn config_defaults() {
        let pr = SolverConfig::pagerank();
        assert_eq!(
            (pr.damping, pr.tolerance, pr.max_iterations),
            (0.85, 1e-8, 200)
        );
        let ev = SolverConfig::eigenvector();
        assert_eq!((ev.tolerance, ev.max_iterations), (1e-10, 1000));
    }

    #[test]
    fn config_validation() {
        assert!(SolverConfig::pagerank()
            .with_damping(1.0)
            .validate()
            .is_err());
        assert!(SolverConfig::pagerank()
            .with_damping(0.0)
            .validate()
            .is_err());
        assert!(SolverConfig::pagerank()
            .with_tolerance(0.0)
            .validate()
            .is_err());
        assert!(SolverConfig::pagerank()
            .with_max_iterations(0)
            .validate()
            .is_err());
        assert!(SolverConfig::pagerank().validate().is_ok());
    }
}
