//! Runtime scaling of list- vs matrix-based solvers.
//!
//! Each series is timed separately and reports both its median wall time
//! and the median divided by the iteration count. Iteration counts vary with
//! the graph, so only the per-iteration figure isolates the cost of one
//! sweep over the representation. Slopes are measured, never asserted.

use std::time::Instant;

use serde::{Deserialize, Serialize};

use crate::centrality::{
    eigenvector_centrality, eigenvector_centrality_matrix, pagerank, pagerank_matrix,
    CentralityScores, Method,
};
use crate::graph::random_digraph;

use super::suite::trial_seed;
use super::trial::Solvers;
use super::ExperimentError;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Representation {
    List,
    Matrix,
}

impl Representation {
    pub fn as_str(self) -> &'static str {
        match self {
            Representation::List => "list",
            Representation::Matrix => "matrix",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BenchRow {
    pub size: usize,
    pub method: Method,
    pub representation: Representation,
    pub edges: usize,
    pub iterations: usize,
    /// Edges (list) or matrix cells (matrix) read over the whole solve.
    pub edge_visits: u64,
    pub repetitions: usize,
    pub median_ms: f64,
    pub per_iteration_us: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BenchSeries {
    pub method: Method,
    pub representation: Representation,
    /// Least-squares slope of ln(median time) against ln(size).
    pub slope: Option<f64>,
    /// Same fit on per-iteration time.
    pub per_iteration_slope: Option<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BenchReport {
    pub sizes: Vec<usize>,
    pub density: f64,
    pub seed: u64,
    pub repetitions: usize,
    pub rows: Vec<BenchRow>,
    pub series: Vec<BenchSeries>,
}

const SERIES: [(Method, Representation); 4] = [
    (Method::PageRank, Representation::List),
    (Method::PageRank, Representation::Matrix),
    (Method::Eigenvector, Representation::List),
    (Method::Eigenvector, Representation::Matrix),
];

/// Minimum number of sizes for a slope fit.
pub const MIN_SIZES_FOR_SLOPE: usize = 4;

/// Least-squares slope of `ln y` against `ln x`; `None` with fewer than
/// [`MIN_SIZES_FOR_SLOPE`] points or nonpositive values.
pub fn loglog_slope(xs: &[f64], ys: &[f64]) -> Option<f64> {
    if xs.len() != ys.len() || xs.len() < MIN_SIZES_FOR_SLOPE {
        return None;
    }
    if xs.iter().chain(ys).any(|&v| v.is_nan() || v <= 0.0) {
        return None;
    }
    let lx: Vec<f64> = xs.iter().map(|v| v.ln()).collect();
    let ly: Vec<f64> = ys.iter().map(|v| v.ln()).collect();
    let n = lx.len() as f64;
    let mx = lx.iter().sum::<f64>() / n;
    let my = ly.iter().sum::<f64>() / n;
    let sxy: f64 = lx.iter().zip(&ly).map(|(x, y)| (x - mx) * (y - my)).sum();
    let sxx: f64 = lx.iter().map(|x| (x - mx) * (x - mx)).sum();
    (sxx > 0.0).then(|| sxy / sxx)
}

fn median(values: &mut [f64]) -> f64 {
    values.sort_by(f64::total_cmp);
    let mid = values.len() / 2;
    if values.len() % 2 == 1 {
        values[mid]
    } else {
        (values[mid - 1] + values[mid]) / 2.0
    }
}

/// Times every solver on `random_digraph(size, p, trial_seed(seed, size, 0), true)`.
///
/// Runs sequentially on the calling thread. One untimed warm-up precedes
/// the `repetitions` timed runs of each series.
pub fn run_bench(
    sizes: &[usize],
    p: f64,
    seed: u64,
    repetitions: usize,
) -> Result<BenchReport, ExperimentError> {
    if repetitions < 3 {
        return Err(ExperimentError::InvalidConfig(format!(
            "repetitions {repetitions} must be at least 3"
        )));
    }
    if sizes.is_empty() || sizes.windows(2).any(|w| w[0] >= w[1]) {
        return Err(ExperimentError::InvalidConfig(
            "sizes must be nonempty and strictly increasing".into(),
        ));
    }
    let solvers = Solvers::default();
    let mut rows = Vec::new();
    for &size in sizes {
        let graph = random_digraph(size, p, trial_seed(seed, size, 0), true)?;
        let matrix = graph.to_adjacency_matrix();
        for (method, representation) in SERIES {
            let solve = || -> Result<CentralityScores, ExperimentError> {
                Ok(match (method, representation) {
                    (Method::PageRank, Representation::List) => {
                        pagerank(&graph, &solvers.pagerank)?
                    }
                    (Method::PageRank, Representation::Matrix) => {
                        pagerank_matrix(&matrix, &solvers.pagerank)?
                    }
                    (_, Representation::List) => {
                        eigenvector_centrality(&graph, &solvers.eigenvector)?
                    }
                    (_, Representation::Matrix) => {
                        eigenvector_centrality_matrix(&matrix, &solvers.eigenvector)?
                    }
                })
            };
            let reference = solve()?;
            let mut times = Vec::with_capacity(repetitions);
            for _ in 0..repetitions {
                let start = Instant::now();
                let out = solve()?;
                times.push(start.elapsed().as_secs_f64() * 1e3);
                std::hint::black_box(out);
            }
            let median_ms = median(&mut times);
            rows.push(BenchRow {
                size,
                method,
                representation,
                edges: graph.edge_count(),
                iterations: reference.iterations,
                edge_visits: reference.edge_visits,
                repetitions,
                median_ms,
                per_iteration_us: median_ms * 1e3 / reference.iterations as f64,
            });
        }
    }

    let series = SERIES
        .iter()
        .map(|&(method, representation)| {
            let members: Vec<&BenchRow> = rows
                .iter()
                .filter(|r| r.method == method && r.representation == representation)
                .collect();
            let xs: Vec<f64> = members.iter().map(|r| r.size as f64).collect();
            let total: Vec<f64> = members.iter().map(|r| r.median_ms).collect();
            let per_iter: Vec<f64> = members.iter().map(|r| r.per_iteration_us).collect();
            BenchSeries {
                method,
                representation,
                slope: loglog_slope(&xs, &total),
                per_iteration_slope: loglog_slope(&xs, &per_iter),
            }
        })
        .collect();

    Ok(BenchReport {
        sizes: sizes.to_vec(),
        density: p,
        seed,
        repetitions,
        rows,
        series,
    })
}

impl BenchReport {
    pub fn series(&self, method: Method, representation: Representation) -> Option<&BenchSeries> {
        self.series
            .iter()
            .find(|s| s.method == method && s.representation == representation)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn slope_of_power_law() {
        let xs = [10.0, 20.0, 40.0, 80.0];
        let ys: Vec<f64> = xs.iter().map(|x: &f64| 3.0 * x.powf(2.0)).collect();
        assert!((loglog_slope(&xs, &ys).unwrap() - 2.0).abs() < 1e-12);
        assert_eq!(loglog_slope(&xs[..3], &ys[..3]), None);
        assert_eq!(loglog_slope(&xs, &[1.0, 0.0, 1.0, 1.0]), None);
    }

    #[test]
    fn median_even_and_odd() {
        assert_eq!(median(&mut [3.0, 1.0, 2.0]), 2.0);
        assert_eq!(median(&mut [4.0, 1.0, 3.0, 2.0]), 2.5);
    }

    #[test]
    fn preconditions() {
        assert!(run_bench(&[10, 20], 0.25, 1, 1).is_err());
        assert!(run_bench(&[20, 10], 0.25, 1, 3).is_err());
        assert!(run_bench(&[10, 10], 0.25, 1, 3).is_err());
    }

    #[test]
    fn small_bench_shape_and_counters() {
        let report = run_bench(&[10, 20, 30, 40], 0.3, 9, 3).unwrap();
        assert_eq!(report.rows.len(), 16);
        for row in &report.rows {
            let per_iter = match row.representation {
                Representation::List => row.edges as u64,
                Representation::Matrix => (row.size * row.size) as u64,
            };
            assert_eq!(row.edge_visits, row.iterations as u64 * per_iter);
        }
        assert!(report.series.iter().all(|s| s.slope.is_some()));
    }
}
