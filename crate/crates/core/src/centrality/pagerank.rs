//! Non-normalized PageRank, `PR(a) = (1 - d) + d * sum_{b -> a} PR(b) / out(b)`.
//!
//! Scores start at 1 and are updated synchronously (Jacobi style) until the
//! max-norm change drops to the tolerance. On a graph without dangling nodes
//! the scores sum to V. A dangling node contributes nothing to any sum.
//! Edge weights are ignored; `out(b)` counts out-links.

use crate::graph::{AdjacencyMatrix, Graph};

use super::{max_abs_diff, CentralityError, CentralityScores, Method, SolverConfig};

/// List-based PageRank: each iteration pulls over every in-edge once.
pub fn pagerank(graph: &Graph, cfg: &SolverConfig) -> Result<CentralityScores, CentralityError> {
    cfg.validate()?;
    let n = graph.node_count();
    let out_links: Vec<f64> = (0..n).map(|b| graph.out_degree(b) as f64).collect();
    let edges = graph.edge_count() as u64;

    iterate(n, cfg, edges, |current, next| {
        for (a, slot) in next.iter_mut().enumerate() {
            let mut sum = 0.0;
            for &(b, _) in graph.in_neighbors(a) {
                sum += current[b] / out_links[b];
            }
            *slot = (1.0 - cfg.damping) + cfg.damping * sum;
        }
    })
}

/// Dense PageRank: every iteration scans all V^2 matrix cells.
///
/// Contributions are accumulated in ascending source order, the same order
/// the list solver uses, so both produce the same scores.
pub fn pagerank_matrix(
    matrix: &AdjacencyMatrix,
    cfg: &SolverConfig,
) -> Result<CentralityScores, CentralityError> {
    cfg.validate()?;
    let n = matrix.order();
    if n == 0 {
        return Err(CentralityError::InvalidConfig("empty matrix".into()));
    }
    let out_links: Vec<f64> = (0..n)
        .map(|b| matrix.row(b).iter().filter(|&&w| w > 0.0).count() as f64)
        .collect();
    let mut share = vec![0.0; n];
    let cells = (n * n) as u64;

    iterate(n, cfg, cells, |current, next| {
        for b in 0..n {
            share[b] = if out_links[b] > 0.0 {
                current[b] / out_links[b]
            } else {
                0.0
            };
        }
        next.fill(0.0);
        for (b, &s) in share.iter().enumerate() {
            for (acc, &w) in next.iter_mut().zip(matrix.row(b)) {
                *acc += s * f64::from(u8::from(w > 0.0));
            }
        }
        for slot in next.iter_mut() {
            *slot = (1.0 - cfg.damping) + cfg.damping * *slot;
        }
    })
}

fn iterate<F>(
    n: usize,
    cfg: &SolverConfig,
    visits_per_iteration: u64,
    mut step: F,
) -> Result<CentralityScores, CentralityError>
where
    F: FnMut(&[f64], &mut [f64]),
{
    let mut current = vec![1.0; n];
    let mut next = vec![0.0; n];
    let mut residual = f64::INFINITY;
    for iteration in 1..=cfg.max_iterations {
        step(&current, &mut next);
        residual = max_abs_diff(&current, &next);
        std::mem::swap(&mut current, &mut next);
        if residual <= cfg.tolerance {
            return Ok(CentralityScores {
                method: Method::PageRank,
                scores: current,
                dominant_eigenvalue: None,
                iterations: iteration,
                converged: true,
                residual,
                edge_visits: iteration as u64 * visits_per_iteration,
            });
        }
    }
    Err(CentralityError::NonConvergence {
        iterations: cfg.max_iterations,
        residual,
    })
}

/// Max-norm distance between `scores` and one synchronous PageRank update of them.
pub fn pagerank_residual(graph: &Graph, scores: &[f64], damping: f64) -> f64 {
    (0..graph.node_count())
        .map(|a| {
            let sum: f64 = graph
                .in_neighbors(a)
                .iter()
                .map(|&(b, _)| scores[b] / graph.out_degree(b) as f64)
                .sum();
            ((1.0 - damping) + damping * sum - scores[a]).abs()
        })
        .fold(0.0, f64::max)
}
