//! Eigenvector centrality as the right dominant eigenvector of `A`.
//!
//! `lambda * x_k = sum_l a_kl * x_l`: a node scores highly when it points at
//! high-scoring nodes (row = source). Power iteration runs on `A + I`, which
//! has the same eigenvectors, with eigenvalues shifted by one; the shift
//! removes the oscillation plain iteration shows on periodic graphs. The
//! reported eigenvalue is the Rayleigh quotient of `A + I` minus one.

use crate::graph::{AdjacencyMatrix, Graph};

use super::{max_abs_diff, CentralityError, CentralityScores, Method, SolverConfig};

/// List-based power iteration; each iteration reads every edge once.
pub fn eigenvector_centrality(
    graph: &Graph,
    cfg: &SolverConfig,
) -> Result<CentralityScores, CentralityError> {
    cfg.validate()?;
    if graph.edge_count() == 0 {
        return Err(CentralityError::ZeroMatrix);
    }
    let edges = graph.edge_count() as u64;
    power_iteration(graph.node_count(), cfg, edges, |x, y| {
        for (k, slot) in y.iter_mut().enumerate() {
            let mut sum = x[k];
            for &(l, w) in graph.out_neighbors(k) {
                sum += w * x[l];
            }
            *slot = sum;
        }
    })
}

/// Dense power iteration over all V^2 cells per iteration.
pub fn eigenvector_centrality_matrix(
    matrix: &AdjacencyMatrix,
    cfg: &SolverConfig,
) -> Result<CentralityScores, CentralityError> {
    cfg.validate()?;
    if matrix.nonzero_count() == 0 {
        return Err(CentralityError::ZeroMatrix);
    }
    let n = matrix.order();
    power_iteration(n, cfg, (n * n) as u64, |x, y| {
        for (k, slot) in y.iter_mut().enumerate() {
            let row_sum: f64 = matrix.row(k).iter().zip(x).map(|(a, v)| a * v).sum();
            *slot = x[k] + row_sum;
        }
    })
}

fn power_iteration<F>(
    n: usize,
    cfg: &SolverConfig,
    visits_per_iteration: u64,
    mut shifted_product: F,
) -> Result<CentralityScores, CentralityError>
where
    F: FnMut(&[f64], &mut [f64]),
{
    let mut x = vec![1.0 / (n as f64).sqrt(); n];
    let mut y = vec![0.0; n];
    let mut residual = f64::INFINITY;
    for iteration in 1..=cfg.max_iterations {
        shifted_product(&x, &mut y);
        // x has unit norm, so x . (A + I) x is the Rayleigh quotient.
        let rayleigh: f64 = x.iter().zip(&y).map(|(a, b)| a * b).sum();
        let norm = y.iter().map(|v| v * v).sum::<f64>().sqrt();
        if norm == 0.0 || !norm.is_finite() {
            return Err(CentralityError::NonConvergence {
                iterations: iteration,
                residual,
            });
        }
        for v in y.iter_mut() {
            *v /= norm;
        }
        residual = max_abs_diff(&x, &y);
        std::mem::swap(&mut x, &mut y);
        if residual <= cfg.tolerance {
            if x.iter().sum::<f64>() < 0.0 {
                x.iter_mut().for_each(|v| *v = -*v);
            }
            return Ok(CentralityScores {
                method: Method::Eigenvector,
                scores: x,
                dominant_eigenvalue: Some(rayleigh - 1.0),
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

/// `max_k |(A x)_k - lambda x_k|`.
pub fn eigenvector_residual(graph: &Graph, x: &[f64], lambda: f64) -> f64 {
    (0..graph.node_count())
        .map(|k| {
            let ax: f64 = graph.out_neighbors(k).iter().map(|&(l, w)| w * x[l]).sum();
            (ax - lambda * x[k]).abs()
        })
        .fold(0.0, f64::max)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::centrality::fixtures::{sample7, two_cycle};
    use crate::graph::random_digraph;

    const SAMPLE7_VECTOR: [f64; 7] = [0.4924, 0.3853, 0.3564, 0.3548, 0.4686, 0.3544, 0.1051];

    #[test]
    fn sample7_eigenpair() {
        let g = sample7();
        let s = eigenvector_centrality(&g, &SolverConfig::eigenvector()).unwrap();
        let lambda = s.dominant_eigenvalue.unwrap();
        assert!((lambda - 3.3911).abs() < 1e-3);
        for (x, expected) in s.scores.iter().zip(SAMPLE7_VECTOR) {
            assert!((x - expected).abs() < 1e-3, "{x} vs {expected}");
        }
        let norm: f64 = s.scores.iter().map(|v| v * v).sum();
        assert!((norm - 1.0).abs() < 1e-9);
        // Node 7 (1-based) has a single out-edge, to node 3.
        assert!((lambda * s.scores[6] - s.scores[2]).abs() < 1e-6 * s.scores[2]);
        assert_eq!(s.edge_visits, s.iterations as u64 * 24);
    }

    #[test]
    fn two_cycle_eigenpair() {
        let s = eigenvector_centrality(&two_cycle(), &SolverConfig::eigenvector()).unwrap();
        let h = std::f64::consts::FRAC_1_SQRT_2;
        assert!(max_abs_diff(&s.scores, &[h, h]) < 1e-12);
        assert!((s.dominant_eigenvalue.unwrap() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn pure_cycle_converges_thanks_to_shift() {
        let g = Graph::build(5, (0..5).map(|i| (i, (i + 1) % 5))).unwrap();
        let s = eigenvector_centrality(&g, &SolverConfig::eigenvector()).unwrap();
        assert!((s.dominant_eigenvalue.unwrap() - 1.0).abs() < 1e-9);
    }

    #[test]
    fn no_edges_is_zero_matrix() {
        let g = Graph::build(3, Vec::<(usize, usize)>::new()).unwrap();
        assert_eq!(
            eigenvector_centrality(&g, &SolverConfig::eigenvector()),
            Err(CentralityError::ZeroMatrix)
        );
    }

    #[test]
    fn acyclic_graph_does_not_converge() {
        // Nilpotent A: every eigenvalue of A + I is 1 with a nontrivial Jordan block.
        let g = Graph::build(3, [(0, 1), (1, 2)]).unwrap();
        assert!(matches!(
            eigenvector_centrality(&g, &SolverConfig::eigenvector()),
            Err(CentralityError::NonConvergence { .. })
        ));
    }

    #[test]
    fn dense_solver_agrees() {
        let g = random_digraph(40, 0.25, 5, true).unwrap();
        let cfg = SolverConfig::eigenvector();
        let list = eigenvector_centrality(&g, &cfg).unwrap();
        let dense = eigenvector_centrality_matrix(&g.to_adjacency_matrix(), &cfg).unwrap();
        assert!(max_abs_diff(&list.scores, &dense.scores) < 1e-9);
        assert!(
            (list.dominant_eigenvalue.unwrap() - dense.dominant_eigenvalue.unwrap()).abs() < 1e-9
        );
    }

    #[test]
    fn residual_bound() {
        let g = random_digraph(30, 0.3, 8, true).unwrap();
        let cfg = SolverConfig::eigenvector();
        let s = eigenvector_centrality(&g, &cfg).unwrap();
        let lambda = s.dominant_eigenvalue.unwrap();
        assert!(
            eigenvector_residual(&g, &s.scores, lambda) <= 10.0 * cfg.tolerance * (lambda + 1.0)
        );
        assert!(s.scores.iter().all(|&v| v >= 0.0));
    }

    #[test]
    fn weight_scaling() {
        let g = random_digraph(15, 0.4, 2, true).unwrap();
        let cfg = SolverConfig::eigenvector();
        let base = eigenvector_centrality(&g, &cfg).unwrap();
        let scaled = eigenvector_centrality(&g.scale_weights(3.0).unwrap(), &cfg).unwrap();
        assert!(max_abs_diff(&base.scores, &scaled.scores) < 1e-8);
        let ratio = scaled.dominant_eigenvalue.unwrap() / base.dominant_eigenvalue.unwrap();
        assert!((ratio - 3.0).abs() < 1e-8);
    }
}
