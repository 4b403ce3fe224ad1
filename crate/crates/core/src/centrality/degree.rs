use serde::{Deserialize, Serialize};

use crate::graph::Graph;

use super::{CentralityScores, Method};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum DegreeMode {
    In,
    Out,
}

/// Raw in- or out-degree per node.
pub fn degree_centrality(graph: &Graph, mode: DegreeMode) -> CentralityScores {
    let (method, scores) = match mode {
        DegreeMode::In => (
            Method::DegreeIn,
            (0..graph.node_count())
                .map(|k| graph.in_degree(k) as f64)
                .collect(),
        ),
        DegreeMode::Out => (
            Method::DegreeOut,
            (0..graph.node_count())
                .map(|k| graph.out_degree(k) as f64)
                .collect(),
        ),
    };
    CentralityScores {
        method,
        scores,
        dominant_eigenvalue: None,
        iterations: 0,
        converged: true,
        residual: 0.0,
        edge_visits: graph.edge_count() as u64,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::centrality::fixtures::{complete, sample7, two_cycle};

    #[test]
    fn sample7_in_degree() {
        let s = degree_centrality(&sample7(), DegreeMode::In);
        assert_eq!(s.scores[6], 3.0);
        assert_eq!(
            degree_centrality(&sample7(), DegreeMode::Out).scores[6],
            1.0
        );
    }

    #[test]
    fn symmetric_graphs() {
        for mode in [DegreeMode::In, DegreeMode::Out] {
            assert_eq!(degree_centrality(&two_cycle(), mode).scores, vec![1.0, 1.0]);
        }
        assert_eq!(
            degree_centrality(&complete(4), DegreeMode::Out).scores,
            vec![3.0; 4]
        );
    }
}
