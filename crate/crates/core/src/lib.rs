//! PageRank and eigenvector centrality on directed graphs, rank-agreement
//! statistics between them, and reproducible comparison experiments.
//!
//! ```
//! use centrank::centrality::{eigenvector_centrality, pagerank, SolverConfig};
//! use centrank::graph::Graph;
//! use centrank::rankstats::compare;
//!
//! let g = Graph::build(3, [(0, 1), (1, 2), (2, 0), (0, 2)]).unwrap();
//! let pr = pagerank(&g, &SolverConfig::pagerank()).unwrap();
//! let ev = eigenvector_centrality(&g, &SolverConfig::eigenvector()).unwrap();
//! let report = compare(&pr, &ev, 1).unwrap();
//! assert!(report.spearman_rho <= 1.0);
//! ```

pub mod centrality;
pub mod experiments;
pub mod graph;
pub mod rankstats;
