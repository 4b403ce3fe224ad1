//! Directed weighted graphs with paired out/in adjacency lists and a dense
//! matrix view.
//!
//! Node ids are 0-based. An edge `i -> j` with weight `w` corresponds to the
//! matrix entry `a[i][j] = w` (row = tail, column = head). Self-loops and
//! parallel edges are rejected at construction, and a [`Graph`] is never
//! mutated afterwards.

mod io;
mod random;

pub use io::{load_adjacency_matrix, load_edge_list, LoadError};
pub use random::{random_digraph, DEFAULT_DENSITY};

use std::collections::HashSet;

use serde::{Deserialize, Serialize};
use thiserror::Error;

/// Node identifier, 0-based.
pub type NodeId = usize;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum GraphError {
    #[error("graph must have at least one node")]
    Empty,
    #[error("edge {from}->{to} references a node outside [0, {node_count})")]
    IdOutOfRange {
        from: NodeId,
        to: NodeId,
        node_count: usize,
    },
    #[error("node {node} is outside [0, {node_count})")]
    NodeOutOfRange { node: NodeId, node_count: usize },
    #[error("self-loop on node {node}")]
    SelfLoop { node: NodeId },
    #[error("duplicate edge {from}->{to}")]
    DuplicateEdge { from: NodeId, to: NodeId },
    #[error("edge {from}->{to} has invalid weight {weight} (must be finite and > 0)")]
    InvalidWeight {
        from: NodeId,
        to: NodeId,
        weight: f64,
    },
    #[error("probability {0} is outside [0, 1]")]
    InvalidProbability(f64),
    #[error("random digraph needs at least 2 nodes, got {0}")]
    TooFewNodes(usize),
    #[error("matrix is not square: row {row} has {len} entries, expected {expected}")]
    NotSquare {
        row: usize,
        len: usize,
        expected: usize,
    },
    #[error("matrix entry ({row}, {col}) is negative or not finite: {value}")]
    NegativeEntry { row: usize, col: usize, value: f64 },
    #[error("matrix diagonal entry ({index}, {index}) is nonzero: {value}")]
    NonzeroDiagonal { index: usize, value: f64 },
}

/// A weighted directed edge.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Edge {
    pub source: NodeId,
    pub target: NodeId,
    pub weight: f64,
}

impl Edge {
    pub fn new(source: NodeId, target: NodeId) -> Self {
        Self::weighted(source, target, 1.0)
    }

    pub fn weighted(source: NodeId, target: NodeId, weight: f64) -> Self {
        Self {
            source,
            target,
            weight,
        }
    }
}

impl From<(NodeId, NodeId)> for Edge {
    fn from((source, target): (NodeId, NodeId)) -> Self {
        Edge::new(source, target)
    }
}

impl From<(NodeId, NodeId, f64)> for Edge {
    fn from((source, target, weight): (NodeId, NodeId, f64)) -> Self {
        Edge::weighted(source, target, weight)
    }
}

/// Immutable directed graph.
///
/// Edges are stored sorted by `(source, target)`, so both adjacency views
/// list neighbors in ascending id order.
#[derive(Debug, Clone, PartialEq)]
pub struct Graph {
    node_count: usize,
    edges: Vec<Edge>,
    out_adjacency: Vec<Vec<(NodeId, f64)>>,
    in_adjacency: Vec<Vec<(NodeId, f64)>>,
}

impl Graph {
    /// Validates `edges` and builds both adjacency views.
    ///
    /// Errors report the first offending edge in input order.
    pub fn build<I, E>(node_count: usize, edges: I) -> Result<Self, GraphError>
    where
        I: IntoIterator<Item = E>,
        E: Into<Edge>,
    {
        if node_count == 0 {
            return Err(GraphError::Empty);
        }
        let mut seen = HashSet::new();
        let mut checked = Vec::new();
        for edge in edges {
            let edge = edge.into();
            validate_edge(node_count, &edge)?;
            if !seen.insert((edge.source, edge.target)) {
                return Err(GraphError::DuplicateEdge {
                    from: edge.source,
                    to: edge.target,
                });
            }
            checked.push(edge);
        }
        checked.sort_by_key(|e| (e.source, e.target));

        let mut out_adjacency = vec![Vec::new(); node_count];
        let mut in_adjacency = vec![Vec::new(); node_count];
        for e in &checked {
            out_adjacency[e.source].push((e.target, e.weight));
        }
        // Iterating in (source, target) order keeps each in-list sorted by source.
        for e in &checked {
            in_adjacency[e.target].push((e.source, e.weight));
        }
        Ok(Self {
            node_count,
            edges: checked,
            out_adjacency,
            in_adjacency,
        })
    }

    /// Builds a graph from a dense matrix; every positive entry becomes an edge.
    pub fn from_adjacency_matrix(matrix: &AdjacencyMatrix) -> Result<Self, GraphError> {
        Self::from_rows(&matrix.rows())
    }

    /// Builds a graph from row slices, validating shape and entries.
    pub fn from_rows<R: AsRef<[f64]>>(rows: &[R]) -> Result<Self, GraphError> {
        let order = rows.len();
        let mut edges = Vec::new();
        for (i, row) in rows.iter().enumerate() {
            let row = row.as_ref();
            if row.len() != order {
                return Err(GraphError::NotSquare {
                    row: i,
                    len: row.len(),
                    expected: order,
                });
            }
            for (j, &value) in row.iter().enumerate() {
                if !value.is_finite() || value < 0.0 {
                    return Err(GraphError::NegativeEntry {
                        row: i,
                        col: j,
                        value,
                    });
                }
                if i == j && value != 0.0 {
                    return Err(GraphError::NonzeroDiagonal { index: i, value });
                }
                if value > 0.0 {
                    edges.push(Edge::weighted(i, j, value));
                }
            }
        }
        Self::build(order, edges)
    }

    pub fn node_count(&self) -> usize {
        self.node_count
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    /// Edges sorted by `(source, target)`.
    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    /// Out-neighbors of `node` with edge weights.
    pub fn out_neighbors(&self, node: NodeId) -> &[(NodeId, f64)] {
        &self.out_adjacency[node]
    }

    /// In-neighbors of `node` with edge weights.
    pub fn in_neighbors(&self, node: NodeId) -> &[(NodeId, f64)] {
        &self.in_adjacency[node]
    }

    pub fn out_degree(&self, node: NodeId) -> usize {
        self.out_adjacency[node].len()
    }

    pub fn in_degree(&self, node: NodeId) -> usize {
        self.in_adjacency[node].len()
    }

    /// `(in_degree, out_degree)` of `node`.
    pub fn degrees(&self, node: NodeId) -> Result<(usize, usize), GraphError> {
        if node >= self.node_count {
            return Err(GraphError::NodeOutOfRange {
                node,
                node_count: self.node_count,
            });
        }
        Ok((self.in_degree(node), self.out_degree(node)))
    }

    /// Nodes with no outgoing edges.
    pub fn dangling_nodes(&self) -> impl Iterator<Item = NodeId> + '_ {
        (0..self.node_count).filter(|&n| self.out_adjacency[n].is_empty())
    }

    pub fn to_adjacency_matrix(&self) -> AdjacencyMatrix {
        let mut matrix = AdjacencyMatrix::zeros(self.node_count);
        for e in &self.edges {
            matrix.set(e.source, e.target, e.weight);
        }
        matrix
    }

    /// Returns the graph with every edge direction flipped.
    pub fn reversed(&self) -> Self {
        Self::build(
            self.node_count,
            self.edges
                .iter()
                .map(|e| Edge::weighted(e.target, e.source, e.weight)),
        )
        .expect("reversing a valid graph keeps it valid")
    }

    /// Returns a copy with every edge weight multiplied by `factor`.
    pub fn scale_weights(&self, factor: f64) -> Result<Self, GraphError> {
        Self::build(
            self.node_count,
            self.edges
                .iter()
                .map(|e| Edge::weighted(e.source, e.target, e.weight * factor)),
        )
    }

    /// Serializes to the TSV edge-list format accepted by [`load_edge_list`].
    pub fn to_edge_list(&self) -> String {
        let mut out = format!("# nodes={}\n", self.node_count);
        for e in &self.edges {
            if e.weight == 1.0 {
                out.push_str(&format!("{}\t{}\n", e.source, e.target));
            } else {
                out.push_str(&format!("{}\t{}\t{}\n", e.source, e.target, e.weight));
            }
        }
        out
    }
}

pub(super) fn validate_edge(node_count: usize, edge: &Edge) -> Result<(), GraphError> {
    if edge.source >= node_count || edge.target >= node_count {
        return Err(GraphError::IdOutOfRange {
            from: edge.source,
            to: edge.target,
            node_count,
        });
    }
    if edge.source == edge.target {
        return Err(GraphError::SelfLoop { node: edge.source });
    }
    if !edge.weight.is_finite() || edge.weight <= 0.0 {
        return Err(GraphError::InvalidWeight {
            from: edge.source,
            to: edge.target,
            weight: edge.weight,
        });
    }
    Ok(())
}

/// Dense row-major `V x V` matrix; row = source, column = target.
#[derive(Debug, Clone, PartialEq)]
pub struct AdjacencyMatrix {
    order: usize,
    entries: Vec<f64>,
}

impl AdjacencyMatrix {
    pub fn zeros(order: usize) -> Self {
        Self {
            order,
            entries: vec![0.0; order * order],
        }
    }

    /// Validates and wraps row data. Same checks as [`Graph::from_rows`].
    pub fn from_rows<R: AsRef<[f64]>>(rows: &[R]) -> Result<Self, GraphError> {
        Graph::from_rows(rows).map(|g| g.to_adjacency_matrix())
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn get(&self, row: usize, col: usize) -> f64 {
        self.entries[row * self.order + col]
    }

    fn set(&mut self, row: usize, col: usize, value: f64) {
        self.entries[row * self.order + col] = value;
    }

    pub fn row(&self, row: usize) -> &[f64] {
        &self.entries[row * self.order..(row + 1) * self.order]
    }

    pub fn rows(&self) -> Vec<Vec<f64>> {
        (0..self.order).map(|r| self.row(r).to_vec()).collect()
    }

    /// Number of positive entries.
    pub fn nonzero_count(&self) -> usize {
        self.entries.iter().filter(|&&v| v > 0.0).count()
    }

    /// V lines of V space-separated reals.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for r in 0..self.order {
            let line: Vec<String> = self.row(r).iter().map(|v| v.to_string()).collect();
            out.push_str(&line.join(" "));
            out.push('\n');
        }
        out
    }
}
