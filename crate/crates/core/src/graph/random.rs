//! Seeded directed Erdős–Rényi generator.
//!
//! The stream comes from ChaCha8 seeded with `seed_from_u64(seed)`, which is
//! specified bit-for-bit and independent of platform and pointer width.
//! Draw order: one `f64` in `[0, 1)` per ordered pair `(i, j)`, `i != j`, in
//! row-major order; then, if requested, one `u64` draw in `[0, n - 1)` per
//! node left without out-edges, in ascending node order.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::{Edge, Graph, GraphError};

/// Edge probability used by the experiment suites.
pub const DEFAULT_DENSITY: f64 = 0.25;

/// Directed G(n, p). With `ensure_out_degree`, every node that ends up with
/// no out-edges gets one edge to a uniformly chosen other node.
pub fn random_digraph(
    n: usize,
    p: f64,
    seed: u64,
    ensure_out_degree: bool,
) -> Result<Graph, GraphError> {
    if !(0.0..=1.0).contains(&p) {
        return Err(GraphError::InvalidProbability(p));
    }
    if n < 2 {
        return Err(GraphError::TooFewNodes(n));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut edges = Vec::new();
    let mut out_degree = vec![0usize; n];
    for (i, degree) in out_degree.iter_mut().enumerate() {
        for j in 0..n {
            if i != j && rng.random::<f64>() < p {
                edges.push(Edge::new(i, j));
                *degree += 1;
            }
        }
    }
    if ensure_out_degree {
        for (i, _) in out_degree.iter().enumerate().filter(|(_, &d)| d == 0) {
            let mut target = rng.random_range(0..(n as u64 - 1)) as usize;
            if target >= i {
                target += 1;
            }
            edges.push(Edge::new(i, target));
        }
    }
    Graph::build(n, edges)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn extreme_densities() {
        assert_eq!(random_digraph(5, 0.0, 3, false).unwrap().edge_count(), 0);
        assert_eq!(random_digraph(5, 1.0, 3, false).unwrap().edge_count(), 20);
    }

    #[test]
    fn ensure_out_degree_covers_every_node() {
        let g = random_digraph(12, 0.0, 9, true).unwrap();
        assert_eq!(g.edge_count(), 12);
        assert_eq!(g.dangling_nodes().count(), 0);
    }

    #[test]
    fn deterministic_for_fixed_arguments() {
        let a = random_digraph(21, 0.25, 42, true).unwrap();
        let b = random_digraph(21, 0.25, 42, true).unwrap();
        assert_eq!(a.to_edge_list(), b.to_edge_list());
        let c = random_digraph(21, 0.25, 43, true).unwrap();
        assert_ne!(a.to_edge_list(), c.to_edge_list());
    }

    #[test]
    fn invalid_arguments() {
        assert_eq!(
            random_digraph(5, 1.5, 0, false),
            Err(GraphError::InvalidProbability(1.5))
        );
        assert!(random_digraph(5, f64::NAN, 0, false).is_err());
        assert_eq!(
            random_digraph(1, 0.5, 0, false),
            Err(GraphError::TooFewNodes(1))
        );
    }
}
