//! Fixtures and brute-force oracles shared by the integration tests.
//!
//! The oracles here use dense linear algebra and naive counting so they stay
//! independent of the iterative solvers and ranking code under test.
#![allow(dead_code, clippy::needless_range_loop)]

use std::path::PathBuf;

use centrank::graph::{load_adjacency_matrix, load_edge_list, Graph};

pub fn fixture(name: &str) -> String {
    let path = PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("tests/fixtures")
        .join(name);
    std::fs::read_to_string(&path).unwrap_or_else(|e| panic!("{}: {e}", path.display()))
}

pub fn sample7() -> Graph {
    load_adjacency_matrix(&fixture("sample7_matrix.txt")).unwrap()
}

pub fn sample7_from_edge_list() -> Graph {
    load_edge_list(&fixture("sample7.tsv")).unwrap()
}

pub const SAMPLE7_LAMBDA: f64 = 3.3911;
pub const SAMPLE7_VECTOR: [f64; 7] = [0.4924, 0.3853, 0.3564, 0.3548, 0.4686, 0.3544, 0.1051];

/// Scores and ranks of one reference comparison; vertex labels 1-based.
pub struct ReferenceRanking {
    pub vertices: Vec<usize>,
    pub pagerank: Vec<f64>,
    pub pr_rank: Vec<f64>,
    pub eigenvector: Vec<f64>,
    pub ev_rank: Vec<f64>,
}

pub fn reference_ranking(number: usize) -> ReferenceRanking {
    let mut t = ReferenceRanking {
        vertices: Vec::new(),
        pagerank: Vec::new(),
        pr_rank: Vec::new(),
        eigenvector: Vec::new(),
        ev_rank: Vec::new(),
    };
    for line in fixture(&format!("ranking{number}.tsv")).lines() {
        if line.starts_with('#') || line.trim().is_empty() {
            continue;
        }
        let f: Vec<&str> = line.split('\t').collect();
        t.vertices.push(f[0].parse().unwrap());
        t.pagerank.push(f[1].parse().unwrap());
        t.pr_rank.push(f[2].parse().unwrap());
        t.eigenvector.push(f[3].parse().unwrap());
        t.ev_rank.push(f[4].parse().unwrap());
    }
    t
}

pub fn dense_rows(g: &Graph) -> Vec<Vec<f64>> {
    g.to_adjacency_matrix().rows()
}

fn matmul(a: &[Vec<f64>], b: &[Vec<f64>]) -> Vec<Vec<f64>> {
    let n = a.len();
    let mut out = vec![vec![0.0; n]; n];
    for i in 0..n {
        for k in 0..n {
            for j in 0..n {
                out[i][j] += a[i][k] * b[k][j];
            }
        }
    }
    out
}

/// Dominant right eigenpair by repeated squaring of `A + I`.
///
/// `(A + I)^(2^s)` tends to a rank-one matrix whose columns are multiples of
/// the dominant eigenvector; the largest column is taken and normalized.
pub fn dense_dominant_eigenpair(rows: &[Vec<f64>]) -> (f64, Vec<f64>) {
    let n = rows.len();
    let mut b: Vec<Vec<f64>> = rows.to_vec();
    for (i, row) in b.iter_mut().enumerate() {
        row[i] += 1.0;
    }
    for _ in 0..64 {
        b = matmul(&b, &b);
        let max = b.iter().flatten().fold(0.0f64, |m, v| m.max(v.abs()));
        b.iter_mut().flatten().for_each(|v| *v /= max);
    }
    let col_norm = |j: usize| (0..n).map(|i| b[i][j] * b[i][j]).sum::<f64>().sqrt();
    let best = (0..n)
        .max_by(|&x, &y| col_norm(x).total_cmp(&col_norm(y)))
        .unwrap();
    let norm = col_norm(best);
    let x: Vec<f64> = (0..n).map(|i| b[i][best].abs() / norm).collect();
    let ax_sum: f64 = (0..n)
        .map(|i| (0..n).map(|j| rows[i][j] * x[j]).sum::<f64>())
        .sum();
    (ax_sum / x.iter().sum::<f64>(), x)
}

/// Every node reaches every other node.
pub fn strongly_connected(rows: &[Vec<f64>]) -> bool {
    let n = rows.len();
    let mut reach: Vec<Vec<bool>> = (0..n)
        .map(|i| (0..n).map(|j| i == j || rows[i][j] > 0.0).collect())
        .collect();
    for k in 0..n {
        for i in 0..n {
            for j in 0..n {
                if reach[i][k] && reach[k][j] {
                    reach[i][j] = true;
                }
            }
        }
    }
    reach.iter().flatten().all(|&r| r)
}

/// PageRank by solving `(I - d M) x = (1 - d) 1` with Gaussian elimination,
/// where `M[a][b] = 1 / out(b)` for each edge `b -> a`.
pub fn pagerank_linear_solve(rows: &[Vec<f64>], d: f64) -> Vec<f64> {
    let n = rows.len();
    let out: Vec<f64> = rows
        .iter()
        .map(|r| r.iter().filter(|&&w| w > 0.0).count() as f64)
        .collect();
    let mut m = vec![vec![0.0; n + 1]; n];
    for a in 0..n {
        m[a][a] = 1.0;
        for b in 0..n {
            if rows[b][a] > 0.0 {
                m[a][b] -= d / out[b];
            }
        }
        m[a][n] = 1.0 - d;
    }
    for col in 0..n {
        let pivot = (col..n)
            .max_by(|&i, &j| m[i][col].abs().total_cmp(&m[j][col].abs()))
            .unwrap();
        m.swap(col, pivot);
        for r in 0..n {
            if r != col {
                let f = m[r][col] / m[col][col];
                for c in col..=n {
                    m[r][c] -= f * m[col][c];
                }
            }
        }
    }
    (0..n).map(|i| m[i][n] / m[i][i]).collect()
}

pub fn transpose(rows: &[Vec<f64>]) -> Vec<Vec<f64>> {
    let n = rows.len();
    (0..n)
        .map(|i| (0..n).map(|j| rows[j][i]).collect())
        .collect()
}

/// Average ranks by counting, highest value = rank 1.
pub fn naive_average_ranks(x: &[f64]) -> Vec<f64> {
    x.iter()
        .map(|&v| {
            let above = x.iter().filter(|&&w| w > v).count() as f64;
            let equal = x.iter().filter(|&&w| w == v).count() as f64;
            above + (equal + 1.0) / 2.0
        })
        .collect()
}

pub fn naive_pearson(x: &[f64], y: &[f64]) -> f64 {
    let n = x.len() as f64;
    let (sx, sy) = (x.iter().sum::<f64>(), y.iter().sum::<f64>());
    let sxy: f64 = x.iter().zip(y).map(|(a, b)| a * b).sum();
    let sxx: f64 = x.iter().map(|a| a * a).sum();
    let syy: f64 = y.iter().map(|b| b * b).sum();
    (n * sxy - sx * sy) / ((n * sxx - sx * sx).sqrt() * (n * syy - sy * sy).sqrt())
}

pub fn naive_spearman(x: &[f64], y: &[f64]) -> f64 {
    naive_pearson(&naive_average_ranks(x), &naive_average_ranks(y))
}

pub fn max_abs_diff(a: &[f64], b: &[f64]) -> f64 {
    a.iter()
        .zip(b)
        .map(|(x, y)| (x - y).abs())
        .fold(0.0, f64::max)
}

/// Seeded strongly connected digraphs with 4 to 10 nodes.
pub fn small_graph_corpus(count: usize) -> Vec<Graph> {
    let densities = [0.3, 0.4, 0.5];
    let mut out = Vec::new();
    let mut seed = 0u64;
    while out.len() < count {
        let n = 4 + (seed % 7) as usize;
        let p = densities[(seed % 3) as usize];
        let g = centrank::graph::random_digraph(n, p, 1000 + seed, true).unwrap();
        if strongly_connected(&dense_rows(&g)) {
            out.push(g);
        }
        seed += 1;
    }
    out
}
