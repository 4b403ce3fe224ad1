use std::time::Instant;

use serde::{Deserialize, Serialize};

use crate::centrality::{
    eigenvector_centrality, pagerank, CentralityError, CentralityScores, Method, SolverConfig,
};
use crate::graph::{random_digraph, Graph};
use crate::rankstats::{
    compare_raw, rank_scores, CompareOptions, CorrelationReport, RankError, SpearmanMode, TiePolicy,
};

use super::ExperimentError;

/// Which links PageRank follows when it is paired with eigenvector
/// centrality.
///
/// Eigenvector centrality scores node `k` by the nodes it points to
/// (`sum_l a_kl x_l`). `Incoming` runs PageRank as usual, scoring a node by
/// the nodes pointing to it; on random digraphs in- and out-links are
/// independent and the two rankings come out uncorrelated. `Outgoing` runs
/// PageRank on the reversed graph so both methods read the same rows of the
/// adjacency matrix.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum PageRankLinks {
    Incoming,
    #[default]
    Outgoing,
}

/// Solver settings for both methods.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Solvers {
    pub pagerank: SolverConfig,
    pub eigenvector: SolverConfig,
    pub pagerank_links: PageRankLinks,
}

impl Default for Solvers {
    fn default() -> Self {
        Self {
            pagerank: SolverConfig::pagerank(),
            eigenvector: SolverConfig::eigenvector(),
            pagerank_links: PageRankLinks::default(),
        }
    }
}

/// One line of the per-node comparison table. `vertex` is 0-based.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TableRow {
    pub vertex: usize,
    pub pagerank: f64,
    pub pr_rank: usize,
    pub eigenvector: f64,
    pub ev_rank: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum TrialFailure {
    NonConvergence {
        method: Method,
        iterations: usize,
        residual: f64,
    },
    ZeroMatrix,
    DegenerateRanking,
    Statistics {
        message: String,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
pub struct TrialTiming {
    pub pagerank_ms: f64,
    pub eigenvector_ms: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TrialResult {
    pub size: usize,
    pub trial_index: usize,
    pub seed: u64,
    pub density: f64,
    pub edge_count: usize,
    pub report: Option<CorrelationReport>,
    pub failure: Option<TrialFailure>,
    pub dominant_eigenvalue: Option<f64>,
    pub pagerank_iterations: Option<usize>,
    pub eigenvector_iterations: Option<usize>,
    /// Sorted by PageRank rank, then vertex id.
    pub rows: Vec<TableRow>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub timing: Option<TrialTiming>,
}

impl TrialResult {
    pub fn succeeded(&self) -> bool {
        self.report.is_some()
    }
}

/// Runs one comparison on `random_digraph(size, p, seed, true)`.
///
/// Solver and ranking failures are recorded in [`TrialResult::failure`];
/// only invalid arguments return an error. The result carries no timing
/// and is a pure function of the arguments.
pub fn run_trial(
    size: usize,
    p: f64,
    seed: u64,
    solvers: &Solvers,
    k: usize,
) -> Result<TrialResult, ExperimentError> {
    execute(size, p, seed, solvers, k, SpearmanMode::Standard, false)
}

/// [`run_trial`] plus wall-clock timings of both solvers.
pub fn run_trial_timed(
    size: usize,
    p: f64,
    seed: u64,
    solvers: &Solvers,
    k: usize,
) -> Result<TrialResult, ExperimentError> {
    execute(size, p, seed, solvers, k, SpearmanMode::Standard, true)
}

fn non_convergence(method: Method, err: CentralityError) -> TrialFailure {
    match err {
        CentralityError::NonConvergence {
            iterations,
            residual,
        } => TrialFailure::NonConvergence {
            method,
            iterations,
            residual,
        },
        CentralityError::ZeroMatrix => TrialFailure::ZeroMatrix,
        other => TrialFailure::Statistics {
            message: other.to_string(),
        },
    }
}

fn timed<T>(f: impl FnOnce() -> T) -> (T, f64) {
    let start = Instant::now();
    let out = f();
    (out, start.elapsed().as_secs_f64() * 1e3)
}

/// Both centralities of one graph and their agreement.
///
/// Solver and ranking failures land in `failure`; the scores that were
/// computed before the failure are kept.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GraphComparison {
    pub pagerank: Option<CentralityScores>,
    pub eigenvector: Option<CentralityScores>,
    /// Empty unless both solvers converged.
    pub rows: Vec<TableRow>,
    pub report: Option<CorrelationReport>,
    pub failure: Option<TrialFailure>,
    /// Wall times; never serialized.
    #[serde(skip)]
    pub timing: TrialTiming,
}

/// Runs both solvers on `graph` and compares their rankings.
pub fn compare_graph(
    graph: &Graph,
    solvers: &Solvers,
    opts: &CompareOptions,
) -> Result<GraphComparison, ExperimentError> {
    solvers.pagerank.validate()?;
    solvers.eigenvector.validate()?;
    let n = graph.node_count();
    if opts.top_k == 0 || opts.top_k > n {
        return Err(ExperimentError::InvalidConfig(format!(
            "top-k {} must lie in [1, {n}]",
            opts.top_k
        )));
    }
    let (pr, pagerank_ms) = timed(|| match solvers.pagerank_links {
        PageRankLinks::Incoming => pagerank(graph, &solvers.pagerank),
        PageRankLinks::Outgoing => pagerank(&graph.reversed(), &solvers.pagerank),
    });
    let (ev, eigenvector_ms) = timed(|| eigenvector_centrality(graph, &solvers.eigenvector));
    let mut out = GraphComparison {
        pagerank: None,
        eigenvector: None,
        rows: Vec::new(),
        report: None,
        failure: None,
        timing: TrialTiming {
            pagerank_ms,
            eigenvector_ms,
        },
    };
    let pr = match pr {
        Ok(s) => s,
        Err(e) => {
            out.failure = Some(non_convergence(Method::PageRank, e));
            return Ok(out);
        }
    };
    out.pagerank = Some(pr);
    let ev = match ev {
        Ok(s) => s,
        Err(e) => {
            out.failure = Some(non_convergence(Method::Eigenvector, e));
            return Ok(out);
        }
    };
    let pr = out.pagerank.as_ref().unwrap();
    match compare_raw(&pr.scores, &ev.scores, opts) {
        Ok(cmp) => {
            out.rows = table_rows(pr, &ev, &cmp.ranking_a.ranks, &cmp.ranking_b.ranks);
            out.report = Some(cmp.report);
        }
        Err(e) => {
            let ranks = |scores: &[f64]| {
                rank_scores(scores, TiePolicy::Competition)
                    .map(|r| r.ranks)
                    .unwrap_or_default()
            };
            out.rows = table_rows(pr, &ev, &ranks(&pr.scores), &ranks(&ev.scores));
            out.failure = Some(match e {
                RankError::DegenerateRanking => TrialFailure::DegenerateRanking,
                other => TrialFailure::Statistics {
                    message: other.to_string(),
                },
            });
        }
    }
    out.eigenvector = Some(ev);
    Ok(out)
}

pub(super) fn execute(
    size: usize,
    p: f64,
    seed: u64,
    solvers: &Solvers,
    k: usize,
    mode: SpearmanMode,
    record_timing: bool,
) -> Result<TrialResult, ExperimentError> {
    if size < 4 {
        return Err(ExperimentError::InvalidConfig(format!(
            "trial size {size} must be at least 4"
        )));
    }
    let graph = random_digraph(size, p, seed, true)?;
    let opts = CompareOptions {
        top_k: k,
        mode,
        decimals: None,
    };
    let cmp = compare_graph(&graph, solvers, &opts)?;
    Ok(TrialResult {
        size,
        trial_index: 0,
        seed,
        density: p,
        edge_count: graph.edge_count(),
        report: cmp.report,
        failure: cmp.failure,
        dominant_eigenvalue: cmp.eigenvector.as_ref().and_then(|e| e.dominant_eigenvalue),
        pagerank_iterations: cmp.pagerank.as_ref().map(|s| s.iterations),
        eigenvector_iterations: cmp.eigenvector.as_ref().map(|s| s.iterations),
        rows: cmp.rows,
        timing: record_timing.then_some(cmp.timing),
    })
}

/// Builds table rows sorted by PageRank rank; an empty rank slice reads as rank 1.
fn table_rows(
    pr: &CentralityScores,
    ev: &CentralityScores,
    pr_ranks: &[f64],
    ev_ranks: &[f64],
) -> Vec<TableRow> {
    let rank = |ranks: &[f64], i: usize| ranks.get(i).map_or(1, |&r| r as usize);
    let mut rows: Vec<TableRow> = (0..pr.len())
        .map(|i| TableRow {
            vertex: i,
            pagerank: pr.scores[i],
            pr_rank: rank(pr_ranks, i),
            eigenvector: ev.scores[i],
            ev_rank: rank(ev_ranks, i),
        })
        .collect();
    rows.sort_by_key(|r| (r.pr_rank, r.vertex));
    rows
}

/// Paired `(a, b)` points per node, sorted by `a` then `b`.
pub fn scatter_data(
    a: &CentralityScores,
    b: &CentralityScores,
) -> Result<Vec<(f64, f64)>, ExperimentError> {
    if a.len() != b.len() {
        return Err(ExperimentError::LengthMismatch {
            left: a.len(),
            right: b.len(),
        });
    }
    let mut points: Vec<(f64, f64)> = a
        .scores
        .iter()
        .copied()
        .zip(b.scores.iter().copied())
        .collect();
    points.sort_by(|x, y| x.0.total_cmp(&y.0).then(x.1.total_cmp(&y.1)));
    Ok(points)
}
