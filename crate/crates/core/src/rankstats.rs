//! Rankings and agreement statistics between two centrality vectors.
//!
//! Rank 1 is the highest score. Two tie policies are available: competition
//! ("1224", ties share the lowest rank number and the next rank skips) and
//! average (ties share the mean of the positions they occupy).
//!
//! Spearman's rho comes in two flavors. [`SpearmanMode::Standard`] is the
//! Pearson correlation of average ranks, which equals the classic
//! `1 - 6 sum(d^2) / (n (n^2 - 1))` when neither ranking has ties.
//! [`SpearmanMode::Classic`] applies the classic formula verbatim to
//! whatever ranks it is given, ties included, which is how published rank
//! tables with competition ties are usually scored.

use serde::{Deserialize, Serialize};
use statrs::distribution::{ContinuousCDF, StudentsT};
use thiserror::Error;

use crate::centrality::{CentralityScores, Method};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum RankError {
    #[error("score at index {index} is not finite")]
    NonFiniteScore { index: usize },
    #[error("length mismatch: {left} vs {right}")]
    LengthMismatch { left: usize, right: usize },
    #[error("need at least 2 items, got {0}")]
    TooFewItems(usize),
    #[error("all ranks are equal; rank correlation is undefined")]
    DegenerateRanking,
    #[error("vector has zero variance; correlation is undefined")]
    ZeroVariance,
    #[error("k = {k} must lie in [1, {n}]")]
    InvalidK { k: usize, n: usize },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum TiePolicy {
    #[default]
    Competition,
    Average,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SpearmanMode {
    #[default]
    Standard,
    Classic,
}

/// Per-node ranks; `ranks[i]` is the rank of node `i`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Ranking {
    pub ranks: Vec<f64>,
    pub tie_policy: TiePolicy,
    pub source_method: Option<Method>,
}

impl Ranking {
    /// Wraps precomputed ranks, e.g. a rank column copied from a table.
    pub fn from_ranks(ranks: Vec<f64>, tie_policy: TiePolicy) -> Self {
        Self {
            ranks,
            tie_policy,
            source_method: None,
        }
    }

    pub fn len(&self) -> usize {
        self.ranks.len()
    }

    pub fn is_empty(&self) -> bool {
        self.ranks.is_empty()
    }

    pub fn has_ties(&self) -> bool {
        let mut sorted = self.ranks.clone();
        sorted.sort_by(f64::total_cmp);
        sorted.windows(2).any(|w| w[0] == w[1])
    }

    /// Nodes whose rank is at most `k`, in ascending node order.
    pub fn top_k(&self, k: usize) -> Vec<usize> {
        (0..self.len())
            .filter(|&i| self.ranks[i] <= k as f64)
            .collect()
    }

    /// Re-expresses the same ordering with average ranks for tied groups.
    pub fn to_average(&self) -> Ranking {
        let mut order: Vec<usize> = (0..self.len()).collect();
        order.sort_by(|&a, &b| self.ranks[a].total_cmp(&self.ranks[b]));
        let keys: Vec<f64> = order.iter().map(|&i| self.ranks[i]).collect();
        Ranking {
            ranks: assign_ranks(&order, &keys, TiePolicy::Average),
            tie_policy: TiePolicy::Average,
            source_method: self.source_method,
        }
    }
}

/// `order` lists node ids best-first and `keys[p]` is the comparison key of
/// `order[p]`; equal adjacent keys form a tie group.
fn assign_ranks(order: &[usize], keys: &[f64], policy: TiePolicy) -> Vec<f64> {
    let n = order.len();
    let mut ranks = vec![0.0; n];
    let mut start = 0;
    while start < n {
        let mut end = start + 1;
        while end < n && keys[end] == keys[start] {
            end += 1;
        }
        let rank = match policy {
            TiePolicy::Competition => (start + 1) as f64,
            TiePolicy::Average => (start + 1 + end) as f64 / 2.0,
        };
        for &node in &order[start..end] {
            ranks[node] = rank;
        }
        start = end;
    }
    ranks
}

fn round_to(value: f64, decimals: u32) -> f64 {
    let scale = 10f64.powi(decimals as i32);
    (value * scale).round() / scale
}

/// Ranks scores in descending order, comparing at full precision.
pub fn rank_scores(scores: &[f64], policy: TiePolicy) -> Result<Ranking, RankError> {
    rank_scores_with(scores, policy, None)
}

/// Ranks scores after rounding them to `decimals` places, so values that
/// print identically at that precision tie.
pub fn rank_scores_rounded(
    scores: &[f64],
    policy: TiePolicy,
    decimals: u32,
) -> Result<Ranking, RankError> {
    rank_scores_with(scores, policy, Some(decimals))
}

pub fn rank_scores_with(
    scores: &[f64],
    policy: TiePolicy,
    decimals: Option<u32>,
) -> Result<Ranking, RankError> {
    if let Some(index) = scores.iter().position(|v| !v.is_finite()) {
        return Err(RankError::NonFiniteScore { index });
    }
    let keys: Vec<f64> = match decimals {
        Some(d) => scores.iter().map(|&v| round_to(v, d)).collect(),
        None => scores.to_vec(),
    };
    let mut order: Vec<usize> = (0..keys.len()).collect();
    // Descending by key, ascending node id within ties.
    order.sort_by(|&a, &b| keys[b].total_cmp(&keys[a]).then(a.cmp(&b)));
    let sorted_keys: Vec<f64> = order.iter().map(|&i| keys[i]).collect();
    Ok(Ranking {
        ranks: assign_ranks(&order, &sorted_keys, policy),
        tie_policy: policy,
        source_method: None,
    })
}

fn check_pair(left: usize, right: usize) -> Result<(), RankError> {
    if left != right {
        return Err(RankError::LengthMismatch { left, right });
    }
    if left < 2 {
        return Err(RankError::TooFewItems(left));
    }
    Ok(())
}

fn is_constant(values: &[f64]) -> bool {
    values.windows(2).all(|w| w[0] == w[1])
}

/// Spearman's rho in [`SpearmanMode::Standard`].
pub fn spearman_rho(a: &Ranking, b: &Ranking) -> Result<f64, RankError> {
    spearman_rho_with(a, b, SpearmanMode::Standard)
}

pub fn spearman_rho_with(a: &Ranking, b: &Ranking, mode: SpearmanMode) -> Result<f64, RankError> {
    check_pair(a.len(), b.len())?;
    if is_constant(&a.ranks) || is_constant(&b.ranks) {
        return Err(RankError::DegenerateRanking);
    }
    if mode == SpearmanMode::Classic || !(a.has_ties() || b.has_ties()) {
        let n = a.len() as f64;
        let d2: f64 = a
            .ranks
            .iter()
            .zip(&b.ranks)
            .map(|(x, y)| (x - y) * (x - y))
            .sum();
        return Ok(1.0 - 6.0 * d2 / (n * (n * n - 1.0)));
    }
    pearson_r(&a.to_average().ranks, &b.to_average().ranks).map_err(|e| match e {
        RankError::ZeroVariance => RankError::DegenerateRanking,
        other => other,
    })
}

/// Product-moment correlation of two raw vectors.
pub fn pearson_r(x: &[f64], y: &[f64]) -> Result<f64, RankError> {
    check_pair(x.len(), y.len())?;
    if let Some(index) = x.iter().chain(y).position(|v| !v.is_finite()) {
        return Err(RankError::NonFiniteScore {
            index: index % x.len(),
        });
    }
    let n = x.len() as f64;
    let mean_x = x.iter().sum::<f64>() / n;
    let mean_y = y.iter().sum::<f64>() / n;
    let (mut sxy, mut sxx, mut syy) = (0.0, 0.0, 0.0);
    for (a, b) in x.iter().zip(y) {
        let (dx, dy) = (a - mean_x, b - mean_y);
        sxy += dx * dy;
        sxx += dx * dx;
        syy += dy * dy;
    }
    if sxx == 0.0 || syy == 0.0 {
        return Err(RankError::ZeroVariance);
    }
    Ok((sxy / (sxx.sqrt() * syy.sqrt())).clamp(-1.0, 1.0))
}

/// Significance threshold for rho.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CriticalValue {
    pub value: f64,
    /// False for the tabulated sizes 21, 50 and 100.
    pub approximate: bool,
}

/// One-tailed level used for sizes without a tabulated threshold. The
/// tabulated values for 21, 50 and 100 nodes sit at this level.
pub const CRITICAL_ALPHA: f64 = 0.0005;

/// Critical rho for `n` ranked items; `None` below 4.
///
/// Sizes 21, 50 and 100 return fixed thresholds. Other sizes use the
/// t-approximation `t / sqrt(n - 2 + t^2)` with `t` the upper
/// [`CRITICAL_ALPHA`] quantile of Student's t on `n - 2` degrees of freedom.
pub fn critical_value(n: usize) -> Option<CriticalValue> {
    let tabulated = match n {
        21 => Some(0.681),
        50 => Some(0.465),
        100 => Some(0.326),
        _ => None,
    };
    if let Some(value) = tabulated {
        return Some(CriticalValue {
            value,
            approximate: false,
        });
    }
    (n >= 4).then(|| CriticalValue {
        value: t_critical_value(n, CRITICAL_ALPHA),
        approximate: true,
    })
}

/// `t / sqrt(n - 2 + t^2)` for the upper-`alpha` Student's t quantile.
pub fn t_critical_value(n: usize, alpha: f64) -> f64 {
    let df = (n - 2) as f64;
    let t = StudentsT::new(0.0, 1.0, df)
        .expect("degrees of freedom are positive")
        .inverse_cdf(1.0 - alpha);
    t / (df + t * t).sqrt()
}

/// Overlap of the two top-`k` sets, `|A ∩ B| / max(k, |A|, |B|)`.
///
/// A top-`k` set holds every node ranked `k` or better, so it can be larger
/// than `k` when ties straddle the cutoff.
pub fn top_k_agreement(a: &Ranking, b: &Ranking, k: usize) -> Result<f64, RankError> {
    if a.len() != b.len() {
        return Err(RankError::LengthMismatch {
            left: a.len(),
            right: b.len(),
        });
    }
    if k == 0 || k > a.len() {
        return Err(RankError::InvalidK { k, n: a.len() });
    }
    let top_a = a.top_k(k);
    let top_b = b.top_k(k);
    let shared = top_a.iter().filter(|i| top_b.contains(i)).count();
    Ok(shared as f64 / k.max(top_a.len()).max(top_b.len()) as f64)
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CompareOptions {
    pub top_k: usize,
    pub mode: SpearmanMode,
    /// Round scores to this many decimals before detecting ties.
    pub decimals: Option<u32>,
}

impl CompareOptions {
    pub fn new(top_k: usize) -> Self {
        Self {
            top_k,
            mode: SpearmanMode::Standard,
            decimals: None,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CorrelationReport {
    pub n: usize,
    pub spearman_rho: f64,
    pub spearman_mode: SpearmanMode,
    pub pearson_r: f64,
    pub critical_value: Option<f64>,
    pub critical_value_approximate: bool,
    /// `spearman_rho > critical_value`, when a critical value exists.
    pub significant: Option<bool>,
    pub top_k: usize,
    pub top_k_overlap: f64,
}

/// Competition rankings of both score vectors plus the agreement report.
#[derive(Debug, Clone, PartialEq)]
pub struct Comparison {
    pub ranking_a: Ranking,
    pub ranking_b: Ranking,
    pub report: CorrelationReport,
}

/// Compares two score vectors with default options and top-`k` overlap.
pub fn compare(
    a: &CentralityScores,
    b: &CentralityScores,
    k: usize,
) -> Result<CorrelationReport, RankError> {
    compare_with(a, b, &CompareOptions::new(k)).map(|c| c.report)
}

pub fn compare_with(
    a: &CentralityScores,
    b: &CentralityScores,
    opts: &CompareOptions,
) -> Result<Comparison, RankError> {
    let mut comparison = compare_raw(&a.scores, &b.scores, opts)?;
    comparison.ranking_a.source_method = Some(a.method);
    comparison.ranking_b.source_method = Some(b.method);
    Ok(comparison)
}

/// [`compare_with`] on bare score vectors.
pub fn compare_raw(a: &[f64], b: &[f64], opts: &CompareOptions) -> Result<Comparison, RankError> {
    check_pair(a.len(), b.len())?;
    let ranking_a = rank_scores_with(a, TiePolicy::Competition, opts.decimals)?;
    let ranking_b = rank_scores_with(b, TiePolicy::Competition, opts.decimals)?;
    let spearman_rho = spearman_rho_with(&ranking_a, &ranking_b, opts.mode)?;
    let pearson_r = pearson_r(a, b)?;
    let top_k_overlap = top_k_agreement(&ranking_a, &ranking_b, opts.top_k)?;
    let critical = critical_value(a.len());
    Ok(Comparison {
        report: CorrelationReport {
            n: a.len(),
            spearman_rho,
            spearman_mode: opts.mode,
            pearson_r,
            critical_value: critical.map(|c| c.value),
            critical_value_approximate: critical.is_some_and(|c| c.approximate),
            significant: critical.map(|c| spearman_rho > c.value),
            top_k: opts.top_k,
            top_k_overlap,
        },
        ranking_a,
        ranking_b,
    })
}
