mod common;

use centrank::centrality::{CentralityScores, Method};
use centrank::experiments::scatter_data;
use centrank::rankstats::{
    compare_raw, pearson_r, rank_scores, spearman_rho_with, top_k_agreement, CompareOptions,
    Ranking, SpearmanMode, TiePolicy,
};

use common::*;

fn printed(ranks: &[f64]) -> Ranking {
    Ranking::from_ranks(ranks.to_vec(), TiePolicy::Competition)
}

/// `1 - 6 sum d^2 / (n (n^2 - 1))` with the sum done by hand.
fn d_squared_formula(a: &[f64], b: &[f64]) -> f64 {
    let n = a.len() as f64;
    let d2: f64 = a.iter().zip(b).map(|(x, y)| (x - y) * (x - y)).sum();
    1.0 - 6.0 * d2 / (n * (n * n - 1.0))
}

#[test]
fn classic_mode_is_the_d_squared_formula() {
    for table in 1..=6 {
        let t = reference_ranking(table);
        let rho = spearman_rho_with(
            &printed(&t.pr_rank),
            &printed(&t.ev_rank),
            SpearmanMode::Classic,
        )
        .unwrap();
        assert!(
            (rho - d_squared_formula(&t.pr_rank, &t.ev_rank)).abs() < 1e-12,
            "ranking {table}"
        );
    }
}

#[test]
fn standard_mode_matches_naive_average_rank_spearman() {
    for table in 1..=6 {
        let t = reference_ranking(table);
        let rho = spearman_rho_with(
            &printed(&t.pr_rank),
            &printed(&t.ev_rank),
            SpearmanMode::Standard,
        )
        .unwrap();
        let naive = naive_spearman(
            &t.pr_rank.iter().map(|r| -r).collect::<Vec<_>>(),
            &t.ev_rank.iter().map(|r| -r).collect::<Vec<_>>(),
        );
        assert!(
            (rho - naive).abs() < 1e-12,
            "ranking {table}: {rho} vs {naive}"
        );
    }
}

#[test]
fn tie_free_tables_agree_across_modes() {
    let t = reference_ranking(1);
    let (a, b) = (printed(&t.pr_rank), printed(&t.ev_rank));
    assert!(!a.has_ties() && !b.has_ties());
    let standard = spearman_rho_with(&a, &b, SpearmanMode::Standard).unwrap();
    let compat = spearman_rho_with(&a, &b, SpearmanMode::Classic).unwrap();
    assert!((standard - compat).abs() < 1e-12);
}

#[test]
fn ranking_printed_scores_reproduces_printed_ranks() {
    for table in 1..=4 {
        let t = reference_ranking(table);
        let pr = rank_scores(&t.pagerank, TiePolicy::Competition).unwrap();
        let ev = rank_scores(&t.eigenvector, TiePolicy::Competition).unwrap();
        assert_eq!(pr.ranks, t.pr_rank, "ranking {table} pagerank");
        assert_eq!(ev.ranks, t.ev_rank, "ranking {table} eigenvector");
    }
}

#[test]
fn printed_scores_are_strongly_linear() {
    let t = reference_ranking(1);
    let r = pearson_r(&t.pagerank, &t.eigenvector).unwrap();
    assert!(r > 0.98, "{r}");
    assert!((r - naive_pearson(&t.pagerank, &t.eigenvector)).abs() < 1e-12);
}

#[test]
fn top5_overlap_on_large_tables() {
    for table in [1, 3, 5] {
        let t = reference_ranking(table);
        let overlap = top_k_agreement(&printed(&t.pr_rank), &printed(&t.ev_rank), 5).unwrap();
        assert_eq!(overlap, 1.0, "ranking {table}");
    }
}

#[test]
fn compare_raw_on_printed_scores_is_significant() {
    for table in [1, 2] {
        let t = reference_ranking(table);
        let c = compare_raw(&t.pagerank, &t.eigenvector, &CompareOptions::new(5)).unwrap();
        assert_eq!(c.report.n, 21);
        assert_eq!(c.report.significant, Some(true));
        assert_eq!(c.report.critical_value, Some(0.681));
    }
}

#[test]
fn scatter_pairs_every_vertex() {
    let t = reference_ranking(1);
    let wrap = |method, scores: &[f64]| CentralityScores {
        method,
        scores: scores.to_vec(),
        dominant_eigenvalue: None,
        iterations: 0,
        converged: true,
        residual: 0.0,
        edge_visits: 0,
    };
    let points = scatter_data(
        &wrap(Method::PageRank, &t.pagerank),
        &wrap(Method::Eigenvector, &t.eigenvector),
    )
    .unwrap();
    assert_eq!(points.len(), 21);
    assert!(points.windows(2).all(|w| w[0].0 <= w[1].0));
    let mut expected: Vec<(f64, f64)> = t
        .pagerank
        .iter()
        .copied()
        .zip(t.eigenvector.iter().copied())
        .collect();
    expected.sort_by(|x, y| x.0.total_cmp(&y.0).then(x.1.total_cmp(&y.1)));
    assert_eq!(points, expected);
}
