//! Multi-trial suites over several graph sizes.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::graph::DEFAULT_DENSITY;
use crate::rankstats::{critical_value, SpearmanMode};

use super::trial::{execute, Solvers, TrialResult};
use super::ExperimentError;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SuiteConfig {
    pub sizes: Vec<usize>,
    pub trials_per_size: usize,
    pub density: f64,
    pub base_seed: u64,
    pub solvers: Solvers,
    pub top_k: usize,
    pub spearman_mode: SpearmanMode,
    /// Record solver wall times per trial. Off by default because timings
    /// make reports differ between otherwise identical runs.
    #[serde(default)]
    pub record_timing: bool,
}

impl Default for SuiteConfig {
    fn default() -> Self {
        Self {
            sizes: vec![21, 50, 100],
            trials_per_size: 30,
            density: DEFAULT_DENSITY,
            base_seed: 42,
            solvers: Solvers::default(),
            top_k: 5,
            spearman_mode: SpearmanMode::Standard,
            record_timing: false,
        }
    }
}

impl SuiteConfig {
    pub fn validate(&self) -> Result<(), ExperimentError> {
        let invalid = |msg: String| Err(ExperimentError::InvalidConfig(msg));
        if self.sizes.is_empty() {
            return invalid("sizes must not be empty".into());
        }
        if let Some(&s) = self.sizes.iter().find(|&&s| s < 4) {
            return invalid(format!("size {s} must be at least 4"));
        }
        if self.trials_per_size == 0 {
            return invalid("trials_per_size must be at least 1".into());
        }
        if !(0.0..=1.0).contains(&self.density) {
            return invalid(format!("density {} must lie in [0, 1]", self.density));
        }
        let smallest = *self.sizes.iter().min().unwrap();
        if self.top_k == 0 || self.top_k > smallest {
            return invalid(format!("top_k {} must lie in [1, {smallest}]", self.top_k));
        }
        self.solvers.pagerank.validate()?;
        self.solvers.eigenvector.validate()?;
        Ok(())
    }
}

/// Per-size summary over successful trials.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SizeAggregate {
    pub size: usize,
    pub trials: usize,
    pub successes: usize,
    pub failures: usize,
    pub critical_value: Option<f64>,
    pub mean_rho: Option<f64>,
    pub min_rho: Option<f64>,
    pub max_rho: Option<f64>,
    pub mean_pearson: Option<f64>,
    /// Fraction of successful trials whose rho exceeds the critical value.
    pub significance_rate: Option<f64>,
    pub mean_top_k_overlap: Option<f64>,
}

impl SizeAggregate {
    fn from_trials(size: usize, trials: &[&TrialResult]) -> Self {
        let reports: Vec<_> = trials.iter().filter_map(|t| t.report.as_ref()).collect();
        let count = reports.len();
        let mean =
            |values: Vec<f64>| (count > 0).then(|| values.iter().sum::<f64>() / count as f64);
        let rhos: Vec<f64> = reports.iter().map(|r| r.spearman_rho).collect();
        Self {
            size,
            trials: trials.len(),
            successes: count,
            failures: trials.len() - count,
            critical_value: critical_value(size).map(|c| c.value),
            min_rho: rhos.iter().copied().reduce(f64::min),
            max_rho: rhos.iter().copied().reduce(f64::max),
            mean_rho: mean(rhos),
            mean_pearson: mean(reports.iter().map(|r| r.pearson_r).collect()),
            significance_rate: mean(
                reports
                    .iter()
                    .map(|r| f64::from(u8::from(r.significant == Some(true))))
                    .collect(),
            ),
            mean_top_k_overlap: mean(reports.iter().map(|r| r.top_k_overlap).collect()),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SuiteReport {
    pub config: SuiteConfig,
    pub aggregates: Vec<SizeAggregate>,
    /// Ordered by size (as configured), then trial index.
    pub trials: Vec<TrialResult>,
}

impl SuiteReport {
    pub fn aggregate(&self, size: usize) -> Option<&SizeAggregate> {
        self.aggregates.iter().find(|a| a.size == size)
    }
}

/// SplitMix64 finalizer.
fn splitmix64(mut z: u64) -> u64 {
    z = z.wrapping_add(0x9E37_79B9_7F4A_7C15);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// Seed of trial `index` at `size`: `base_seed XOR splitmix64(size << 32 | index)`.
///
/// Depends only on its own `(size, index)`, so adding sizes or trials never
/// changes the graphs of existing ones.
pub fn trial_seed(base_seed: u64, size: usize, index: usize) -> u64 {
    base_seed ^ splitmix64(((size as u64) << 32) | index as u64)
}

/// Runs every `(size, trial)` pair on the current rayon pool.
///
/// The report does not depend on scheduling: trials are independent and
/// collected in configuration order.
pub fn run_suite(cfg: &SuiteConfig) -> Result<SuiteReport, ExperimentError> {
    cfg.validate()?;
    let jobs: Vec<(usize, usize)> = cfg
        .sizes
        .iter()
        .flat_map(|&s| (0..cfg.trials_per_size).map(move |i| (s, i)))
        .collect();
    let trials = jobs
        .par_iter()
        .map(|&(size, index)| {
            let seed = trial_seed(cfg.base_seed, size, index);
            execute(
                size,
                cfg.density,
                seed,
                &cfg.solvers,
                cfg.top_k,
                cfg.spearman_mode,
                cfg.record_timing,
            )
            .map(|mut t| {
                t.trial_index = index;
                t
            })
        })
        .collect::<Result<Vec<_>, _>>()?;

    let aggregates = cfg
        .sizes
        .iter()
        .map(|&size| {
            let members: Vec<&TrialResult> = trials.iter().filter(|t| t.size == size).collect();
            SizeAggregate::from_trials(size, &members)
        })
        .collect();
    Ok(SuiteReport {
        config: cfg.clone(),
        aggregates,
        trials,
    })
}

/// [`run_suite`] on a dedicated pool of `threads` workers.
pub fn run_suite_with_threads(
    cfg: &SuiteConfig,
    threads: usize,
) -> Result<SuiteReport, ExperimentError> {
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(threads.max(1))
        .build()
        .map_err(|e| ExperimentError::InvalidConfig(format!("thread pool: {e}")))?;
    pool.install(|| run_suite(cfg))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn single_trial_suite() {
        let cfg = SuiteConfig {
            sizes: vec![21],
            trials_per_size: 1,
            ..SuiteConfig::default()
        };
        let report = run_suite(&cfg).unwrap();
        assert_eq!(report.trials.len(), 1);
        assert_eq!(report.aggregates.len(), 1);
        let t = &report.trials[0];
        assert_eq!(t.seed, trial_seed(42, 21, 0));
        assert_eq!(
            report.aggregates[0].mean_rho,
            t.report.as_ref().map(|r| r.spearman_rho)
        );
    }

    #[test]
    fn seeds_are_stable_when_sizes_change() {
        assert_eq!(trial_seed(7, 50, 3), trial_seed(7, 50, 3));
        assert_ne!(trial_seed(7, 50, 3), trial_seed(7, 50, 4));
        assert_ne!(trial_seed(7, 50, 3), trial_seed(7, 21, 3));
        let small = SuiteConfig {
            sizes: vec![21],
            trials_per_size: 3,
            ..SuiteConfig::default()
        };
        let wide = SuiteConfig {
            sizes: vec![30, 21],
            ..small.clone()
        };
        let a = run_suite(&small).unwrap();
        let b = run_suite(&wide).unwrap();
        assert_eq!(a.trials[..], b.trials[3..]);
    }

    #[test]
    fn thread_count_does_not_matter() {
        let cfg = SuiteConfig {
            sizes: vec![21, 30],
            trials_per_size: 4,
            ..SuiteConfig::default()
        };
        assert_eq!(
            run_suite_with_threads(&cfg, 1).unwrap(),
            run_suite_with_threads(&cfg, 4).unwrap()
        );
    }

    #[test]
    fn failures_are_counted_not_averaged() {
        let cfg = SuiteConfig {
            sizes: vec![8],
            trials_per_size: 2,
            density: 1.0,
            ..SuiteConfig::default()
        };
        let agg = &run_suite(&cfg).unwrap().aggregates[0];
        assert_eq!((agg.successes, agg.failures), (0, 2));
        assert_eq!(agg.mean_rho, None);
    }

    #[test]
    fn config_validation() {
        let bad = [
            SuiteConfig {
                sizes: vec![],
                ..SuiteConfig::default()
            },
            SuiteConfig {
                sizes: vec![3],
                ..SuiteConfig::default()
            },
            SuiteConfig {
                trials_per_size: 0,
                ..SuiteConfig::default()
            },
            SuiteConfig {
                density: 1.5,
                ..SuiteConfig::default()
            },
            SuiteConfig {
                top_k: 0,
                ..SuiteConfig::default()
            },
            SuiteConfig {
                sizes: vec![4],
                top_k: 5,
                ..SuiteConfig::default()
            },
        ];
        for cfg in bad {
            assert!(run_suite(&cfg).is_err(), "{cfg:?}");
        }
    }
}
