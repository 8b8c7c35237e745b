//! Experiment suites: cross products of generators, algorithms and seeds, written as CSV.

mod suite;
mod table;

pub use suite::{parse_suite, read_suite, BenchSuite, SuiteKind};
pub use table::{format_sig, summarize, write_rows, write_summary, BenchRow, SummaryRow, ROW_COLUMNS, SUMMARY_COLUMNS};

use std::time::Instant;

use crate::error::{ConfigError, SolveError};
use crate::generators::{generate, GeneratorConfig, Scheme};
use crate::instance::ProblemInstance;
use crate::par::{map_slice, Execution};
use crate::report::Deadline;
use crate::solver::{solve, Algorithm, SolveOptions};

/// Dataset tag of rows produced from `scheme`.
pub fn dataset_tag(scheme: Scheme) -> &'static str {
    match scheme {
        Scheme::SessionYoutube => "video-sim",
        Scheme::SessionBlocks => "blocks-sim",
        Scheme::Adversarial => "adversarial",
        _ => "synthetic",
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
struct InstanceKey {
    scheme: Scheme,
    m: usize,
    q: f64,
    seed: u64,
}

#[derive(Debug, Clone, Copy)]
struct Job {
    instance: usize,
    k: Option<usize>,
    algorithm: Algorithm,
}

/// Runs every job of `suite` and returns one row per (instance, k, algorithm, seed), in
/// suite order regardless of `exec`.
pub fn run_suite(suite: &BenchSuite, exec: Execution) -> Result<Vec<BenchRow>, ConfigError> {
    let mut keys = Vec::new();
    for &scheme in &suite.schemes {
        for &m in &suite.ms {
            for &q in &suite.qs {
                for &seed in &suite.seeds {
                    keys.push(InstanceKey { scheme, m, q, seed });
                }
            }
        }
    }
    let instances = map_slice(&keys, exec, |key| {
        let cfg = GeneratorConfig { scheme: key.scheme, m: key.m, q: key.q, seed: key.seed, ..suite.base.clone() };
        generate(&cfg)
    })
    .into_iter()
    .collect::<Result<Vec<ProblemInstance>, _>>()?;

    // Seeds vary fastest, then algorithms, so rows of one group are adjacent.
    let per_seed = suite.seeds.len();
    let mut jobs = Vec::new();
    for group in 0..keys.len() / per_seed {
        for &k in &suite.ks {
            for &algorithm in &suite.algorithms {
                for s in 0..per_seed {
                    jobs.push(Job { instance: group * per_seed + s, k, algorithm });
                }
            }
        }
    }

    Ok(map_slice(&jobs, exec, |job| {
        let key = keys[job.instance];
        let inst = &instances[job.instance];
        let opts = SolveOptions { k: job.k, threshold: None, deadline: Deadline::after(suite.time_limit) };
        let start = Instant::now();
        let outcome = solve(job.algorithm, inst, &opts);
        let mut row = BenchRow {
            dataset: dataset_tag(key.scheme).to_string(),
            scheme: key.scheme.name().to_string(),
            n: inst.num_ads(),
            m: inst.num_slots(),
            q: inst.quit_prob(),
            k: job.k,
            algorithm: job.algorithm.name().to_string(),
            expected_reward: None,
            size: None,
            seconds: start.elapsed().as_secs_f64(),
            seed: key.seed,
            status: String::new(),
        };
        match outcome {
            Ok(rep) => {
                row.expected_reward = Some(rep.expected_reward);
                row.size = Some(rep.size());
                row.seconds = rep.elapsed_secs;
                row.status = "ok".into();
            }
            Err(SolveError::Timeout) => row.status = "timeout".into(),
            Err(SolveError::GuardExceeded(_)) => row.status = "refused".into(),
            Err(e) => row.status = format!("error: {e}"),
        }
        row
    }))
}

/// Cumulative share of `slots` at or before each index: entry `j - 1` is
/// `|{s in slots : s <= j}| / |slots|`. Empty when `slots` is.
pub fn slots_cdf(num_slots: usize, slots: &[usize]) -> Vec<f64> {
    if slots.is_empty() {
        return Vec::new();
    }
    let mut counts = vec![0usize; num_slots + 1];
    for &s in slots {
        counts[s.min(num_slots)] += 1;
    }
    let total = slots.len() as f64;
    let mut seen = 0;
    (1..=num_slots)
        .map(|j| {
            seen += counts[j];
            seen as f64 / total
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::time::Duration;

    #[test]
    fn cdf() {
        assert_eq!(slots_cdf(4, &[1, 2]), vec![0.5, 1.0, 1.0, 1.0]);
        assert_eq!(slots_cdf(3, &[3]), vec![0.0, 0.0, 1.0]);
        assert!(slots_cdf(5, &[]).is_empty());
    }

    fn tiny_fig3() -> BenchSuite {
        let mut suite = BenchSuite::preset(SuiteKind::Fig3);
        suite.base.n = 6;
        suite.ms = vec![20];
        suite
    }

    #[test]
    fn fig3_row_count_and_order() {
        let suite = tiny_fig3();
        let rows = run_suite(&suite, Execution::Auto).unwrap();
        assert_eq!(rows.len(), 96);
        assert!(rows.iter().all(|r| r.status == "ok"));
        assert_eq!(rows[0].scheme, "symmetric");
        assert_eq!(rows[0].algorithm, "gb");
        assert_eq!(rows.iter().take(3).map(|r| r.seed).collect::<Vec<_>>(), vec![1, 2, 3]);
    }

    #[test]
    fn rows_do_not_depend_on_workers() {
        let suite = tiny_fig3();
        let a = run_suite(&suite, Execution::Sequential).unwrap();
        let b = run_suite(&suite, Execution::Parallel).unwrap();
        let key = |r: &BenchRow| (r.scheme.clone(), r.algorithm.clone(), r.seed, r.expected_reward, r.size);
        assert_eq!(a.iter().map(key).collect::<Vec<_>>(), b.iter().map(key).collect::<Vec<_>>());
    }

    #[test]
    fn timeouts_leave_reward_blank() {
        let mut suite = tiny_fig3();
        suite.time_limit = Duration::ZERO;
        suite.base.n = 20;
        suite.ms = vec![3000];
        suite.schemes = vec![Scheme::Symmetric];
        suite.algorithms = vec![Algorithm::Global];
        suite.seeds = vec![1];
        let rows = run_suite(&suite, Execution::Sequential).unwrap();
        assert_eq!(rows[0].status, "timeout");
        assert_eq!(rows[0].expected_reward, None);
    }
}
