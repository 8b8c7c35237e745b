//! Running any solver by name.

use std::fmt;
use std::str::FromStr;

use crate::algorithms::{backwards_greedy_with, nonoblivious_backwards_greedy_with};
use crate::allocation::Mode;
use crate::baselines::{
    flow_baseline_with, flow_greedy_with, forward_greedy_with, global_greedy_with, mwm_baseline_with,
    online_threshold_with, Threshold,
};
use crate::error::SolveError;
use crate::instance::ProblemInstance;
use crate::oracle::{brute_force_mapping_report, brute_force_matching_report};
use crate::postprocess::prune_report;
use crate::report::{Deadline, SolveReport};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Algorithm {
    Gb,
    GbMapping,
    Gbp,
    Global,
    Forward,
    Threshold,
    Mwm,
    Flow,
    FlowGreedy,
    BruteForce,
    BruteForceMapping,
}

impl Algorithm {
    pub const ALL: [Algorithm; 11] = [
        Algorithm::Gb,
        Algorithm::GbMapping,
        Algorithm::Gbp,
        Algorithm::Global,
        Algorithm::Forward,
        Algorithm::Threshold,
        Algorithm::Mwm,
        Algorithm::Flow,
        Algorithm::FlowGreedy,
        Algorithm::BruteForce,
        Algorithm::BruteForceMapping,
    ];

    /// The eight matching solvers compared in the benchmark suites.
    pub const COMPARED: [Algorithm; 8] = [
        Algorithm::Gb,
        Algorithm::Gbp,
        Algorithm::Global,
        Algorithm::FlowGreedy,
        Algorithm::Flow,
        Algorithm::Mwm,
        Algorithm::Forward,
        Algorithm::Threshold,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Algorithm::Gb => "gb",
            Algorithm::GbMapping => "gb-mapping",
            Algorithm::Gbp => "gbp",
            Algorithm::Global => "global",
            Algorithm::Forward => "forward",
            Algorithm::Threshold => "threshold",
            Algorithm::Mwm => "mwm",
            Algorithm::Flow => "flow",
            Algorithm::FlowGreedy => "flow-greedy",
            Algorithm::BruteForce => "bruteforce",
            Algorithm::BruteForceMapping => "bruteforce-mapping",
        }
    }

    pub fn mode(self) -> Mode {
        match self {
            Algorithm::GbMapping | Algorithm::BruteForceMapping => Mode::Mapping,
            _ => Mode::Matching,
        }
    }
}

impl fmt::Display for Algorithm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Algorithm {
    type Err = SolveError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Algorithm::ALL
            .into_iter()
            .find(|a| a.name() == s)
            .ok_or_else(|| SolveError::UnknownAlgorithm(s.to_string()))
    }
}

#[derive(Debug, Clone, Copy, Default)]
pub struct SolveOptions {
    /// Cardinality limit. Global, forward and threshold stop after `k` allocations, flow uses
    /// `k` as its cardinality bound, every other solver is pruned afterwards.
    pub k: Option<usize>,
    /// Threshold of the online threshold rule (defaults to automatic).
    pub threshold: Option<Threshold>,
    pub deadline: Deadline,
}

pub fn solve(algorithm: Algorithm, inst: &ProblemInstance, opts: &SolveOptions) -> Result<SolveReport, SolveError> {
    let d = &opts.deadline;
    d.check()?;
    let k = opts.k;
    let report = match algorithm {
        Algorithm::Gb => backwards_greedy_with(inst, Mode::Matching, d)?,
        Algorithm::GbMapping => backwards_greedy_with(inst, Mode::Mapping, d)?,
        Algorithm::Gbp => nonoblivious_backwards_greedy_with(inst, d)?,
        Algorithm::Global => return global_greedy_with(inst, k, d),
        Algorithm::Forward => return forward_greedy_with(inst, k, d),
        Algorithm::Threshold => {
            return online_threshold_with(inst, opts.threshold.unwrap_or(Threshold::Auto), k, d)
        }
        Algorithm::Mwm => mwm_baseline_with(inst, d)?,
        Algorithm::Flow => return flow_baseline_with(inst, k, d),
        Algorithm::FlowGreedy => flow_greedy_with(inst, d)?,
        Algorithm::BruteForce => brute_force_matching_report(inst, d)?,
        Algorithm::BruteForceMapping => brute_force_mapping_report(inst, d)?,
    };
    Ok(match k {
        Some(k) if report.size() > k => prune_report(inst, &report, k),
        _ => report,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::instance::Edge;

    #[test]
    fn names_round_trip() {
        for a in Algorithm::ALL {
            assert_eq!(a.name().parse::<Algorithm>().unwrap(), a);
        }
        assert_eq!("nope".parse::<Algorithm>(), Err(SolveError::UnknownAlgorithm("nope".into())));
    }

    #[test]
    fn every_solver_runs() {
        let edges = vec![Edge::new(1, 1, 1.0), Edge::new(1, 2, 1.01), Edge::new(2, 2, 1.0)];
        let inst = ProblemInstance::new(2, 2, 0.0, edges).unwrap();
        for a in Algorithm::ALL {
            let rep = solve(a, &inst, &SolveOptions::default()).unwrap();
            assert_eq!(rep.algorithm, a.name());
            assert!(rep.expected_reward >= 1.0, "{a}");
        }
    }

    #[test]
    fn k_limit_applies_to_every_solver() {
        let inst = crate::generators::gen_symmetric(6, 10, 0.05, 1, false).unwrap();
        let opts = SolveOptions { k: Some(2), ..SolveOptions::default() };
        for a in Algorithm::ALL.into_iter().filter(|a| !matches!(a, Algorithm::BruteForce)) {
            assert!(solve(a, &inst, &opts).unwrap().size() <= 2, "{a}");
        }
    }
}
