//! Reducing allocations to at most `k` ads.

use std::time::Instant;

use crate::allocation::Allocation;
use crate::baselines::{forward_greedy_with, global_greedy_with, online_threshold_with, Threshold};
use crate::error::{AllocationError, SolveError};
use crate::instance::ProblemInstance;
use crate::objective::evaluate_sorted;
use crate::report::{Deadline, SolveReport};

/// Removes one ad at a time, always the one whose removal loses the least expected reward,
/// until at most `k` remain. Losses are recomputed after every removal and may be negative.
/// Ties go to the highest slot.
pub fn prune_to_k(inst: &ProblemInstance, alloc: &Allocation, k: usize) -> Result<Allocation, AllocationError> {
    alloc.check_against(inst)?;
    let s = inst.survival();
    let mut current = alloc.clone();
    while current.len() > k {
        let entries = current.entries();
        let total = evaluate_sorted(s, 0, entries.iter().map(|p| (p.slot, p.reward)));
        let mut best: Option<(usize, f64)> = None;
        for (skip, p) in entries.iter().enumerate() {
            let rest = entries
                .iter()
                .enumerate()
                .filter(|&(k, _)| k != skip)
                .map(|(_, p)| (p.slot, p.reward));
            let loss = total - evaluate_sorted(s, 0, rest);
            // Slots ascend, so `<=` lets later slots win ties.
            if best.is_none_or(|(_, l)| loss <= l) {
                best = Some((p.slot, loss));
            }
        }
        let (slot, _) = best.expect("allocation is non-empty");
        current = current.without_slot(slot);
    }
    Ok(current)
}

/// [`prune_to_k`] applied to a solver report; the pruning time is added to the run time.
pub fn prune_report(inst: &ProblemInstance, report: &SolveReport, k: usize) -> SolveReport {
    let start = Instant::now();
    let pruned = prune_to_k(inst, &report.allocation, k).expect("solver allocation matches its instance");
    let elapsed = start.elapsed() + std::time::Duration::from_secs_f64(report.elapsed_secs);
    SolveReport::new(report.algorithm.clone(), inst, pruned, elapsed, report.counters)
}

/// Greedy baselines that can be stopped after a fixed number of allocations.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum TruncatedGreedy {
    Global,
    Forward,
    Threshold(Threshold),
}

/// Runs `algorithm` and stops it after `k` committed allocations.
pub fn truncate_greedy_run(algorithm: TruncatedGreedy, inst: &ProblemInstance, k: usize) -> SolveReport {
    truncate_greedy_run_with(algorithm, inst, k, &Deadline::none()).expect("no deadline set")
}

pub fn truncate_greedy_run_with(
    algorithm: TruncatedGreedy,
    inst: &ProblemInstance,
    k: usize,
    deadline: &Deadline,
) -> Result<SolveReport, SolveError> {
    match algorithm {
        TruncatedGreedy::Global => global_greedy_with(inst, Some(k), deadline),
        TruncatedGreedy::Forward => forward_greedy_with(inst, Some(k), deadline),
        TruncatedGreedy::Threshold(t) => online_threshold_with(inst, t, Some(k), deadline),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::allocation::Mode;
    use crate::baselines::global_greedy;
    use crate::instance::Edge;
    use crate::objective::expected_reward;

    fn chain() -> (ProblemInstance, Allocation) {
        let edges: Vec<_> = (1..=5).map(|j| Edge::new(j, j, j as f64)).collect();
        let inst = ProblemInstance::new(5, 5, 0.3, edges).unwrap();
        let alloc = Allocation::new(&inst, Mode::Matching, (1..=5).map(|j| (j, j))).unwrap();
        (inst, alloc)
    }

    #[test]
    fn trivial_budgets() {
        let (inst, alloc) = chain();
        assert_eq!(prune_to_k(&inst, &alloc, 5).unwrap(), alloc);
        assert_eq!(prune_to_k(&inst, &alloc, 9).unwrap(), alloc);
        assert!(prune_to_k(&inst, &alloc, 0).unwrap().is_empty());
    }

    #[test]
    fn removes_cheapest_first() {
        let (inst, alloc) = chain();
        let one = prune_to_k(&inst, &alloc, 4).unwrap();
        assert_eq!(one.ad_at(1), None);
        assert!(expected_reward(&inst, &one).unwrap() > expected_reward(&inst, &alloc).unwrap());
    }

    #[test]
    fn ties_remove_the_highest_slot() {
        let inst = ProblemInstance::new(2, 4, 0.0, vec![Edge::new(1, 1, 2.0), Edge::new(2, 3, 2.0)]).unwrap();
        let alloc = Allocation::new(&inst, Mode::Matching, [(1, 1), (3, 2)]).unwrap();
        assert_eq!(prune_to_k(&inst, &alloc, 1).unwrap().pairs().collect::<Vec<_>>(), vec![(1, 1)]);
    }

    #[test]
    fn truncation() {
        let inst = crate::generators::gen_symmetric(10, 40, 0.1, 2, false).unwrap();
        assert!(truncate_greedy_run(TruncatedGreedy::Global, &inst, 0).allocation.is_empty());
        assert_eq!(truncate_greedy_run(TruncatedGreedy::Global, &inst, 5).size(), 5);
        assert_eq!(truncate_greedy_run(TruncatedGreedy::Global, &inst, 1000).allocation, global_greedy(&inst).allocation);
        assert!(truncate_greedy_run(TruncatedGreedy::Forward, &inst, 3).size() <= 3);
        assert!(truncate_greedy_run(TruncatedGreedy::Threshold(Threshold::Auto), &inst, 3).size() <= 3);
    }
}
