use std::cmp::Ordering;
use std::collections::BinaryHeap;

use crate::allocation::{Allocation, Mode};
use crate::error::SolveError;
use crate::instance::ProblemInstance;
use crate::objective::evaluate_sorted;
use crate::report::{timed, Counters, Deadline, SolveReport};

/// A candidate edge with a cached upper bound on its marginal gain.
///
/// Positive marginal gains only shrink as the allocation grows, so a bound computed in an
/// earlier round stays an upper bound. `stamp` is the round the bound was computed in.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CandidateBound {
    pub ad: usize,
    pub slot: usize,
    pub bound: f64,
    pub stamp: usize,
}

impl Eq for CandidateBound {}

impl Ord for CandidateBound {
    fn cmp(&self, other: &Self) -> Ordering {
        // Largest bound first; ties go to the lexicographically smallest (slot, ad).
        self.bound
            .total_cmp(&other.bound)
            .then_with(|| other.slot.cmp(&self.slot))
            .then_with(|| other.ad.cmp(&self.ad))
    }
}

impl PartialOrd for CandidateBound {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Slot-sorted placements with the objective value cached.
struct Placed {
    survival: f64,
    entries: Vec<(usize, f64)>,
    total: f64,
}

impl Placed {
    fn total_with(&self, slot: usize, reward: f64) -> f64 {
        let at = self.entries.partition_point(|&(s, _)| s < slot);
        let merged = self.entries[..at]
            .iter()
            .copied()
            .chain(std::iter::once((slot, reward)))
            .chain(self.entries[at..].iter().copied());
        evaluate_sorted(self.survival, 0, merged)
    }

    fn gain(&self, slot: usize, reward: f64) -> f64 {
        self.total_with(slot, reward) - self.total
    }

    fn insert(&mut self, slot: usize, reward: f64) {
        let at = self.entries.partition_point(|&(s, _)| s < slot);
        self.entries.insert(at, (slot, reward));
        self.total = evaluate_sorted(self.survival, 0, self.entries.iter().copied());
    }
}

/// Repeatedly commits the feasible (ad, slot) pair with the largest positive marginal gain,
/// re-evaluating only the top of a max-heap of cached bounds.
pub fn global_greedy(inst: &ProblemInstance) -> SolveReport {
    global_greedy_with(inst, None, &Deadline::none()).expect("no deadline set")
}

/// As [`global_greedy`], stopping after `limit` commits when given.
pub fn global_greedy_with(
    inst: &ProblemInstance,
    limit: Option<usize>,
    deadline: &Deadline,
) -> Result<SolveReport, SolveError> {
    timed("global", inst, || run(inst, limit, deadline))
}

fn run(
    inst: &ProblemInstance,
    limit: Option<usize>,
    deadline: &Deadline,
) -> Result<(Allocation, Counters), SolveError> {
    let mut placed = Placed { survival: inst.survival(), entries: Vec::new(), total: 0.0 };
    let mut ad_used = vec![false; inst.num_ads() + 1];
    let mut slot_used = vec![false; inst.num_slots() + 1];
    let mut pairs = Vec::new();
    let mut counters = Counters::default();
    let limit = limit.unwrap_or(usize::MAX);

    let mut heap: BinaryHeap<CandidateBound> = inst
        .edges()
        .iter()
        .map(|e| CandidateBound { ad: e.ad, slot: e.slot, bound: placed.gain(e.slot, e.reward), stamp: 0 })
        .collect();
    counters.gain_evaluations = heap.len();
    deadline.check()?;
    let mut round = 0;

    while pairs.len() < limit {
        let Some(top) = heap.pop() else { break };
        if ad_used[top.ad] || slot_used[top.slot] {
            continue;
        }
        counters.iterations += 1;
        if counters.iterations % 1024 == 0 {
            deadline.check()?;
        }
        if top.stamp == round {
            if top.bound <= 0.0 {
                break;
            }
            let reward = inst.reward(top.ad, top.slot).expect("candidate is an edge");
            placed.insert(top.slot, reward);
            ad_used[top.ad] = true;
            slot_used[top.slot] = true;
            pairs.push((top.slot, top.ad));
            counters.commits += 1;
            round += 1;
        } else {
            let reward = inst.reward(top.ad, top.slot).expect("candidate is an edge");
            counters.gain_evaluations += 1;
            heap.push(CandidateBound { bound: placed.gain(top.slot, reward), stamp: round, ..top });
        }
    }
    Ok((Allocation::from_pairs_unchecked(inst, Mode::Matching, pairs), counters))
}
