use crate::allocation::{Allocation, Mode};
use crate::error::SolveError;
use crate::instance::ProblemInstance;
use crate::report::{timed, Counters, Deadline, SolveReport};

pub const MATCHING_MAX_EDGES: usize = 24;
pub const MATCHING_MAX_SIDE: usize = 8;
pub const MAPPING_MAX_SLOTS: usize = 16;

/// An optimal allocation found by enumeration.
#[derive(Debug, Clone, PartialEq)]
pub struct ExactSolution {
    pub allocation: Allocation,
    pub value: f64,
}

fn check_matching_guard(inst: &ProblemInstance) -> Result<(), SolveError> {
    let side = inst.num_ads().min(inst.num_slots());
    if inst.num_edges() > MATCHING_MAX_EDGES || side > MATCHING_MAX_SIDE {
        return Err(SolveError::GuardExceeded(format!(
            "matching enumeration needs |E| <= {MATCHING_MAX_EDGES} and min(n, m) <= {MATCHING_MAX_SIDE}, \
             got |E| = {} and min(n, m) = {side}",
            inst.num_edges()
        )));
    }
    Ok(())
}

struct MatchingSearch<'a> {
    inst: &'a ProblemInstance,
    pow: Vec<f64>,
    used: Vec<bool>,
    current: Vec<(usize, usize)>,
    best: Vec<(usize, usize)>,
    best_value: f64,
    visited: usize,
}

impl MatchingSearch<'_> {
    /// Decides slots `j..=m`; `value` is the reward collected so far, `placed` the ads so far.
    fn visit(&mut self, j: usize, placed: usize, value: f64) {
        self.visited += 1;
        if j > self.inst.num_slots() {
            if value > self.best_value {
                self.best_value = value;
                self.best = self.current.clone();
            }
            return;
        }
        self.visit(j + 1, placed, value);
        for e in self.inst.slot_edges(j) {
            if self.used[e.ad] {
                continue;
            }
            self.used[e.ad] = true;
            self.current.push((j, e.ad));
            self.visit(j + 1, placed + 1, value + e.reward * self.pow[j + placed]);
            self.current.pop();
            self.used[e.ad] = false;
        }
    }
}

/// Optimal matching by enumerating every matching of the edge set.
pub fn brute_force_matching(inst: &ProblemInstance) -> Result<ExactSolution, SolveError> {
    check_matching_guard(inst)?;
    let (solution, _) = matching_search(inst);
    Ok(solution)
}

fn matching_search(inst: &ProblemInstance) -> (ExactSolution, usize) {
    let s = inst.survival();
    let mut search = MatchingSearch {
        inst,
        pow: (0..=2 * inst.num_slots() + 1).map(|k| s.powi(k as i32)).collect(),
        used: vec![false; inst.num_ads() + 1],
        current: Vec::new(),
        best: Vec::new(),
        best_value: 0.0,
        visited: 0,
    };
    search.visit(1, 0, 0.0);
    let allocation = Allocation::from_pairs_unchecked(inst, Mode::Matching, search.best.iter().copied());
    (ExactSolution { allocation, value: search.best_value }, search.visited)
}

/// Optimal mapping (ads reusable) by enumerating occupied-slot subsets.
///
/// For a fixed set of occupied slots the objective separates per slot, so each occupied
/// slot takes its highest-reward ad.
pub fn brute_force_mapping(inst: &ProblemInstance) -> Result<ExactSolution, SolveError> {
    let m = inst.num_slots();
    if m > MAPPING_MAX_SLOTS {
        return Err(SolveError::GuardExceeded(format!(
            "mapping enumeration needs m <= {MAPPING_MAX_SLOTS}, got m = {m}"
        )));
    }
    let best_ad: Vec<Option<(usize, f64)>> = (1..=m)
        .map(|j| {
            inst.slot_edges(j).iter().fold(None, |acc: Option<(usize, f64)>, e| match acc {
                Some((_, r)) if r >= e.reward => acc,
                _ => Some((e.ad, e.reward)),
            })
        })
        .collect();
    let usable: Vec<usize> = (0..m).filter(|&k| best_ad[k].is_some()).collect();
    let s = inst.survival();

    let mut best_mask = 0u32;
    let mut best_value = 0.0;
    for mask in 0u32..(1u32 << usable.len()) {
        let mut value = 0.0;
        let mut placed = 0;
        for (bit, &k) in usable.iter().enumerate() {
            if mask & (1 << bit) != 0 {
                let (_, r) = best_ad[k].expect("usable slot has an ad");
                value += r * s.powi((k + 1 + placed) as i32);
                placed += 1;
            }
        }
        if value > best_value {
            best_value = value;
            best_mask = mask;
        }
    }
    let pairs = usable
        .iter()
        .enumerate()
        .filter(|(bit, _)| best_mask & (1 << bit) != 0)
        .map(|(_, &k)| (k + 1, best_ad[k].expect("usable slot has an ad").0));
    let allocation = Allocation::from_pairs_unchecked(inst, Mode::Mapping, pairs);
    Ok(ExactSolution { allocation, value: best_value })
}

/// [`brute_force_matching`] as a solver report.
pub fn brute_force_matching_report(inst: &ProblemInstance, _deadline: &Deadline) -> Result<SolveReport, SolveError> {
    check_matching_guard(inst)?;
    timed("bruteforce", inst, || {
        let (sol, visited) = matching_search(inst);
        let counters = Counters { iterations: visited, commits: sol.allocation.len(), ..Counters::default() };
        Ok((sol.allocation, counters))
    })
}

/// [`brute_force_mapping`] as a solver report.
pub fn brute_force_mapping_report(inst: &ProblemInstance, _deadline: &Deadline) -> Result<SolveReport, SolveError> {
    timed("bruteforce-mapping", inst, || {
        let sol = brute_force_mapping(inst)?;
        let counters = Counters { commits: sol.allocation.len(), ..Counters::default() };
        Ok((sol.allocation, counters))
    })
}
