use crate::allocation::{Allocation, Mode};
use crate::error::SolveError;
use crate::instance::ProblemInstance;
use crate::report::{timed, Counters, Deadline, SolveReport};

/// Reward threshold for [`online_threshold`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Threshold {
    Fixed(f64),
    /// The best reward among edges incident to slot 1 (0 if there are none).
    Auto,
}

impl Threshold {
    pub fn resolve(self, inst: &ProblemInstance) -> f64 {
        match self {
            Threshold::Fixed(t) => t,
            Threshold::Auto => inst.slot_edges(1).iter().map(|e| e.reward).fold(0.0, f64::max),
        }
    }
}

/// Top-down pass: each slot gets the best unused ad if its reward exceeds `threshold`.
fn forward_pass(
    inst: &ProblemInstance,
    threshold: f64,
    limit: Option<usize>,
    deadline: &Deadline,
) -> Result<(Allocation, Counters), SolveError> {
    let mut used = vec![false; inst.num_ads() + 1];
    let mut pairs = Vec::new();
    let mut counters = Counters::default();
    let limit = limit.unwrap_or(usize::MAX);
    for j in 1..=inst.num_slots() {
        if pairs.len() >= limit {
            break;
        }
        if j % 1024 == 0 {
            deadline.check()?;
        }
        counters.iterations += 1;
        let mut best: Option<(usize, f64)> = None;
        for e in inst.slot_edges(j).iter().filter(|e| !used[e.ad]) {
            counters.gain_evaluations += 1;
            if best.is_none_or(|(_, r)| e.reward > r) {
                best = Some((e.ad, e.reward));
            }
        }
        if let Some((ad, r)) = best {
            if r > threshold {
                used[ad] = true;
                pairs.push((j, ad));
                counters.commits += 1;
            }
        }
    }
    Ok((Allocation::from_pairs_unchecked(inst, Mode::Matching, pairs), counters))
}

/// Myopic top-down greedy: the most rewarding unused ad goes to each slot in feed order.
pub fn forward_greedy(inst: &ProblemInstance) -> SolveReport {
    forward_greedy_with(inst, None, &Deadline::none()).expect("no deadline set")
}

pub fn forward_greedy_with(
    inst: &ProblemInstance,
    limit: Option<usize>,
    deadline: &Deadline,
) -> Result<SolveReport, SolveError> {
    timed("forward", inst, || forward_pass(inst, 0.0, limit, deadline))
}

/// Top-down greedy that only places an ad whose reward exceeds a preset threshold.
pub fn online_threshold(inst: &ProblemInstance, threshold: Threshold) -> SolveReport {
    online_threshold_with(inst, threshold, None, &Deadline::none()).expect("no deadline set")
}

pub fn online_threshold_with(
    inst: &ProblemInstance,
    threshold: Threshold,
    limit: Option<usize>,
    deadline: &Deadline,
) -> Result<SolveReport, SolveError> {
    let t = threshold.resolve(inst);
    timed("threshold", inst, || forward_pass(inst, t, limit, deadline))
}
