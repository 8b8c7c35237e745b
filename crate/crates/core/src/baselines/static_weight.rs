use crate::algorithms::SuffixState;
use crate::allocation::{Allocation, Mode};
use crate::error::SolveError;
use crate::instance::ProblemInstance;
use crate::matching::{constrained_max_weight_matching_with, BipartiteWeights};
use crate::report::{timed, Counters, Deadline, SolveReport};

/// Ad-by-slot weights `r_ij (1-q)^j`: position bias from the items only, ignoring the
/// attention consumed by other ads.
pub fn position_weights(inst: &ProblemInstance) -> BipartiteWeights {
    let s = inst.survival();
    let entries = inst
        .edges()
        .iter()
        .map(|e| (e.ad - 1, e.slot - 1, e.reward * s.powi(e.slot as i32)))
        .collect();
    BipartiteWeights::new(inst.num_ads(), inst.num_slots(), entries)
}

/// Cardinality bound `floor((1-q)/q)` of the flow baseline; unbounded at `q = 0`.
pub fn flow_cardinality(q: f64) -> usize {
    if q <= 0.0 {
        return usize::MAX;
    }
    // The small slack keeps exact ratios such as 0.9 / 0.1 from rounding down.
    ((1.0 - q) / q + 1e-9).floor() as usize
}

fn static_matching(
    inst: &ProblemInstance,
    k: usize,
    deadline: &Deadline,
) -> Result<(Allocation, Counters), SolveError> {
    let m = constrained_max_weight_matching_with(&position_weights(inst), k, deadline)?;
    let counters = Counters {
        iterations: m.augmentation_gains.len(),
        commits: m.len(),
        ..Counters::default()
    };
    let pairs = m.pairs.iter().map(|&(ad, slot)| (slot + 1, ad + 1));
    Ok((Allocation::from_pairs_unchecked(inst, Mode::Matching, pairs), counters))
}

/// Maximum-weight matching under position-biased static weights, scored by the true objective.
pub fn mwm_baseline(inst: &ProblemInstance) -> SolveReport {
    mwm_baseline_with(inst, &Deadline::none()).expect("no deadline set")
}

pub fn mwm_baseline_with(inst: &ProblemInstance, deadline: &Deadline) -> Result<SolveReport, SolveError> {
    timed("mwm", inst, || static_matching(inst, usize::MAX, deadline))
}

/// Static-weight matching of at most `floor((1-q)/q)` ads (further capped by `k_limit`),
/// solved as a cardinality-constrained min-cost flow.
pub fn flow_baseline(inst: &ProblemInstance) -> SolveReport {
    flow_baseline_with(inst, None, &Deadline::none()).expect("no deadline set")
}

pub fn flow_baseline_with(
    inst: &ProblemInstance,
    k_limit: Option<usize>,
    deadline: &Deadline,
) -> Result<SolveReport, SolveError> {
    let k = flow_cardinality(inst.quit_prob()).min(k_limit.unwrap_or(usize::MAX));
    timed("flow", inst, || static_matching(inst, k, deadline))
}

/// The flow baseline followed by a backwards-greedy sweep over the slots it left empty: each
/// gets the ad with the largest positive exact gain. Flow ads are kept; ads placed by the sweep
/// may move up.
pub fn flow_greedy(inst: &ProblemInstance) -> SolveReport {
    flow_greedy_with(inst, &Deadline::none()).expect("no deadline set")
}

pub fn flow_greedy_with(inst: &ProblemInstance, deadline: &Deadline) -> Result<SolveReport, SolveError> {
    timed("flow-greedy", inst, || {
        let k = flow_cardinality(inst.quit_prob());
        let (base, mut counters) = static_matching(inst, k, deadline)?;
        let mut st = SuffixState::new(inst);
        let mut fixed = vec![false; inst.num_ads() + 1];
        for p in base.entries() {
            st.place(p.ad, p.slot, p.reward, true);
            fixed[p.ad] = true;
        }
        let q = st.q;
        let mut suffix = 0.0;
        for j in (1..=inst.num_slots()).rev() {
            if j % 1024 == 0 {
                deadline.check()?;
            }
            counters.iterations += 1;
            if st.entry(j).is_none() {
                let mut best: Option<(usize, f64, f64)> = None;
                for e in inst.slot_edges(j) {
                    // Flow ads stay put; ads added by this sweep may move up.
                    if fixed[e.ad] {
                        continue;
                    }
                    let moved = st.slot_of(e.ad);
                    counters.gain_evaluations += 1;
                    let without = match moved {
                        Some(prev) => st.suffix(j, Some(prev)),
                        None => suffix,
                    };
                    let gain = e.reward + st.survival * without - suffix;
                    if best.is_none_or(|(_, _, g)| gain > g) {
                        best = Some((e.ad, e.reward, gain));
                    }
                }
                if let Some((ad, reward, gain)) = best {
                    if gain > 0.0 {
                        counters.commits += 1;
                        if st.place(ad, j, reward, true).is_some() {
                            counters.reassignments += 1;
                            suffix = st.suffix(j, None);
                        }
                    }
                }
            }
            let gained = st.entry(j).map_or(0.0, |(_, r)| r - q * suffix);
            suffix = st.survival * (suffix + gained);
        }
        Ok((Allocation::from_pairs_unchecked(inst, Mode::Matching, st.pairs()), counters))
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::instance::Edge;

    fn adversarial(m: usize, c: f64, q: f64) -> ProblemInstance {
        let mut edges: Vec<_> = (1..m).map(|j| Edge::new(j, j, 1.0)).collect();
        edges.push(Edge::new(m, m, c));
        ProblemInstance::new(m, m, q, edges).unwrap()
    }

    #[test]
    fn cardinality_bound() {
        assert_eq!(flow_cardinality(0.0), usize::MAX);
        assert_eq!(flow_cardinality(0.1), 9);
        assert_eq!(flow_cardinality(0.5), 1);
        assert_eq!(flow_cardinality(0.55), 0);
        assert_eq!(flow_cardinality(0.6), 0);
        assert_eq!(flow_cardinality(0.9), 0);
        assert_eq!(flow_cardinality(0.25), 3);
    }

    #[test]
    fn mwm_takes_every_edge_of_the_chain() {
        let inst = adversarial(10, 2f64.powi(19), 0.5);
        let rep = mwm_baseline(&inst);
        assert_eq!(rep.size(), 10);
        assert_eq!(rep.allocation, crate::baselines::forward_greedy(&inst).allocation);
    }

    #[test]
    fn mwm_single_edge() {
        let inst = ProblemInstance::new(1, 3, 0.3, vec![Edge::new(1, 2, 1.0)]).unwrap();
        assert_eq!(mwm_baseline(&inst).allocation.pairs().collect::<Vec<_>>(), vec![(2, 1)]);
    }

    #[test]
    fn flow_is_empty_above_one_half() {
        let inst = adversarial(5, 10.0, 0.6);
        let rep = flow_baseline(&inst);
        assert!(rep.allocation.is_empty());
        assert_eq!(rep.expected_reward, 0.0);
        assert!(flow_greedy(&inst).expected_reward > 0.0);
    }

    #[test]
    fn flow_matches_mwm_at_zero_quit_prob() {
        let edges = (1..=3).flat_map(|i| (1..=4).map(move |j| Edge::new(i, j, ((i * 7 + j * 3) % 5) as f64 + 0.5))).collect();
        let inst = ProblemInstance::new(3, 4, 0.0, edges).unwrap();
        assert_eq!(flow_baseline(&inst).expected_reward, mwm_baseline(&inst).expected_reward);
    }

    #[test]
    fn flow_greedy_keeps_the_flow_ads() {
        let inst = adversarial(10, 2f64.powi(19), 0.5);
        let base = flow_baseline(&inst);
        let aug = flow_greedy(&inst);
        assert_eq!(base.size(), 1);
        for p in base.allocation.entries() {
            assert_eq!(aug.allocation.ad_at(p.slot), Some(p.ad));
        }
        assert!(aug.expected_reward >= base.expected_reward);
    }
}
