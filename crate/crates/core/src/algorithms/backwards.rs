use crate::algorithms::state::{IterationLog, NoRecord, Recorder, SuffixState};
use crate::allocation::{Allocation, Mode};
use crate::error::SolveError;
use crate::instance::ProblemInstance;
use crate::report::{timed, Counters, Deadline, SolveReport};

/// Backwards greedy: visits slots from the bottom of the feed up and (re-)assigns the ad with
/// the largest exact marginal gain on the suffix problem, if that gain is positive.
///
/// In [`Mode::Mapping`] the result is optimal. In [`Mode::Matching`] an ad already placed
/// lower in the feed may be moved up, leaving its old slot empty; the result is a
/// 2-approximation.
pub fn backwards_greedy(inst: &ProblemInstance, mode: Mode) -> SolveReport {
    backwards_greedy_with(inst, mode, &Deadline::none()).expect("no deadline set")
}

pub fn backwards_greedy_with(
    inst: &ProblemInstance,
    mode: Mode,
    deadline: &Deadline,
) -> Result<SolveReport, SolveError> {
    let name = match mode {
        Mode::Mapping => "gb-mapping",
        Mode::Matching => "gb",
    };
    timed(name, inst, || run(inst, mode, deadline, &mut NoRecord))
}

pub(crate) fn run(
    inst: &ProblemInstance,
    mode: Mode,
    deadline: &Deadline,
    rec: &mut impl Recorder,
) -> Result<(Allocation, Counters), SolveError> {
    let exclusive = mode == Mode::Matching;
    let mut st = SuffixState::new(inst);
    let mut counters = Counters::default();
    // f_j(M) for the slot about to be processed.
    let mut suffix = 0.0;

    for j in (1..=inst.num_slots()).rev() {
        deadline.check()?;
        counters.iterations += 1;
        let suffix_before = suffix;

        let mut best: Option<(usize, f64, f64)> = None;
        for e in inst.slot_edges(j) {
            counters.gain_evaluations += 1;
            // f_{j-1}(M_i) / (1-q) = r_ij + (1-q) f_j(M_i), where M_i drops the ad's old edge.
            let moved = if exclusive { st.slot_of(e.ad) } else { None };
            let without = match moved {
                Some(prev) => st.suffix(j, Some(prev)),
                None => suffix,
            };
            let gain = e.reward + st.survival * without - suffix;
            if best.is_none_or(|(_, _, g)| gain > g) {
                best = Some((e.ad, e.reward, gain));
            }
        }

        let mut reassigned_from = None;
        let committed = matches!(best, Some((_, _, g)) if g > 0.0);
        if let (true, Some((ad, reward, _))) = (committed, best) {
            reassigned_from = st.place(ad, j, reward, exclusive);
            counters.commits += 1;
            if reassigned_from.is_some() {
                counters.reassignments += 1;
                suffix = st.suffix(j, None);
            }
        }

        if rec.enabled() {
            rec.record(IterationLog {
                slot: j,
                candidates: inst.slot_edges(j).iter().map(|e| e.ad).collect(),
                chosen: best.map(|b| b.0),
                gain: best.map(|b| b.2),
                committed,
                reassigned_from,
                suffix_before,
                allocation_after: st.pairs(),
                tau_after: Vec::new(),
            });
        }

        let gained = st.entry(j).map_or(0.0, |(_, r)| r - st.q * suffix);
        suffix = st.survival * (suffix + gained);
    }

    Ok((Allocation::from_pairs_unchecked(inst, mode, st.pairs()), counters))
}
