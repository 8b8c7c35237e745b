use crate::algorithms::state::{IterationLog, NoRecord, Recorder, SuffixState};
use crate::allocation::{Allocation, Mode};
use crate::error::SolveError;
use crate::instance::ProblemInstance;
use crate::report::{timed, Counters, Deadline, SolveReport};

/// Per-ad bookkeeping of the non-oblivious greedy.
///
/// `tau[i]` is meaningful only while ad `i` is matched (`slot[i]` is set); it then equals
/// `r_{i,slot[i]} - q f_{slot[i]}(M)`. Unmatched ads carry `tau = 0`.
#[derive(Debug, Clone, PartialEq)]
pub struct TauState {
    tau: Vec<f64>,
    slot: Vec<Option<usize>>,
}

impl TauState {
    fn new(num_ads: usize) -> Self {
        TauState { tau: vec![0.0; num_ads + 1], slot: vec![None; num_ads + 1] }
    }

    /// `tau_i` if ad `i` is matched.
    pub fn tau(&self, ad: usize) -> Option<f64> {
        self.slot[ad].map(|_| self.tau[ad])
    }

    /// `sigma(i)` if ad `i` is matched.
    pub fn slot(&self, ad: usize) -> Option<usize> {
        self.slot[ad]
    }

    /// `tau_i (1-q)^(sigma(i) - j)`, zero for unmatched ads.
    fn discounted(&self, ad: usize, j: usize, st: &SuffixState) -> f64 {
        match self.slot[ad] {
            Some(s) => self.tau[ad] * st.pow(s - j),
            None => 0.0,
        }
    }

    fn matched(&self) -> Vec<(usize, f64)> {
        (1..self.tau.len()).filter_map(|ad| self.tau(ad).map(|t| (ad, t))).collect()
    }
}

/// Non-oblivious backwards greedy: at each slot, from the bottom up, (re-)assigns the ad
/// maximizing `r_ij - tau_i (1-q)^(sigma(i)-j)` when the resulting lower bound on the
/// marginal gain is positive. Matching mode only; a 2-approximation.
pub fn nonoblivious_backwards_greedy(inst: &ProblemInstance) -> SolveReport {
    nonoblivious_backwards_greedy_with(inst, &Deadline::none()).expect("no deadline set")
}

pub fn nonoblivious_backwards_greedy_with(
    inst: &ProblemInstance,
    deadline: &Deadline,
) -> Result<SolveReport, SolveError> {
    timed("gbp", inst, || run(inst, deadline, &mut NoRecord).map(|(a, c, _)| (a, c)))
}

pub(crate) fn run(
    inst: &ProblemInstance,
    deadline: &Deadline,
    rec: &mut impl Recorder,
) -> Result<(Allocation, Counters, TauState), SolveError> {
    let mut st = SuffixState::new(inst);
    let mut taus = TauState::new(inst.num_ads());
    let mut counters = Counters::default();
    let q = st.q;
    let mut suffix = 0.0;

    for j in (1..=inst.num_slots()).rev() {
        deadline.check()?;
        counters.iterations += 1;
        let suffix_before = suffix;

        let mut best: Option<(usize, f64, f64)> = None;
        for e in inst.slot_edges(j) {
            counters.gain_evaluations += 1;
            let score = e.reward - taus.discounted(e.ad, j, &st);
            if best.is_none_or(|(_, _, s)| score > s) {
                best = Some((e.ad, e.reward, score));
            }
        }
        let lower_bound = best.map(|(_, _, score)| score - q * suffix);

        let mut reassigned_from = None;
        let committed = matches!(lower_bound, Some(g) if g > 0.0);
        if let (true, Some((ad, reward, _))) = (committed, best) {
            reassigned_from = st.place(ad, j, reward, true);
            counters.commits += 1;
            if reassigned_from.is_some() {
                suffix = st.suffix(j, None);
            }
            taus.slot[ad] = Some(j);
            taus.tau[ad] = reward - q * suffix;
            if reassigned_from.is_some() {
                counters.reassignments += 1;
                for (slot, other, r, f) in st.occupied_suffixes() {
                    taus.slot[other] = Some(slot);
                    taus.tau[other] = r - q * f;
                }
            }
        }

        if rec.enabled() {
            rec.record(IterationLog {
                slot: j,
                candidates: inst.slot_edges(j).iter().map(|e| e.ad).collect(),
                chosen: best.map(|b| b.0),
                gain: lower_bound,
                committed,
                reassigned_from,
                suffix_before,
                allocation_after: st.pairs(),
                tau_after: taus.matched(),
            });
        }

        let gained = st.entry(j).map_or(0.0, |(_, r)| r - q * suffix);
        suffix = st.survival * (suffix + gained);
    }

    let alloc = Allocation::from_pairs_unchecked(inst, Mode::Matching, st.pairs());
    Ok((alloc, counters, taus))
}
