use serde::Serialize;

use crate::instance::ProblemInstance;

/// Working allocation for solvers that fill slots from the bottom of the feed upwards.
///
/// `occupied` holds occupied slots in descending order, so the slot being processed
/// (always below every occupied slot) is pushed at the end.
pub(crate) struct SuffixState {
    pub q: f64,
    pub survival: f64,
    pow: Vec<f64>,
    slot_entry: Vec<Option<(usize, f64)>>,
    ad_slot: Vec<Option<usize>>,
    occupied: Vec<usize>,
}

impl SuffixState {
    pub fn new(inst: &ProblemInstance) -> Self {
        let m = inst.num_slots();
        let survival = inst.survival();
        SuffixState {
            q: inst.quit_prob(),
            survival,
            pow: (0..=2 * m + 1).map(|k| survival.powi(k as i32)).collect(),
            slot_entry: vec![None; m + 1],
            ad_slot: vec![None; inst.num_ads() + 1],
            occupied: Vec::new(),
        }
    }

    #[inline]
    pub fn pow(&self, k: usize) -> f64 {
        self.pow[k]
    }

    pub fn slot_of(&self, ad: usize) -> Option<usize> {
        self.ad_slot[ad]
    }

    pub fn entry(&self, slot: usize) -> Option<(usize, f64)> {
        self.slot_entry[slot]
    }

    #[cfg(test)]
    pub fn len(&self) -> usize {
        self.occupied.len()
    }

    /// `f_j(M)`, optionally pretending `skip` is empty.
    pub fn suffix(&self, j: usize, skip: Option<usize>) -> f64 {
        let mut total = 0.0;
        let mut before = 0;
        for &slot in self.occupied.iter().rev() {
            if slot <= j || Some(slot) == skip {
                continue;
            }
            let (_, reward) = self.slot_entry[slot].expect("occupied slot has an entry");
            total += reward * self.pow[slot - j + before];
            before += 1;
        }
        total
    }

    /// `f_s(M)` for every occupied slot `s`, as `(slot, ad, reward, f_s)` in descending slot order.
    pub fn occupied_suffixes(&self) -> Vec<(usize, usize, f64, f64)> {
        let mut out = Vec::with_capacity(self.occupied.len());
        // f at the slot above the current one, and that slot's occupant.
        let mut above: Option<(usize, f64, f64)> = None;
        for &slot in &self.occupied {
            let (ad, reward) = self.slot_entry[slot].expect("occupied slot has an entry");
            let f = match above {
                None => 0.0,
                Some((s, r, f)) => self.pow[s - slot] * (self.survival * f + r),
            };
            out.push((slot, ad, reward, f));
            above = Some((slot, reward, f));
        }
        out
    }

    /// Moves `ad` to `slot` (which must be empty and below every occupied slot, unless
    /// `ad` reuse is allowed). Returns the slot the ad left, if any.
    pub fn place(&mut self, ad: usize, slot: usize, reward: f64, exclusive: bool) -> Option<usize> {
        debug_assert!(self.slot_entry[slot].is_none());
        let previous = if exclusive { self.ad_slot[ad] } else { None };
        if let Some(prev) = previous {
            self.slot_entry[prev] = None;
            let at = self.occupied.iter().position(|&s| s == prev).expect("previous slot occupied");
            self.occupied.remove(at);
        }
        self.slot_entry[slot] = Some((ad, reward));
        self.ad_slot[ad] = Some(slot);
        let at = self.occupied.partition_point(|&s| s > slot);
        self.occupied.insert(at, slot);
        previous
    }

    /// `(slot, ad)` pairs, ascending by slot.
    pub fn pairs(&self) -> Vec<(usize, usize)> {
        self.occupied
            .iter()
            .rev()
            .map(|&s| (s, self.slot_entry[s].expect("occupied slot has an entry").0))
            .collect()
    }
}

/// Per-slot record of a backwards pass.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct IterationLog {
    pub slot: usize,
    /// Ads admissible at this slot (the set `A_j`).
    pub candidates: Vec<usize>,
    /// The argmax candidate, whether or not it was committed.
    pub chosen: Option<usize>,
    /// Exact gain (backwards greedy) or its lower bound (non-oblivious) for `chosen`.
    pub gain: Option<f64>,
    pub committed: bool,
    /// Slot the chosen ad was moved away from.
    pub reassigned_from: Option<usize>,
    /// `f_j(M)` before this iteration.
    pub suffix_before: f64,
    /// `(slot, ad)` pairs after this iteration.
    pub allocation_after: Vec<(usize, usize)>,
    /// `(ad, tau)` for every matched ad after this iteration (non-oblivious greedy only).
    pub tau_after: Vec<(usize, f64)>,
}

impl IterationLog {
    pub fn reassigned(&self) -> bool {
        self.reassigned_from.is_some()
    }
}

pub(crate) trait Recorder {
    fn enabled(&self) -> bool;
    fn record(&mut self, log: IterationLog);
}

pub(crate) struct NoRecord;

impl Recorder for NoRecord {
    fn enabled(&self) -> bool {
        false
    }
    fn record(&mut self, _: IterationLog) {}
}

impl Recorder for Vec<IterationLog> {
    fn enabled(&self) -> bool {
        true
    }
    fn record(&mut self, log: IterationLog) {
        self.push(log);
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::allocation::{Allocation, Mode};
    use crate::instance::Edge;
    use crate::objective::{relative_gap, suffix_reward};

    #[test]
    fn suffixes_match_direct_evaluation() {
        let edges = vec![
            Edge::new(1, 7, 3.0),
            Edge::new(2, 5, 1.5),
            Edge::new(3, 2, 4.0),
            Edge::new(1, 1, 2.0),
        ];
        let inst = ProblemInstance::new(3, 8, 0.2, edges).unwrap();
        let mut st = SuffixState::new(&inst);
        st.place(1, 7, 3.0, true);
        st.place(2, 5, 1.5, true);
        st.place(3, 2, 4.0, true);
        let alloc = Allocation::new(&inst, Mode::Matching, st.pairs()).unwrap();
        for (slot, _, _, f) in st.occupied_suffixes() {
            let direct = suffix_reward(&inst, &alloc, slot).unwrap();
            assert!(relative_gap(f, direct) < 1e-12, "slot {slot}: {f} vs {direct}");
        }
        assert!(relative_gap(st.suffix(1, None), suffix_reward(&inst, &alloc, 1).unwrap()) < 1e-15);

        let prev = st.place(1, 1, 2.0, true);
        assert_eq!(prev, Some(7));
        assert_eq!(st.pairs(), vec![(1, 1), (2, 3), (5, 2)]);
        assert_eq!(st.len(), 3);
    }
}
