use std::collections::HashSet;

use serde::{Deserialize, Serialize};

use crate::error::AllocationError;
use crate::instance::ProblemInstance;

/// Whether an ad may occupy several slots.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Mode {
    /// Ads are reusable across slots.
    Mapping,
    /// Each ad is used at most once.
    Matching,
}

/// One occupied slot.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Placement {
    pub slot: usize,
    pub ad: usize,
    pub reward: f64,
}

/// A slot-sorted set of placements, each backed by an edge of the instance it was built for.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Allocation {
    mode: Mode,
    entries: Vec<Placement>,
}

impl Allocation {
    pub fn empty(mode: Mode) -> Self {
        Allocation { mode, entries: Vec::new() }
    }

    /// Builds an allocation from `(slot, ad)` pairs in any order, looking up rewards in `inst`.
    pub fn new(
        inst: &ProblemInstance,
        mode: Mode,
        pairs: impl IntoIterator<Item = (usize, usize)>,
    ) -> Result<Self, AllocationError> {
        let mut entries = Vec::new();
        for (slot, ad) in pairs {
            let reward = inst.reward(ad, slot).ok_or(AllocationError::MissingEdge { ad, slot })?;
            entries.push(Placement { slot, ad, reward });
        }
        entries.sort_by_key(|p| p.slot);
        let alloc = Allocation { mode, entries };
        alloc.check_structure()?;
        Ok(alloc)
    }

    /// For solver output: pairs are known to be edges of `inst` and to respect `mode`.
    pub(crate) fn from_pairs_unchecked(
        inst: &ProblemInstance,
        mode: Mode,
        pairs: impl IntoIterator<Item = (usize, usize)>,
    ) -> Self {
        let alloc = Self::new(inst, mode, pairs);
        debug_assert!(alloc.is_ok(), "solver produced an invalid allocation: {alloc:?}");
        alloc.expect("solver produced an invalid allocation")
    }

    fn check_structure(&self) -> Result<(), AllocationError> {
        for w in self.entries.windows(2) {
            if w[0].slot == w[1].slot {
                return Err(AllocationError::SlotReused { slot: w[0].slot });
            }
        }
        if self.mode == Mode::Matching {
            let mut ads = HashSet::with_capacity(self.entries.len());
            for p in &self.entries {
                if !ads.insert(p.ad) {
                    return Err(AllocationError::AdReused { ad: p.ad });
                }
            }
        }
        Ok(())
    }

    /// Checks that every placement is an edge of `inst` with the same reward.
    pub fn check_against(&self, inst: &ProblemInstance) -> Result<(), AllocationError> {
        self.check_structure()?;
        for p in &self.entries {
            match inst.reward(p.ad, p.slot) {
                None => return Err(AllocationError::MissingEdge { ad: p.ad, slot: p.slot }),
                Some(r) if r != p.reward => {
                    return Err(AllocationError::RewardMismatch { ad: p.ad, slot: p.slot })
                }
                Some(_) => {}
            }
        }
        Ok(())
    }

    pub fn mode(&self) -> Mode {
        self.mode
    }

    pub fn entries(&self) -> &[Placement] {
        &self.entries
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn pairs(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.entries.iter().map(|p| (p.slot, p.ad))
    }

    pub fn slots(&self) -> impl Iterator<Item = usize> + '_ {
        self.entries.iter().map(|p| p.slot)
    }

    pub fn ad_at(&self, slot: usize) -> Option<usize> {
        self.entries.binary_search_by_key(&slot, |p| p.slot).ok().map(|k| self.entries[k].ad)
    }

    /// `B(j)`: number of occupied slots strictly before `slot`.
    pub fn occupied_before(&self, slot: usize) -> usize {
        self.entries.partition_point(|p| p.slot < slot)
    }

    /// Copy without the placement at `slot`.
    pub fn without_slot(&self, slot: usize) -> Self {
        Allocation {
            mode: self.mode,
            entries: self.entries.iter().copied().filter(|p| p.slot != slot).collect(),
        }
    }

    /// Copy with `p` added; fails if the slot (or, in matching mode, the ad) is taken.
    pub fn with_placement(&self, p: Placement) -> Result<Self, AllocationError> {
        let mut entries = self.entries.clone();
        let at = entries.partition_point(|e| e.slot < p.slot);
        entries.insert(at, p);
        let alloc = Allocation { mode: self.mode, entries };
        alloc.check_structure()?;
        Ok(alloc)
    }
}
