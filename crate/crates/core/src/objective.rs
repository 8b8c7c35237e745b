//! Expected reward of an allocation under the decaying-attention model.
//!
//! A user views item 1, then the ad in slot 1 (if any), then item 2, and so on, and quits
//! with probability `q` after every viewed element. The ad in slot `j` is therefore seen
//! with probability `(1 - q)^(j + B(j))`, where `B(j)` counts the occupied slots before `j`.

use serde::{Deserialize, Serialize};

use crate::allocation::Allocation;
use crate::error::AllocationError;
use crate::instance::ProblemInstance;

#[inline]
pub(crate) fn pow_survival(survival: f64, exp: usize) -> f64 {
    survival.powi(exp as i32)
}

/// `Σ r (1-q)^(s - base + b)` over slot-ascending `(slot, reward)` pairs with `slot > base`,
/// where `b` counts the pairs preceding each one. `base = 0` gives the full objective.
pub(crate) fn evaluate_sorted(
    survival: f64,
    base: usize,
    placements: impl IntoIterator<Item = (usize, f64)>,
) -> f64 {
    let mut total = 0.0;
    let mut before = 0;
    for (slot, reward) in placements {
        if slot <= base {
            continue;
        }
        total += reward * pow_survival(survival, slot - base + before);
        before += 1;
    }
    total
}

/// `f(M)`: the expected reward collected by a user browsing the feed.
pub fn expected_reward(inst: &ProblemInstance, alloc: &Allocation) -> Result<f64, AllocationError> {
    alloc.check_against(inst)?;
    Ok(evaluate_sorted(inst.survival(), 0, alloc.entries().iter().map(|p| (p.slot, p.reward))))
}

/// `f_j(M)`: expected reward of the suffix problem that ignores the first `j` items and slots.
pub fn suffix_reward(
    inst: &ProblemInstance,
    alloc: &Allocation,
    j: usize,
) -> Result<f64, AllocationError> {
    check_index(inst, j)?;
    alloc.check_against(inst)?;
    Ok(evaluate_sorted(inst.survival(), j, alloc.entries().iter().map(|p| (p.slot, p.reward))))
}

fn check_index(inst: &ProblemInstance, j: usize) -> Result<(), AllocationError> {
    if j > inst.num_slots() {
        return Err(AllocationError::SlotOutOfRange { slot: j, num_slots: inst.num_slots() });
    }
    Ok(())
}

/// `R_0, ..., R_m` computed by the backward recursion
/// `R_j = (1-q) (R_{j+1} + [slot j+1 occupied] (r_{j+1} - q R_{j+1}))`.
pub fn suffix_profile(inst: &ProblemInstance, alloc: &Allocation) -> Result<Vec<f64>, AllocationError> {
    alloc.check_against(inst)?;
    let m = inst.num_slots();
    let q = inst.quit_prob();
    let survival = inst.survival();
    let mut slot_reward = vec![None; m + 1];
    for p in alloc.entries() {
        slot_reward[p.slot] = Some(p.reward);
    }
    let mut profile = vec![0.0; m + 1];
    for j in (0..m).rev() {
        let next = profile[j + 1];
        let gain = slot_reward[j + 1].map_or(0.0, |r| r - q * next);
        profile[j] = survival * (next + gain);
    }
    Ok(profile)
}

/// One slot's share of a suffix reward.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct DecompositionTerm {
    pub slot: usize,
    pub occupied: bool,
    /// `r_{e_j} - q R_j` for an occupied slot, zero otherwise.
    pub tau: f64,
    /// `(1-q)^(slot - j)` relative to the queried index `j`.
    pub discount: f64,
}

impl DecompositionTerm {
    pub fn contribution(&self) -> f64 {
        if self.occupied {
            self.discount * self.tau
        } else {
            0.0
        }
    }
}

/// Splits `R_j` into per-slot marginal terms for slots `j+1..=m`; their contributions sum to
/// `suffix_reward(inst, alloc, j)`.
pub fn decompose(
    inst: &ProblemInstance,
    alloc: &Allocation,
    j: usize,
) -> Result<Vec<DecompositionTerm>, AllocationError> {
    check_index(inst, j)?;
    let profile = suffix_profile(inst, alloc)?;
    let q = inst.quit_prob();
    let survival = inst.survival();
    let mut terms: Vec<DecompositionTerm> = (j + 1..=inst.num_slots())
        .map(|slot| DecompositionTerm {
            slot,
            occupied: false,
            tau: 0.0,
            discount: pow_survival(survival, slot - j),
        })
        .collect();
    for p in alloc.entries().iter().filter(|p| p.slot > j) {
        let t = &mut terms[p.slot - j - 1];
        t.occupied = true;
        t.tau = p.reward - q * profile[p.slot];
    }
    Ok(terms)
}

/// Sum of the decomposition terms.
pub fn reconstruct(terms: &[DecompositionTerm]) -> f64 {
    terms.iter().map(DecompositionTerm::contribution).sum()
}

/// Relative difference `|a - b| / max(|a|, |b|)`; zero when both are (sub)normal-tiny.
pub fn relative_gap(a: f64, b: f64) -> f64 {
    let scale = a.abs().max(b.abs());
    if scale < 1e-290 {
        return 0.0;
    }
    (a - b).abs() / scale
}
