//! Problem instances: ads, slots, rewarded edges and the quit probability.
//!
//! Ads and slots are 1-based. Slot `j` sits immediately after the `j`-th
//! organic item of the feed.

use std::collections::HashSet;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::InstanceError;

/// An admissible (ad, slot) pair and the reward collected if the ad is seen there.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Edge {
    pub ad: usize,
    pub slot: usize,
    pub reward: f64,
}

impl Edge {
    pub fn new(ad: usize, slot: usize, reward: f64) -> Self {
        Edge { ad, slot, reward }
    }
}

/// Unchecked instance data, as read from a file or assembled by hand.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RawInstance {
    pub num_ads: usize,
    pub num_slots: usize,
    pub quit_prob: f64,
    pub edges: Vec<Edge>,
}

/// A single broken invariant of a [`RawInstance`].
#[derive(Debug, Clone, PartialEq)]
pub enum Violation {
    QuitProbOutOfRange { quit_prob: f64 },
    AdOutOfRange { edge: usize, ad: usize },
    SlotOutOfRange { edge: usize, slot: usize },
    NegativeReward { edge: usize, reward: f64 },
    NonFiniteReward { edge: usize },
    DuplicateEdge { edge: usize, ad: usize, slot: usize },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::QuitProbOutOfRange { quit_prob } => {
                write!(f, "quit_prob out of range: {quit_prob} not in [0, 1)")
            }
            Violation::AdOutOfRange { edge, ad } => {
                write!(f, "edge #{edge}: ad {ad} out of range")
            }
            Violation::SlotOutOfRange { edge, slot } => {
                write!(f, "edge #{edge}: slot {slot} out of range")
            }
            Violation::NegativeReward { edge, reward } => {
                write!(f, "edge #{edge}: negative reward {reward}")
            }
            Violation::NonFiniteReward { edge } => write!(f, "edge #{edge}: non-finite reward"),
            Violation::DuplicateEdge { edge, ad, slot } => {
                write!(f, "edge #{edge}: duplicate edge ({ad}, {slot})")
            }
        }
    }
}

/// Reports every invariant violation of `raw`. An empty list means the data is well formed.
pub fn validate_instance(raw: &RawInstance) -> Vec<Violation> {
    let mut out = Vec::new();
    let q = raw.quit_prob;
    if !(0.0..1.0).contains(&q) {
        out.push(Violation::QuitProbOutOfRange { quit_prob: q });
    }
    let mut seen = HashSet::with_capacity(raw.edges.len());
    for (k, e) in raw.edges.iter().enumerate() {
        if e.ad == 0 || e.ad > raw.num_ads {
            out.push(Violation::AdOutOfRange { edge: k, ad: e.ad });
        }
        if e.slot == 0 || e.slot > raw.num_slots {
            out.push(Violation::SlotOutOfRange { edge: k, slot: e.slot });
        }
        if !e.reward.is_finite() {
            out.push(Violation::NonFiniteReward { edge: k });
        } else if e.reward < 0.0 {
            out.push(Violation::NegativeReward { edge: k, reward: e.reward });
        }
        if !seen.insert((e.ad, e.slot)) {
            out.push(Violation::DuplicateEdge { edge: k, ad: e.ad, slot: e.slot });
        }
    }
    out
}

impl RawInstance {
    pub fn validate(&self) -> Vec<Violation> {
        validate_instance(self)
    }

    pub fn into_instance(self) -> Result<ProblemInstance, InstanceError> {
        ProblemInstance::from_raw(self)
    }
}

/// A validated instance, indexed by slot and by ad.
///
/// Edges are stored sorted by `(slot, ad)`; `slot_offsets[j - 1]..slot_offsets[j]` is the
/// range of edges incident to slot `j`.
#[derive(Debug, Clone, PartialEq)]
pub struct ProblemInstance {
    num_ads: usize,
    num_slots: usize,
    quit_prob: f64,
    edges: Vec<Edge>,
    slot_offsets: Vec<usize>,
    ad_slots: Vec<Vec<usize>>,
}

impl ProblemInstance {
    pub fn new(
        num_ads: usize,
        num_slots: usize,
        quit_prob: f64,
        edges: Vec<Edge>,
    ) -> Result<Self, InstanceError> {
        Self::from_raw(RawInstance { num_ads, num_slots, quit_prob, edges })
    }

    pub fn from_raw(raw: RawInstance) -> Result<Self, InstanceError> {
        let violations = validate_instance(&raw);
        if !violations.is_empty() {
            return Err(InstanceError::Invalid(violations));
        }
        let RawInstance { num_ads, num_slots, quit_prob, mut edges } = raw;
        edges.sort_by_key(|a| (a.slot, a.ad));

        let mut slot_offsets = vec![0; num_slots + 1];
        for e in &edges {
            slot_offsets[e.slot] += 1;
        }
        for j in 1..=num_slots {
            slot_offsets[j] += slot_offsets[j - 1];
        }
        let mut ad_slots = vec![Vec::new(); num_ads + 1];
        for e in &edges {
            ad_slots[e.ad].push(e.slot);
        }
        Ok(ProblemInstance { num_ads, num_slots, quit_prob, edges, slot_offsets, ad_slots })
    }

    pub fn num_ads(&self) -> usize {
        self.num_ads
    }

    pub fn num_slots(&self) -> usize {
        self.num_slots
    }

    pub fn quit_prob(&self) -> f64 {
        self.quit_prob
    }

    /// Per-view survival probability `1 - q`.
    pub fn survival(&self) -> f64 {
        1.0 - self.quit_prob
    }

    /// All edges, sorted by `(slot, ad)`.
    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn num_edges(&self) -> usize {
        self.edges.len()
    }

    /// Edges incident to slot `j`, sorted by ad. Empty for out-of-range `j`.
    pub fn slot_edges(&self, slot: usize) -> &[Edge] {
        if slot == 0 || slot > self.num_slots {
            return &[];
        }
        &self.edges[self.slot_offsets[slot - 1]..self.slot_offsets[slot]]
    }

    /// Slots admissible for `ad` (the set `S_i`), ascending.
    pub fn ad_slots(&self, ad: usize) -> &[usize] {
        self.ad_slots.get(ad).map(Vec::as_slice).unwrap_or(&[])
    }

    pub fn reward(&self, ad: usize, slot: usize) -> Option<f64> {
        let edges = self.slot_edges(slot);
        edges.binary_search_by_key(&ad, |e| e.ad).ok().map(|k| edges[k].reward)
    }

    pub fn to_raw(&self) -> RawInstance {
        RawInstance {
            num_ads: self.num_ads,
            num_slots: self.num_slots,
            quit_prob: self.quit_prob,
            edges: self.edges.clone(),
        }
    }

    /// Same ads, slots and rewards under a different quit probability.
    pub fn with_quit_prob(&self, quit_prob: f64) -> Result<Self, InstanceError> {
        let mut raw = self.to_raw();
        raw.quit_prob = quit_prob;
        raw.into_instance()
    }
}
