//! Independent reference implementations shared by the integration tests.
#![allow(dead_code)]

use std::collections::HashSet;

use feedalloc::rng::{rng_from_seed, FeedRng};
use feedalloc::algorithms::{instrumented_run, Backwards};
use feedalloc::{suffix_reward, Allocation, Edge, Mode, ProblemInstance};
use rand::seq::SliceRandom;
use rand::Rng;

/// Objective from first principles: walk the feed counting every viewed element.
pub fn naive_value(q: f64, placements: &[(usize, f64)]) -> f64 {
    let mut sorted = placements.to_vec();
    sorted.sort_by_key(|p| p.0);
    let mut total = 0.0;
    for (k, &(slot, reward)) in sorted.iter().enumerate() {
        let views_before = slot + k;
        total += reward * (1.0 - q).powi(views_before as i32);
    }
    total
}

pub fn naive_alloc_value(inst: &ProblemInstance, alloc: &Allocation) -> f64 {
    let ps: Vec<(usize, f64)> = alloc.entries().iter().map(|p| (p.slot, p.reward)).collect();
    naive_value(inst.quit_prob(), &ps)
}

/// `f_j` from first principles: only slots after `j` count, items `1..=j` are not viewed.
pub fn naive_suffix(q: f64, placements: &[(usize, f64)], j: usize) -> f64 {
    let shifted: Vec<(usize, f64)> = placements.iter().filter(|p| p.0 > j).map(|&(s, r)| (s - j, r)).collect();
    naive_value(q, &shifted)
}

/// Random sparse instance: `n` ads, `m` slots, each edge present with probability `density`.
pub fn random_instance(rng: &mut FeedRng, n: usize, m: usize, density: f64, q: f64) -> ProblemInstance {
    let mut edges = Vec::new();
    for i in 1..=n {
        for j in 1..=m {
            if rng.random::<f64>() < density {
                edges.push(Edge::new(i, j, rng.random_range(0.0..10.0)));
            }
        }
    }
    ProblemInstance::new(n, m, q, edges).unwrap()
}

/// A random valid matching allocation of `inst`.
pub fn random_allocation(rng: &mut FeedRng, inst: &ProblemInstance, fill: f64) -> Allocation {
    let mut slots: Vec<usize> = (1..=inst.num_slots()).collect();
    slots.shuffle(rng);
    let mut used = HashSet::new();
    let mut pairs = Vec::new();
    for j in slots {
        if rng.random::<f64>() >= fill {
            continue;
        }
        let free: Vec<usize> = inst.slot_edges(j).iter().map(|e| e.ad).filter(|a| !used.contains(a)).collect();
        if let Some(&ad) = free.get(rng.random_range(0..free.len().max(1))) {
            used.insert(ad);
            pairs.push((j, ad));
        }
    }
    Allocation::new(inst, Mode::Matching, pairs).unwrap()
}

pub fn seeded(seed: u64) -> FeedRng {
    rng_from_seed(seed)
}

/// Best matching by recursion over ads (the library enumerates over slots).
pub fn enumerate_matchings_by_ad(inst: &ProblemInstance) -> f64 {
    fn go(inst: &ProblemInstance, ad: usize, used: &mut Vec<bool>, chosen: &mut Vec<(usize, f64)>, best: &mut f64) {
        if ad > inst.num_ads() {
            *best = best.max(naive_value(inst.quit_prob(), chosen));
            return;
        }
        go(inst, ad + 1, used, chosen, best);
        for e in inst.edges().iter().filter(|e| e.ad == ad) {
            if !used[e.slot] {
                used[e.slot] = true;
                chosen.push((e.slot, e.reward));
                go(inst, ad + 1, used, chosen, best);
                chosen.pop();
                used[e.slot] = false;
            }
        }
    }
    let mut best = 0.0;
    go(inst, 1, &mut vec![false; inst.num_slots() + 1], &mut Vec::new(), &mut best);
    best
}

/// Maximum weight of a matching with at most `k` pairs in a dense weight matrix, by
/// enumerating every partial assignment of rows. Non-positive weights are never worth taking.
pub fn enumerate_weighted_matching(w: &[Vec<f64>], k: usize) -> f64 {
    fn go(w: &[Vec<f64>], row: usize, used: &mut Vec<bool>, left: usize, acc: f64, best: &mut f64) {
        if acc > *best {
            *best = acc;
        }
        if row == w.len() || left == 0 {
            return;
        }
        go(w, row + 1, used, left, acc, best);
        for c in 0..w[row].len() {
            if !used[c] && w[row][c] > 0.0 {
                used[c] = true;
                go(w, row + 1, used, left - 1, acc + w[row][c], best);
                used[c] = false;
            }
        }
    }
    let cols = w.first().map_or(0, Vec::len);
    let mut best = 0.0;
    go(w, 0, &mut vec![false; cols], k, 0.0, &mut best);
    best
}

/// Global greedy without lazy evaluation: every round recomputes every marginal gain and
/// commits the best one (ties: smallest slot, then smallest ad) while it is positive.
pub fn naive_global_greedy(inst: &ProblemInstance, limit: Option<usize>) -> Vec<(usize, usize)> {
    let q = inst.quit_prob();
    let mut chosen: Vec<(usize, usize, f64)> = Vec::new();
    loop {
        if limit.is_some_and(|k| chosen.len() >= k) {
            break;
        }
        let current: Vec<(usize, f64)> = chosen.iter().map(|&(s, _, r)| (s, r)).collect();
        let base = naive_value(q, &current);
        let mut best: Option<(f64, usize, usize, f64)> = None;
        for e in inst.edges() {
            if chosen.iter().any(|&(s, a, _)| s == e.slot || a == e.ad) {
                continue;
            }
            let mut with = current.clone();
            with.push((e.slot, e.reward));
            let gain = naive_value(q, &with) - base;
            let better = match best {
                None => true,
                Some((g, s, a, _)) => gain > g || (gain == g && (e.slot, e.ad) < (s, a)),
            };
            if better {
                best = Some((gain, e.slot, e.ad, e.reward));
            }
        }
        match best {
            Some((g, s, a, r)) if g > 0.0 => chosen.push((s, a, r)),
            _ => break,
        }
    }
    let mut pairs: Vec<(usize, usize)> = chosen.iter().map(|&(s, a, _)| (s, a)).collect();
    pairs.sort_unstable();
    pairs
}

/// Pruning reference: recompute every single-removal value, drop the cheapest (ties: highest
/// slot), repeat.
pub fn naive_prune(inst: &ProblemInstance, alloc: &Allocation, k: usize) -> Vec<(usize, usize)> {
    let q = inst.quit_prob();
    let mut cur: Vec<(usize, usize, f64)> = alloc.entries().iter().map(|p| (p.slot, p.ad, p.reward)).collect();
    while cur.len() > k {
        let all: Vec<(usize, f64)> = cur.iter().map(|&(s, _, r)| (s, r)).collect();
        let total = naive_value(q, &all);
        let mut best: Option<(f64, usize)> = None;
        for idx in 0..cur.len() {
            let rest: Vec<(usize, f64)> =
                cur.iter().enumerate().filter(|&(t, _)| t != idx).map(|(_, &(s, _, r))| (s, r)).collect();
            let loss = total - naive_value(q, &rest);
            let slot = cur[idx].0;
            let better = match best {
                None => true,
                Some((l, s)) => loss < l || (loss == l && slot > s),
            };
            if better {
                best = Some((loss, slot));
            }
        }
        let slot = best.unwrap().1;
        cur.retain(|p| p.0 != slot);
    }
    cur.iter().map(|&(s, a, _)| (s, a)).collect()
}

/// The two properties the 2-approximation argument relies on, checked on a logged run:
/// the committed lower bound never exceeds the exact gain, and once slot `j` is processed
/// later iterations never increase `f_j`.
pub fn check_instrumented_run(inst: &ProblemInstance) -> Result<(), String> {
    let (_, logs) = instrumented_run(Backwards::NonOblivious, inst);
    let s = inst.survival();
    let alloc_of = |pairs: &[(usize, usize)]| Allocation::new(inst, Mode::Matching, pairs.iter().copied()).unwrap();
    let mut before = Allocation::empty(Mode::Matching);
    let mut afters = Vec::new();
    for log in &logs {
        let after = alloc_of(&log.allocation_after);
        let j = log.slot;
        let f_before = suffix_reward(inst, &before, j).unwrap();
        if (f_before - log.suffix_before).abs() > 1e-9 * f_before.abs().max(1.0) {
            return Err(format!("slot {j}: logged suffix {} differs from {f_before}", log.suffix_before));
        }
        if log.committed {
            let exact = if s > 0.0 {
                suffix_reward(inst, &after, j - 1).unwrap() / s - f_before
            } else {
                0.0
            };
            let bound = log.gain.unwrap();
            if s > 0.0 && bound > exact + 1e-9 * exact.abs().max(1.0) {
                return Err(format!("slot {j}: lower bound {bound} exceeds exact gain {exact}"));
            }
        }
        afters.push(after.clone());
        before = after;
    }
    for (t, log) in logs.iter().enumerate() {
        let j = log.slot;
        let mut prev = suffix_reward(inst, &afters[t], j).unwrap();
        for later in &afters[t + 1..] {
            let cur = suffix_reward(inst, later, j).unwrap();
            if cur > prev + 1e-9 * prev.abs().max(1.0) {
                return Err(format!("f_{j} increased from {prev} to {cur}"));
            }
            prev = cur;
        }
    }
    Ok(())
}
