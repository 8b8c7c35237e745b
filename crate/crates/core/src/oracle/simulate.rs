use rand::Rng;
use serde::Serialize;

use crate::allocation::Allocation;
use crate::instance::ProblemInstance;
use crate::par::{map_range, Execution};
use crate::rng::{derive_seed, rng_from_seed};

/// Sessions per independently seeded chunk. Fixed so the merged estimate does not depend on
/// how many workers process the chunks.
pub const SESSION_CHUNK: usize = 4096;

/// One element of the feed as seen by the user.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Viewed {
    Item(usize),
    Ad { slot: usize, ad: usize },
}

/// A single simulated browsing session.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SessionTrace {
    pub elements: Vec<Viewed>,
    /// Index into `elements` of the element after which the user quit; `None` if the whole
    /// feed was viewed.
    pub quit_after: Option<usize>,
    pub reward: f64,
}

/// Sample mean and its standard error.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SimulationSummary {
    pub mean: f64,
    pub std_error: f64,
    pub sessions: usize,
}

impl SimulationSummary {
    /// Whether `value` lies within `z` standard errors of the mean.
    pub fn agrees_with(&self, value: f64, z: f64) -> bool {
        (self.mean - value).abs() <= z * self.std_error
    }
}

/// Walks the feed item by item, showing the slot-`j` ad right after item `j`; after every
/// viewed element the user quits with probability `q`.
pub fn simulate_session<R: Rng + ?Sized>(inst: &ProblemInstance, alloc: &Allocation, rng: &mut R) -> SessionTrace {
    let q = inst.quit_prob();
    let mut elements = Vec::new();
    let mut reward = 0.0;
    let mut placements = alloc.entries().iter().peekable();
    for j in 1..=inst.num_slots() {
        elements.push(Viewed::Item(j));
        if rng.random::<f64>() < q {
            let at = elements.len() - 1;
            return SessionTrace { elements, quit_after: Some(at), reward };
        }
        if let Some(p) = placements.next_if(|p| p.slot == j) {
            elements.push(Viewed::Ad { slot: j, ad: p.ad });
            reward += p.reward;
            if rng.random::<f64>() < q {
                let at = elements.len() - 1;
                return SessionTrace { elements, quit_after: Some(at), reward };
            }
        }
    }
    SessionTrace { elements, quit_after: None, reward }
}

/// Same walk as [`simulate_session`] without recording the trace. Only the coins that can
/// change the outcome are flipped; coins after the last ad cannot.
fn session_reward<R: Rng + ?Sized>(alloc: &Allocation, q: f64, rng: &mut R) -> f64 {
    let mut reward = 0.0;
    let mut item = 0;
    for p in alloc.entries() {
        while item < p.slot {
            item += 1;
            if rng.random::<f64>() < q {
                return reward;
            }
        }
        reward += p.reward;
        if rng.random::<f64>() < q {
            return reward;
        }
    }
    reward
}

#[derive(Clone, Copy)]
struct Moments {
    count: f64,
    mean: f64,
    m2: f64,
}

impl Moments {
    fn merge(self, other: Moments) -> Moments {
        if other.count == 0.0 {
            return self;
        }
        let count = self.count + other.count;
        let delta = other.mean - self.mean;
        Moments {
            count,
            mean: self.mean + delta * other.count / count,
            m2: self.m2 + other.m2 + delta * delta * self.count * other.count / count,
        }
    }
}

/// Monte Carlo estimate of the expected reward of `alloc`.
pub fn simulate_sessions(inst: &ProblemInstance, alloc: &Allocation, sessions: usize, seed: u64) -> SimulationSummary {
    simulate_sessions_with(inst, alloc, sessions, seed, Execution::Auto)
}

pub fn simulate_sessions_with(
    inst: &ProblemInstance,
    alloc: &Allocation,
    sessions: usize,
    seed: u64,
    exec: Execution,
) -> SimulationSummary {
    assert!(sessions >= 1, "at least one session is required");
    let q = inst.quit_prob();
    let chunks = sessions.div_ceil(SESSION_CHUNK);
    let parts = map_range(chunks, exec, |c| {
        let mut rng = rng_from_seed(derive_seed(seed, c as u64));
        let len = SESSION_CHUNK.min(sessions - c * SESSION_CHUNK);
        let mut m = Moments { count: 0.0, mean: 0.0, m2: 0.0 };
        for _ in 0..len {
            let x = session_reward(alloc, q, &mut rng);
            m.count += 1.0;
            let delta = x - m.mean;
            m.mean += delta / m.count;
            m.m2 += delta * (x - m.mean);
        }
        m
    });
    let total = parts.into_iter().fold(Moments { count: 0.0, mean: 0.0, m2: 0.0 }, Moments::merge);
    let variance = if sessions > 1 { total.m2 / (total.count - 1.0) } else { 0.0 };
    SimulationSummary {
        mean: total.mean,
        std_error: (variance.max(0.0) / total.count).sqrt(),
        sessions,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::allocation::Mode;
    use crate::instance::Edge;
    use crate::objective::expected_reward;

    fn single(q: f64) -> (ProblemInstance, Allocation) {
        let inst = ProblemInstance::new(1, 3, q, vec![Edge::new(1, 2, 10.0)]).unwrap();
        let alloc = Allocation::new(&inst, Mode::Matching, [(2, 1)]).unwrap();
        (inst, alloc)
    }

    #[test]
    fn no_quitting_collects_everything() {
        let edges = vec![Edge::new(1, 1, 1.5), Edge::new(2, 3, 2.0)];
        let inst = ProblemInstance::new(2, 3, 0.0, edges).unwrap();
        let alloc = Allocation::new(&inst, Mode::Matching, [(1, 1), (3, 2)]).unwrap();
        let s = simulate_sessions(&inst, &alloc, 1000, 3);
        assert_eq!(s.mean, 3.5);
        assert_eq!(s.std_error, 0.0);
    }

    #[test]
    fn single_edge_converges() {
        let (inst, alloc) = single(0.5);
        let s = simulate_sessions(&inst, &alloc, 1_000_000, 11);
        assert!(s.agrees_with(2.5, 3.0), "{s:?}");
    }

    #[test]
    fn worker_count_does_not_matter() {
        let (inst, alloc) = single(0.3);
        let a = simulate_sessions_with(&inst, &alloc, 50_000, 5, Execution::Sequential);
        let b = simulate_sessions_with(&inst, &alloc, 50_000, 5, Execution::Parallel);
        assert_eq!(a, b);
    }

    #[test]
    fn trace_shape() {
        let (inst, alloc) = single(0.0);
        let t = simulate_session(&inst, &alloc, &mut rng_from_seed(1));
        assert_eq!(
            t.elements,
            vec![Viewed::Item(1), Viewed::Item(2), Viewed::Ad { slot: 2, ad: 1 }, Viewed::Item(3)]
        );
        assert_eq!(t.quit_after, None);
        assert_eq!(t.reward, 10.0);

        let (inst, alloc) = single(0.9);
        let mut rng = rng_from_seed(1);
        for _ in 0..200 {
            let t = simulate_session(&inst, &alloc, &mut rng);
            match t.quit_after {
                Some(at) => assert_eq!(at, t.elements.len() - 1),
                None => assert_eq!(t.elements.len(), 4),
            }
            assert_eq!(t.elements[0], Viewed::Item(1));
        }
    }

    #[test]
    fn trace_reward_is_sum_of_seen_ads() {
        let edges = vec![Edge::new(1, 1, 1.0), Edge::new(2, 2, 2.0), Edge::new(3, 4, 4.0)];
        let inst = ProblemInstance::new(3, 4, 0.25, edges).unwrap();
        let alloc = Allocation::new(&inst, Mode::Matching, [(1, 1), (2, 2), (4, 3)]).unwrap();
        let mut rng = rng_from_seed(9);
        for _ in 0..500 {
            let t = simulate_session(&inst, &alloc, &mut rng);
            let seen: f64 = t
                .elements
                .iter()
                .filter_map(|v| match v {
                    Viewed::Ad { slot, .. } => inst.reward(alloc.ad_at(*slot).unwrap(), *slot),
                    Viewed::Item(_) => None,
                })
                .sum();
            assert_eq!(seen, t.reward);
        }
        let s = simulate_sessions(&inst, &alloc, 200_000, 2);
        assert!(s.agrees_with(expected_reward(&inst, &alloc).unwrap(), 4.0), "{s:?}");
    }

    #[test]
    fn earlier_ad_lowers_later_view_rate() {
        let edges = vec![Edge::new(1, 1, 1.0), Edge::new(2, 2, 1.0)];
        let inst = ProblemInstance::new(2, 2, 0.2, edges).unwrap();
        let alone = Allocation::new(&inst, Mode::Matching, [(2, 2)]).unwrap();
        let both = Allocation::new(&inst, Mode::Matching, [(1, 1), (2, 2)]).unwrap();
        let rate = |alloc: &Allocation| {
            let mut rng = rng_from_seed(17);
            let views = (0..100_000)
                .filter(|_| {
                    simulate_session(&inst, alloc, &mut rng)
                        .elements
                        .contains(&Viewed::Ad { slot: 2, ad: 2 })
                })
                .count();
            views as f64 / 100_000.0
        };
        assert!(rate(&both) < rate(&alone));
    }
}
