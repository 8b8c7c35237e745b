use rand::seq::index::sample;
use rand::Rng;

use crate::error::InstanceError;
use crate::instance::{Edge, ProblemInstance};
use crate::rng::{rng_from_seed, FeedRng};

/// Direction of the position bias in [`gen_asymmetric`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Direction {
    /// Rewards shrink towards the bottom of the feed: `w (m - j) / m`.
    Top,
    /// Rewards grow towards the bottom of the feed: `w j / m`.
    Bottom,
}

fn base_weight(rng: &mut FeedRng, integer: bool) -> f64 {
    if integer {
        rng.random_range(1..=10) as f64
    } else {
        rng.random_range(1.0..=10.0)
    }
}

/// Complete bipartite instance with rewards uniform on `[1, 10]` (integers `1..=10` if `integer`).
pub fn gen_symmetric(n: usize, m: usize, q: f64, seed: u64, integer: bool) -> Result<ProblemInstance, InstanceError> {
    let mut rng = rng_from_seed(seed);
    let mut edges = Vec::with_capacity(n * m);
    for i in 1..=n {
        for j in 1..=m {
            edges.push(Edge::new(i, j, base_weight(&mut rng, integer)));
        }
    }
    ProblemInstance::new(n, m, q, edges)
}

/// Complete bipartite instance whose uniform weights are scaled by slot position.
/// Zero-reward edges (slot `m` with [`Direction::Top`]) are kept.
pub fn gen_asymmetric(
    n: usize,
    m: usize,
    q: f64,
    seed: u64,
    direction: Direction,
    integer: bool,
) -> Result<ProblemInstance, InstanceError> {
    let mut rng = rng_from_seed(seed);
    let mut edges = Vec::with_capacity(n * m);
    for i in 1..=n {
        for j in 1..=m {
            let w = base_weight(&mut rng, integer);
            let factor = match direction {
                Direction::Top => (m - j) as f64 / m as f64,
                Direction::Bottom => j as f64 / m as f64,
            };
            edges.push(Edge::new(i, j, w * factor));
        }
    }
    ProblemInstance::new(n, m, q, edges)
}

/// Each ad has reward 10 at one uniformly chosen slot and 1 everywhere else.
pub fn gen_finely_targeted(n: usize, m: usize, q: f64, seed: u64) -> Result<ProblemInstance, InstanceError> {
    let mut rng = rng_from_seed(seed);
    let mut edges = Vec::with_capacity(n * m);
    for i in 1..=n {
        let target = rng.random_range(1..=m);
        edges.extend((1..=m).map(|j| Edge::new(i, j, if j == target { 10.0 } else { 1.0 })));
    }
    ProblemInstance::new(n, m, q, edges)
}

/// The chain where filling the top slots is myopic: ad `j` only fits slot `j`, every reward
/// is 1 except `big` at slot `m`.
pub fn gen_adversarial(m: usize, big: f64, q: f64) -> Result<ProblemInstance, InstanceError> {
    let mut edges: Vec<_> = (1..m).map(|j| Edge::new(j, j, 1.0)).collect();
    edges.push(Edge::new(m, m, big));
    ProblemInstance::new(m, m, q, edges)
}

/// Keeps `max_edges` edges chosen uniformly at random (all of them if there are fewer).
pub fn subsample_edges(inst: &ProblemInstance, max_edges: usize, seed: u64) -> ProblemInstance {
    if inst.num_edges() <= max_edges {
        return inst.clone();
    }
    let mut rng = rng_from_seed(seed);
    let mut keep: Vec<usize> = sample(&mut rng, inst.num_edges(), max_edges).into_vec();
    keep.sort_unstable();
    let edges = keep.into_iter().map(|k| inst.edges()[k]).collect();
    ProblemInstance::new(inst.num_ads(), inst.num_slots(), inst.quit_prob(), edges)
        .expect("a subset of valid edges is valid")
}
