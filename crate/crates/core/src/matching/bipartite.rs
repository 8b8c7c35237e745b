use serde::Serialize;

use crate::error::SolveError;
use crate::matching::flow::{Arc, FlowNetwork, Ssp};
use crate::report::Deadline;

/// Sparse non-negative weights between `rows` left nodes and `cols` right nodes (0-based).
#[derive(Debug, Clone, Default, PartialEq)]
pub struct BipartiteWeights {
    pub rows: usize,
    pub cols: usize,
    pub entries: Vec<(usize, usize, f64)>,
}

impl BipartiteWeights {
    pub fn new(rows: usize, cols: usize, entries: Vec<(usize, usize, f64)>) -> Self {
        BipartiteWeights { rows, cols, entries }
    }

    /// Dense constructor; zero entries are treated as absent.
    pub fn from_dense(dense: &[Vec<f64>]) -> Self {
        let rows = dense.len();
        let cols = dense.iter().map(Vec::len).max().unwrap_or(0);
        let entries = dense
            .iter()
            .enumerate()
            .flat_map(|(r, row)| row.iter().enumerate().map(move |(c, &w)| (r, c, w)))
            .filter(|&(_, _, w)| w > 0.0)
            .collect();
        BipartiteWeights { rows, cols, entries }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Matching {
    /// `(row, col)` pairs, sorted by row.
    pub pairs: Vec<(usize, usize)>,
    pub weight: f64,
    /// Gains of the successive augmentations, in order.
    pub augmentation_gains: Vec<f64>,
}

impl Matching {
    pub fn len(&self) -> usize {
        self.pairs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.pairs.is_empty()
    }
}

/// Maximum-weight matching. Zero-weight edges are never used.
pub fn max_weight_matching(weights: &BipartiteWeights) -> Matching {
    constrained_max_weight_matching(weights, usize::MAX)
}

/// Maximum-weight matching among matchings with at most `k` pairs.
pub fn constrained_max_weight_matching(weights: &BipartiteWeights, k: usize) -> Matching {
    constrained_max_weight_matching_with(weights, k, &Deadline::none()).expect("no deadline set")
}

/// Successive shortest augmenting paths on `source -> rows -> cols -> sink` with arc costs
/// `-w`; each augmentation adds one pair, and the search stops after `k` augmentations or
/// when the best path no longer increases the weight.
pub fn constrained_max_weight_matching_with(
    weights: &BipartiteWeights,
    k: usize,
    deadline: &Deadline,
) -> Result<Matching, SolveError> {
    let (rows, cols) = (weights.rows, weights.cols);
    let source = 0;
    let sink = rows + cols + 1;
    let mut entries: Vec<(usize, usize, f64)> =
        weights.entries.iter().copied().filter(|&(_, _, w)| w > 0.0).collect();
    entries.sort_by_key(|a| (a.0, a.1));

    let mut arcs = Vec::with_capacity(entries.len() + rows + cols);
    for r in 0..rows {
        arcs.push(Arc::new(source, 1 + r, 1, 0.0));
    }
    let first_edge = arcs.len();
    for &(r, c, w) in &entries {
        arcs.push(Arc::new(1 + r, 1 + rows + c, 1, -w));
    }
    for c in 0..cols {
        arcs.push(Arc::new(1 + rows + c, sink, 1, 0.0));
    }
    let net = FlowNetwork::new(rows + cols + 2, source, sink, arcs)
        .expect("bipartite reduction is acyclic and well formed");

    let limit = k.min(rows).min(cols) as u64;
    let mut ssp = Ssp::new(&net);
    let mut gains = Vec::new();
    let mut value = 0;
    while value < limit {
        deadline.check()?;
        match ssp.shortest_path() {
            Some(path) if path.cost < 0.0 => {
                gains.push(-path.cost);
                value += ssp.augment(&path, 1);
            }
            _ => break,
        }
    }

    let mut pairs = Vec::new();
    let mut weight = 0.0;
    for (k, &(r, c, w)) in entries.iter().enumerate() {
        if ssp.arc_flow(first_edge + k) > 0 {
            pairs.push((r, c));
            weight += w;
        }
    }
    Ok(Matching { pairs, weight, augmentation_gains: gains })
}
