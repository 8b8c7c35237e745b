//! Minimum-cost flow by successive shortest paths with node potentials.
//!
//! Costs are real valued. Reduced costs `c(u,v) + p(u) - p(v)` stay non-negative up to
//! rounding; anything below `-REDUCED_COST_TOL` is a bug.

use std::cmp::Ordering;
use std::collections::{BinaryHeap, VecDeque};

use serde::Serialize;

use crate::error::FlowError;

pub(crate) const REDUCED_COST_TOL: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Arc {
    pub from: usize,
    pub to: usize,
    pub capacity: u64,
    pub cost: f64,
}

impl Arc {
    pub fn new(from: usize, to: usize, capacity: u64, cost: f64) -> Self {
        Arc { from, to, capacity, cost }
    }
}

/// A directed network without negative-cost cycles.
#[derive(Debug, Clone)]
pub struct FlowNetwork {
    nodes: usize,
    source: usize,
    sink: usize,
    arcs: Vec<Arc>,
    /// Shortest-path distances from the source over the initial network (0 if unreachable).
    potentials: Vec<f64>,
}

impl FlowNetwork {
    pub fn new(nodes: usize, source: usize, sink: usize, arcs: Vec<Arc>) -> Result<Self, FlowError> {
        for (k, a) in arcs.iter().enumerate() {
            for node in [a.from, a.to] {
                if node >= nodes {
                    return Err(FlowError::NodeOutOfRange { arc: k, node, nodes });
                }
            }
            if a.from == a.to {
                return Err(FlowError::SelfLoop { arc: k });
            }
            if !a.cost.is_finite() {
                return Err(FlowError::NonFiniteCost { arc: k });
            }
        }
        if source == sink {
            return Err(FlowError::SourceIsSink);
        }
        if source >= nodes || sink >= nodes {
            let node = source.max(sink);
            return Err(FlowError::NodeOutOfRange { arc: usize::MAX, node, nodes });
        }
        let potentials = match topological_order(nodes, &arcs) {
            Some(order) => dag_distances(nodes, source, &arcs, &order),
            None => bellman_ford(nodes, source, &arcs)?,
        };
        Ok(FlowNetwork { nodes, source, sink, arcs, potentials })
    }

    pub fn nodes(&self) -> usize {
        self.nodes
    }

    pub fn arcs(&self) -> &[Arc] {
        &self.arcs
    }

    pub fn source(&self) -> usize {
        self.source
    }

    pub fn sink(&self) -> usize {
        self.sink
    }
}

fn topological_order(nodes: usize, arcs: &[Arc]) -> Option<Vec<usize>> {
    let mut indeg = vec![0usize; nodes];
    let mut out: Vec<Vec<usize>> = vec![Vec::new(); nodes];
    for a in arcs.iter().filter(|a| a.capacity > 0) {
        indeg[a.to] += 1;
        out[a.from].push(a.to);
    }
    let mut queue: VecDeque<usize> = (0..nodes).filter(|&v| indeg[v] == 0).collect();
    let mut order = Vec::with_capacity(nodes);
    while let Some(u) = queue.pop_front() {
        order.push(u);
        for &v in &out[u] {
            indeg[v] -= 1;
            if indeg[v] == 0 {
                queue.push_back(v);
            }
        }
    }
    (order.len() == nodes).then_some(order)
}

fn dag_distances(nodes: usize, source: usize, arcs: &[Arc], order: &[usize]) -> Vec<f64> {
    let mut out: Vec<Vec<usize>> = vec![Vec::new(); nodes];
    for (k, a) in arcs.iter().enumerate().filter(|(_, a)| a.capacity > 0) {
        out[a.from].push(k);
    }
    let mut dist = vec![f64::INFINITY; nodes];
    dist[source] = 0.0;
    for &u in order {
        if dist[u].is_infinite() {
            continue;
        }
        for &k in &out[u] {
            let a = &arcs[k];
            let d = dist[u] + a.cost;
            if d < dist[a.to] {
                dist[a.to] = d;
            }
        }
    }
    dist.into_iter().map(|d| if d.is_finite() { d } else { 0.0 }).collect()
}

fn bellman_ford(nodes: usize, source: usize, arcs: &[Arc]) -> Result<Vec<f64>, FlowError> {
    // A virtual root at distance 0 to every node exposes cycles anywhere in the network.
    let mut all = vec![0.0; nodes];
    for round in 0..=nodes {
        let mut changed = false;
        for a in arcs.iter().filter(|a| a.capacity > 0) {
            let d = all[a.from] + a.cost;
            if d < all[a.to] - REDUCED_COST_TOL {
                all[a.to] = d;
                changed = true;
            }
        }
        if !changed {
            break;
        }
        if round == nodes {
            return Err(FlowError::NegativeCycle);
        }
    }
    let mut dist = vec![f64::INFINITY; nodes];
    dist[source] = 0.0;
    for _ in 0..nodes {
        let mut changed = false;
        for a in arcs.iter().filter(|a| a.capacity > 0) {
            if dist[a.from].is_finite() && dist[a.from] + a.cost < dist[a.to] {
                dist[a.to] = dist[a.from] + a.cost;
                changed = true;
            }
        }
        if !changed {
            break;
        }
    }
    Ok(dist.into_iter().map(|d| if d.is_finite() { d } else { 0.0 }).collect())
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct FlowResult {
    /// Flow on each input arc, in input order.
    pub flows: Vec<u64>,
    pub value: u64,
    pub cost: f64,
    /// False when the network cannot carry the requested demand.
    pub demand_met: bool,
}

/// Sends `min(demand, max flow)` units from source to sink at minimum cost.
pub fn min_cost_flow(net: &FlowNetwork, demand: u64) -> FlowResult {
    let mut ssp = Ssp::new(net);
    let mut value = 0;
    while value < demand {
        match ssp.shortest_path() {
            Some(path) => value += ssp.augment(&path, demand - value),
            None => break,
        }
    }
    ssp.result(value, value == demand)
}

#[derive(Clone, Copy, PartialEq)]
struct HeapItem {
    dist: f64,
    node: usize,
}

impl Eq for HeapItem {}

impl Ord for HeapItem {
    fn cmp(&self, other: &Self) -> Ordering {
        // Min-heap on distance, then on node index.
        other.dist.total_cmp(&self.dist).then_with(|| other.node.cmp(&self.node))
    }
}

impl PartialOrd for HeapItem {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// An augmenting path, as residual edge indices from source to sink.
pub(crate) struct Path {
    pub edges: Vec<usize>,
    /// Sum of original costs along the path.
    pub cost: f64,
    pub bottleneck: u64,
}

/// Residual network. Edge `2k` is input arc `k`, edge `2k + 1` its reverse.
pub(crate) struct Ssp {
    source: usize,
    sink: usize,
    head: Vec<usize>,
    cap: Vec<u64>,
    cost: Vec<f64>,
    adj: Vec<Vec<usize>>,
    potential: Vec<f64>,
    last_path_cost: f64,
    arcs: usize,
}

impl Ssp {
    pub fn new(net: &FlowNetwork) -> Self {
        let mut head = Vec::with_capacity(2 * net.arcs.len());
        let mut cap = Vec::with_capacity(2 * net.arcs.len());
        let mut cost = Vec::with_capacity(2 * net.arcs.len());
        let mut adj = vec![Vec::new(); net.nodes];
        for a in &net.arcs {
            adj[a.from].push(head.len());
            head.push(a.to);
            cap.push(a.capacity);
            cost.push(a.cost);
            adj[a.to].push(head.len());
            head.push(a.from);
            cap.push(0);
            cost.push(-a.cost);
        }
        Ssp {
            source: net.source,
            sink: net.sink,
            head,
            cap,
            cost,
            adj,
            potential: net.potentials.clone(),
            last_path_cost: f64::NEG_INFINITY,
            arcs: net.arcs.len(),
        }
    }

    fn tail(&self, e: usize) -> usize {
        self.head[e ^ 1]
    }

    /// Cheapest source-sink path in the residual network; updates potentials.
    pub fn shortest_path(&mut self) -> Option<Path> {
        let n = self.adj.len();
        let mut dist = vec![f64::INFINITY; n];
        let mut pred = vec![usize::MAX; n];
        let mut done = vec![false; n];
        let mut heap = BinaryHeap::new();
        dist[self.source] = 0.0;
        heap.push(HeapItem { dist: 0.0, node: self.source });
        while let Some(HeapItem { dist: d, node: u }) = heap.pop() {
            if done[u] {
                continue;
            }
            done[u] = true;
            for &e in &self.adj[u] {
                if self.cap[e] == 0 {
                    continue;
                }
                let v = self.head[e];
                if done[v] {
                    continue;
                }
                let reduced = self.cost[e] + self.potential[u] - self.potential[v];
                debug_assert!(
                    reduced >= -REDUCED_COST_TOL * (1.0 + self.potential[u].abs() + self.potential[v].abs()),
                    "negative reduced cost {reduced} on {u}->{v}"
                );
                let nd = d + reduced.max(0.0);
                if nd < dist[v] {
                    dist[v] = nd;
                    pred[v] = e;
                    heap.push(HeapItem { dist: nd, node: v });
                }
            }
        }
        if dist[self.sink].is_infinite() {
            return None;
        }
        for v in 0..n {
            if dist[v].is_finite() {
                self.potential[v] += dist[v];
            }
        }
        let mut edges = Vec::new();
        let mut v = self.sink;
        let mut bottleneck = u64::MAX;
        let mut cost = 0.0;
        while v != self.source {
            let e = pred[v];
            edges.push(e);
            bottleneck = bottleneck.min(self.cap[e]);
            cost += self.cost[e];
            v = self.tail(e);
        }
        edges.reverse();
        debug_assert!(
            cost >= self.last_path_cost - 1e-9 * (1.0 + cost.abs()),
            "augmenting path costs must be non-decreasing: {} then {cost}",
            self.last_path_cost
        );
        Some(Path { edges, cost, bottleneck })
    }

    /// Pushes up to `limit` units along `path`; returns the amount pushed.
    pub fn augment(&mut self, path: &Path, limit: u64) -> u64 {
        let amount = path.bottleneck.min(limit);
        for &e in &path.edges {
            self.cap[e] -= amount;
            self.cap[e ^ 1] += amount;
        }
        self.last_path_cost = path.cost;
        amount
    }

    /// Flow currently carried by input arc `k`.
    pub fn arc_flow(&self, k: usize) -> u64 {
        self.cap[2 * k + 1]
    }

    pub fn result(&self, value: u64, demand_met: bool) -> FlowResult {
        let flows: Vec<u64> = (0..self.arcs).map(|k| self.arc_flow(k)).collect();
        let cost = flows.iter().enumerate().map(|(k, &f)| f as f64 * self.cost[2 * k]).sum();
        FlowResult { flows, value, cost, demand_met }
    }
}
