//! Exact bipartite matching and min-cost flow, used by the static-weight baselines.

mod bipartite;
mod flow;

pub use bipartite::{
    constrained_max_weight_matching, constrained_max_weight_matching_with, max_weight_matching,
    BipartiteWeights, Matching,
};
pub use flow::{min_cost_flow, Arc, FlowNetwork, FlowResult};
