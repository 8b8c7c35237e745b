//! Comparison algorithms: global greedy, online greedy variants and static-weight matchings.

mod global;
mod online;
mod static_weight;

pub use global::{global_greedy, global_greedy_with, CandidateBound};
pub use online::{forward_greedy, forward_greedy_with, online_threshold, online_threshold_with, Threshold};
pub use static_weight::{
    flow_baseline, flow_baseline_with, flow_cardinality, flow_greedy, flow_greedy_with, mwm_baseline,
    mwm_baseline_with, position_weights,
};
