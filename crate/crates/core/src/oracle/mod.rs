//! Ground truth for testing: exhaustive solvers for tiny instances and a session simulator.

mod exhaustive;
mod simulate;

pub use exhaustive::{
    brute_force_mapping, brute_force_mapping_report, brute_force_matching, brute_force_matching_report,
    ExactSolution, MAPPING_MAX_SLOTS, MATCHING_MAX_EDGES, MATCHING_MAX_SIDE,
};
pub use simulate::{
    simulate_session, simulate_sessions, simulate_sessions_with, SessionTrace, SimulationSummary, Viewed,
    SESSION_CHUNK,
};
