//! Ad allocation in content feeds where user attention decays.
//!
//! A feed interleaves `m` organic items with slots; slot `j` follows item `j` and holds at
//! most one of `n` ads. A user quits with probability `q` after every viewed element, so an
//! ad's reward is discounted by every item and ad shown before it. This crate computes that
//! objective and maximizes it:
//!
//! * [`algorithms`]: backwards greedy (exact when ads may repeat, a 2-approximation when
//!   each ad is used once) and its faster non-oblivious variant.
//! * [`baselines`]: global greedy, forward greedy, online threshold, static-weight matching
//!   and the cardinality-bounded flow heuristic.
//! * [`matching`]: min-cost flow and maximum-weight bipartite matching.
//! * [`oracle`]: exhaustive solvers for tiny instances and a session simulator.
//! * [`generators`]: seeded instance generators.
//! * [`postprocess`]: cardinality limits.
//! * [`bench`]: experiment suites producing CSV tables.
//!
//! ```
//! use feedalloc::{algorithms::backwards_greedy, Edge, Mode, ProblemInstance};
//!
//! let edges = vec![Edge::new(1, 1, 1.0), Edge::new(1, 2, 1.01), Edge::new(2, 2, 1.0)];
//! let inst = ProblemInstance::new(2, 2, 0.0, edges).unwrap();
//! let report = backwards_greedy(&inst, Mode::Matching);
//! assert_eq!(report.expected_reward, 1.01);
//! ```

pub mod algorithms;
pub mod allocation;
pub mod baselines;
pub mod bench;
pub mod error;
pub mod generators;
pub mod instance;
pub mod io;
pub mod matching;
pub mod objective;
pub mod oracle;
pub mod par;
pub mod postprocess;
pub mod report;
pub mod rng;
pub mod solver;

pub use allocation::{Allocation, Mode, Placement};
pub use error::{AllocationError, ConfigError, FlowError, InstanceError, ParseError, SolveError};
pub use instance::{validate_instance, Edge, ProblemInstance, RawInstance, Violation};
pub use objective::{decompose, expected_reward, reconstruct, relative_gap, suffix_profile, suffix_reward, DecompositionTerm};
pub use par::Execution;
pub use report::{Counters, Deadline, SolveReport};
pub use solver::{solve, Algorithm, SolveOptions};
