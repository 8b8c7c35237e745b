//! Backwards greedy solvers and their per-slot instrumentation.

mod backwards;
mod nonoblivious;
mod state;

use std::time::Instant;

pub use backwards::{backwards_greedy, backwards_greedy_with};
pub use nonoblivious::{nonoblivious_backwards_greedy, nonoblivious_backwards_greedy_with, TauState};
pub use state::IterationLog;

pub(crate) use state::SuffixState;

use crate::allocation::Mode;
use crate::instance::ProblemInstance;
use crate::report::{Deadline, SolveReport};

/// A backwards solver that can be run with per-slot logging.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Backwards {
    Greedy(Mode),
    NonOblivious,
}

/// Runs `algorithm` on `inst` and returns its report along with one log record per slot,
/// in processing order `m, m-1, ..., 1`.
pub fn instrumented_run(algorithm: Backwards, inst: &ProblemInstance) -> (SolveReport, Vec<IterationLog>) {
    let mut logs = Vec::with_capacity(inst.num_slots());
    let start = Instant::now();
    let deadline = Deadline::none();
    let (name, alloc, counters) = match algorithm {
        Backwards::Greedy(mode) => {
            let (a, c) = backwards::run(inst, mode, &deadline, &mut logs).expect("no deadline set");
            (if mode == Mode::Mapping { "gb-mapping" } else { "gb" }, a, c)
        }
        Backwards::NonOblivious => {
            let (a, c, _) = nonoblivious::run(inst, &deadline, &mut logs).expect("no deadline set");
            ("gbp", a, c)
        }
    };
    (SolveReport::new(name, inst, alloc, start.elapsed(), counters), logs)
}
