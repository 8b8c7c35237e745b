use std::time::{Duration, Instant};

use serde::Serialize;

use crate::allocation::Allocation;
use crate::error::SolveError;
use crate::instance::ProblemInstance;
use crate::objective::expected_reward;

/// Work counters reported by a solver.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize)]
pub struct Counters {
    /// Main-loop iterations (slots processed, greedy rounds, augmentations, ...).
    pub iterations: usize,
    /// Marginal-gain (or bound) evaluations.
    pub gain_evaluations: usize,
    /// Committed (re-)assignments.
    pub commits: usize,
    /// Commits that moved an already matched ad.
    pub reassignments: usize,
}

#[derive(Debug, Clone, Serialize)]
pub struct SolveReport {
    pub algorithm: String,
    pub allocation: Allocation,
    /// Always recomputed from the allocation, never taken from solver internals.
    pub expected_reward: f64,
    pub elapsed_secs: f64,
    pub counters: Counters,
}

impl SolveReport {
    pub(crate) fn new(
        algorithm: impl Into<String>,
        inst: &ProblemInstance,
        allocation: Allocation,
        elapsed: Duration,
        counters: Counters,
    ) -> Self {
        let expected_reward =
            expected_reward(inst, &allocation).expect("solver allocation must match its instance");
        SolveReport {
            algorithm: algorithm.into(),
            allocation,
            expected_reward,
            elapsed_secs: elapsed.as_secs_f64(),
            counters,
        }
    }

    pub fn size(&self) -> usize {
        self.allocation.len()
    }
}

/// Optional wall-clock cutoff, checked cooperatively inside solver loops.
#[derive(Debug, Clone, Copy, Default)]
pub struct Deadline(Option<Instant>);

impl Deadline {
    pub fn none() -> Self {
        Deadline(None)
    }

    pub fn after(limit: Duration) -> Self {
        Deadline(Instant::now().checked_add(limit))
    }

    pub fn at(instant: Instant) -> Self {
        Deadline(Some(instant))
    }

    pub fn check(&self) -> Result<(), SolveError> {
        match self.0 {
            Some(t) if Instant::now() >= t => Err(SolveError::Timeout),
            _ => Ok(()),
        }
    }
}

/// Runs `body` and wraps its allocation into a report with timing.
pub(crate) fn timed<F>(name: &str, inst: &ProblemInstance, body: F) -> Result<SolveReport, SolveError>
where
    F: FnOnce() -> Result<(Allocation, Counters), SolveError>,
{
    let start = Instant::now();
    let (alloc, counters) = body()?;
    let elapsed = start.elapsed();
    Ok(SolveReport::new(name, inst, alloc, elapsed, counters))
}
