use thiserror::Error;

use crate::instance::Violation;

#[derive(Debug, Error)]
pub enum InstanceError {
    #[error("invalid instance: {}", join(.0))]
    Invalid(Vec<Violation>),
}

fn join(v: &[Violation]) -> String {
    v.iter().map(ToString::to_string).collect::<Vec<_>>().join("; ")
}

#[derive(Debug, Error, PartialEq)]
pub enum AllocationError {
    #[error("slot {slot} is assigned more than once")]
    SlotReused { slot: usize },
    #[error("ad {ad} is assigned more than once in matching mode")]
    AdReused { ad: usize },
    #[error("no edge ({ad}, {slot}) in the instance")]
    MissingEdge { ad: usize, slot: usize },
    #[error("reward of ({ad}, {slot}) does not match the instance")]
    RewardMismatch { ad: usize, slot: usize },
    #[error("slot index {slot} out of range 0..={num_slots}")]
    SlotOutOfRange { slot: usize, num_slots: usize },
}

#[derive(Debug, Error)]
pub enum ParseError {
    #[error("line {line}: {message}")]
    Syntax { line: usize, message: String },
    #[error(transparent)]
    Instance(#[from] InstanceError),
    #[error(transparent)]
    Allocation(#[from] AllocationError),
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

#[derive(Debug, Error, PartialEq)]
pub enum FlowError {
    #[error("arc {arc} is a self-loop")]
    SelfLoop { arc: usize },
    #[error("arc {arc} references node {node} outside 0..{nodes}")]
    NodeOutOfRange { arc: usize, node: usize, nodes: usize },
    #[error("source and sink coincide")]
    SourceIsSink,
    #[error("arc {arc} has a non-finite cost")]
    NonFiniteCost { arc: usize },
    #[error("network contains a negative-cost cycle")]
    NegativeCycle,
}

/// Failures of a solver run. Degenerate inputs are not failures.
#[derive(Debug, Error, PartialEq)]
pub enum SolveError {
    #[error("exhaustive search refused: {0}")]
    GuardExceeded(String),
    #[error("time limit exceeded")]
    Timeout,
    #[error("unknown algorithm '{0}'")]
    UnknownAlgorithm(String),
}

#[derive(Debug, Error)]
pub enum ConfigError {
    #[error("line {line}: {message}")]
    Syntax { line: usize, message: String },
    #[error("invalid value for '{key}': {message}")]
    Value { key: String, message: String },
    #[error("missing required key '{0}'")]
    Missing(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
    #[error(transparent)]
    Instance(#[from] InstanceError),
}
