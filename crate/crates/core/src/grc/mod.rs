//! Digital state spaces, distributions and conditioned reversible operations.
//!
//! An operation is a total map on a finite state space plus a precondition.
//! It ejects no information from a distribution exactly when it merges no two
//! states that the distribution gives positive mass; states outside the
//! precondition are irrelevant once they have probability zero.

mod distribution;
pub mod format;
mod gates;
mod op;
mod state;

use thiserror::Error;

pub use distribution::{entropy, Distribution, MASS_TOLERANCE};
pub use gates::{make_gate, Direction, Gate, GateKind};
pub use op::{
    classify, compose, information_loss, pushforward, verify_no_merge, ConditionedOp, LossReport,
    MergeVerdict, MergeWitness, Precondition, ReversibilityClass, LOSS_TOLERANCE,
};
pub use state::{BitState, StateSpace, MAX_WIDTH};

use crate::energy::EnergyError;

#[derive(Debug, Clone, Error, PartialEq)]
pub enum GrcError {
    #[error("state width {0} outside 1..={MAX_WIDTH}")]
    WidthOutOfRange(usize),
    #[error("operands live in different state spaces")]
    SpaceMismatch,
    #[error("invalid distribution: {0}")]
    InvalidDistribution(String),
    #[error("invalid transition table: {0}")]
    InvalidTable(String),
    #[error("precondition allows no state")]
    EmptyPrecondition,
    #[error("cannot compose an empty sequence")]
    EmptySequence,
    #[error("bad wiring: {0}")]
    Wiring(String),
    #[error("{0} has no inverse")]
    NotInvertible(&'static str),
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },
    #[error("negative information loss {0} bits")]
    NegativeLoss(f64),
    #[error(transparent)]
    Energy(#[from] EnergyError),
}
