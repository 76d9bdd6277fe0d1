//! Compilation of irreversible gate netlists into reversible schedules, and
//! the reversible pebble game behind the space/time tradeoff.

mod dag;
mod pebble;
mod schedule;
mod verify;

pub use dag::{
    evaluate_dag, parse_dag, DagError, DagNode, GateDag, GateOp, ParseErrorKind, Signal,
};
pub use pebble::{
    check_legality, pebble_bennett_recursive, pebble_exhaustive, PebbleError, PebbleMove,
    PebbleStrategy, Replay, MAX_EXHAUSTIVE_CHAIN,
};
pub use schedule::{
    bennett_embed, execute_schedule, parse_schedule, Layout, ReversibleSchedule, ScheduleError,
    MAX_SCHEDULE_WIDTH,
};
pub use verify::{verify_schedule, Counterexample, Failure, VerifyError, VerifyReport};
