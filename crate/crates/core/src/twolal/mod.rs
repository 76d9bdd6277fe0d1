//! Switch-level simulation of two-level adiabatic logic (2LAL): dual-rail
//! signals, transmission gates, phased ramp drivers, detection of
//! non-adiabatic events and a per-event energy ledger.

mod circuit;
mod clock;
mod decompute;
mod format;
mod ledger;
mod shift_register;
mod sim;

pub use circuit::{
    DualRailSignal, Element, ElementId, ElementKind, NodeId, Polarity, Rail, SignalId,
    TransmissionGate, TwoLalCircuit,
};
pub use clock::{
    phase_clock, ClockSchedule, Driver, Transition, Waveform, DEFAULT_INTERVALS_PER_CYCLE,
    DEFAULT_TICKS_PER_INTERVAL,
};
pub use decompute::{decompute_cycle, DecomputeOption};
pub use format::{parse_circuit, parse_trace_csv, write_trace_csv, CircuitDocument, TRACE_HEADER};
pub use ledger::{
    energy_summary, AdiabaticEvent, EnergyLedger, EnergySummary, ViolationKind, ViolationReport,
};
pub use shift_register::{
    build_shift_register, build_shift_register_with, pure_delay, ShiftRegister, CELLS_PER_STAGE,
};
pub use sim::{simulate, RailMode, Sample, SimulationResult, Simulator, TraceRow};

use crate::energy::EnergyError;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum SimError {
    #[error("invalid circuit: {0}")]
    Build(String),
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },
    #[error("tick {tick}: drivers fight in one conducting net ({first} vs {second})")]
    LevelConflict {
        tick: u64,
        first: String,
        second: String,
    },
    #[error("energy summary needs at least one completed cycle")]
    ZeroCycles,
    #[error(transparent)]
    Energy(#[from] EnergyError),
}
