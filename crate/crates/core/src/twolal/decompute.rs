//! The two reversible ways to finish an element's cycle once its output has
//! been driven:
//!
//! 1. ramp the inputs back to 0, which switches the element's gates off with
//!    no differential and leaves `Q` latched, floating at its value;
//! 2. ramp the drive back to 0, which pulls `Q` down through the still-on
//!    gates and leaves the inputs free to change afterwards.
//!
//! Option 2 is only clean if nothing downstream is still being driven from
//! `Q`; otherwise the downstream gates switch off under a moving rail and the
//! simulator reports it.

use super::circuit::{ElementId, TwoLalCircuit};
use super::clock::{ClockSchedule, Transition};
use super::SimError;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DecomputeOption {
    /// Restore the inputs, latch the output.
    Inputs,
    /// Restore the drive, decomputing the output.
    Drive,
}

impl TryFrom<u8> for DecomputeOption {
    type Error = SimError;

    fn try_from(v: u8) -> Result<Self, SimError> {
        match v {
            1 => Ok(Self::Inputs),
            2 => Ok(Self::Drive),
            _ => Err(SimError::Build(format!(
                "decompute option must be 1 or 2, got {v}"
            ))),
        }
    }
}

/// Program the chosen continuation into `interval` of the element's
/// (sequence) drivers.
pub fn decompute_cycle(
    circuit: &TwoLalCircuit,
    schedule: &mut ClockSchedule,
    element: ElementId,
    option: DecomputeOption,
    interval: usize,
) -> Result<(), SimError> {
    let el = circuit
        .elements()
        .get(element.0)
        .ok_or_else(|| SimError::Build(format!("no element {}", element.0)))?;
    let targets = match option {
        DecomputeOption::Inputs => el.inputs.clone(),
        DecomputeOption::Drive => vec![el.drive],
    };
    for s in targets {
        schedule
            .set_transition(s, interval, Transition::Ramp(0.0))
            .map_err(|_| {
                SimError::Build(format!(
                    "signal `{}` is not directly driven, cannot schedule its restore",
                    circuit.signal(s).name
                ))
            })?;
    }
    Ok(())
}
