use std::collections::HashMap;
use std::fmt;

use serde::Serialize;

use super::dag::{evaluate_dag, GateDag};
use super::schedule::{execute_schedule, ReversibleSchedule, ScheduleError};
use crate::grc::{BitState, MAX_WIDTH};

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub enum Failure {
    PreconditionViolated { step: usize, state: String },
    OutputMismatch { expected: String, got: String },
    AncillaNotZero { ancillas: String },
    Merged { other_input: String, state: String },
}

impl fmt::Display for Failure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Failure::PreconditionViolated { step, state } => {
                write!(f, "precondition violated at step {step} in state {state}")
            }
            Failure::OutputMismatch { expected, got } => {
                write!(f, "outputs {got}, expected {expected}")
            }
            Failure::AncillaNotZero { ancillas } => write!(f, "ancillas end as {ancillas}"),
            Failure::Merged { other_input, state } => {
                write!(
                    f,
                    "final state {state} also reached from input {other_input}"
                )
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Counterexample {
    pub input: String,
    pub failure: Failure,
}

/// Outcome of exhaustive schedule verification. Each flag covers every
/// primary input; the first counterexample found is kept.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct VerifyReport {
    pub inputs_checked: usize,
    pub outputs_match: bool,
    pub ancillas_clean: bool,
    pub preconditions_hold: bool,
    pub injective: bool,
    pub counterexample: Option<Counterexample>,
}

impl VerifyReport {
    pub fn passed(&self) -> bool {
        self.outputs_match && self.ancillas_clean && self.preconditions_hold && self.injective
    }
}

impl fmt::Display for VerifyReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mark = |ok: bool| if ok { "ok" } else { "FAIL" };
        writeln!(f, "inputs checked: {}", self.inputs_checked)?;
        writeln!(f, "outputs match:      {}", mark(self.outputs_match))?;
        writeln!(f, "ancillas clean:     {}", mark(self.ancillas_clean))?;
        writeln!(f, "preconditions hold: {}", mark(self.preconditions_hold))?;
        writeln!(f, "injective:          {}", mark(self.injective))?;
        if let Some(c) = &self.counterexample {
            writeln!(f, "counterexample: input {}: {}", c.input, c.failure)?;
        }
        write!(f, "verify {}", if self.passed() { "PASS" } else { "FAIL" })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum VerifyError {
    #[error("schedule is {0} bits wide; exhaustive verification is capped at {MAX_WIDTH}")]
    WidthCapExceeded(usize),
    #[error("schedule has {schedule} primary inputs, DAG has {dag}")]
    InputMismatch { schedule: usize, dag: usize },
    #[error("schedule has {schedule} result registers, DAG has {dag} outputs")]
    OutputMismatch { schedule: usize, dag: usize },
}

/// Run the schedule on `(x, 0, 0)` for every primary input `x` and check
/// outputs, ancilla cleanliness, preconditions and injectivity.
pub fn verify_schedule(
    schedule: &ReversibleSchedule,
    dag: &GateDag,
) -> Result<VerifyReport, VerifyError> {
    let layout = schedule.layout();
    if !layout.is_verifiable() {
        return Err(VerifyError::WidthCapExceeded(layout.width()));
    }
    if layout.inputs != dag.inputs().len() {
        return Err(VerifyError::InputMismatch {
            schedule: layout.inputs,
            dag: dag.inputs().len(),
        });
    }
    if layout.results != dag.outputs().len() {
        return Err(VerifyError::OutputMismatch {
            schedule: layout.results,
            dag: dag.outputs().len(),
        });
    }

    let mut report = VerifyReport {
        inputs_checked: 0,
        outputs_match: true,
        ancillas_clean: true,
        preconditions_hold: true,
        injective: true,
        counterexample: None,
    };
    let record = |report: &mut VerifyReport, input: &BitState, failure: Failure| {
        if report.counterexample.is_none() {
            report.counterexample = Some(Counterexample {
                input: input.to_string(),
                failure,
            });
        }
    };
    let mut seen: HashMap<BitState, BitState> = HashMap::new();
    let zero_ancillas = BitState::zeros(layout.ancillas);

    for x in 0..(1u64 << layout.inputs) {
        let input = BitState::new(layout.inputs, x);
        report.inputs_checked += 1;
        let start = layout.initial_state(&input);
        let end = match execute_schedule(schedule, &start) {
            Ok(end) => end,
            Err(ScheduleError::PreconditionViolated { step, state, .. }) => {
                report.preconditions_hold = false;
                record(
                    &mut report,
                    &input,
                    Failure::PreconditionViolated {
                        step,
                        state: state.to_string(),
                    },
                );
                continue;
            }
            Err(other) => unreachable!("layout-consistent execution failed: {other}"),
        };
        let expected = evaluate_dag(dag, &input).expect("input width matches the DAG");
        let got = layout.result_region(&end);
        if got != expected {
            report.outputs_match = false;
            record(
                &mut report,
                &input,
                Failure::OutputMismatch {
                    expected: expected.to_string(),
                    got: got.to_string(),
                },
            );
        }
        let ancillas = layout.ancilla_region(&end);
        if ancillas != zero_ancillas {
            report.ancillas_clean = false;
            record(
                &mut report,
                &input,
                Failure::AncillaNotZero {
                    ancillas: ancillas.to_string(),
                },
            );
        }
        if let Some(other) = seen.insert(end, input) {
            report.injective = false;
            record(
                &mut report,
                &input,
                Failure::Merged {
                    other_input: other.to_string(),
                    state: end.to_string(),
                },
            );
        }
    }
    Ok(report)
}
