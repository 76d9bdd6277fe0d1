//! Compute / copy / decompute embedding of a gate DAG.
//!
//! Register layout is `[primary inputs | one ancilla per gate | one result
//! register per output]`. The forward phase writes each gate's value into its
//! own zero ancilla, the copy phase copies every output into a zero result
//! register, and the reverse phase runs the forward steps backwards so every
//! ancilla returns to zero. The composite sends `(x, 0, 0)` to
//! `(x, 0, f(x))` in `2·G + M` steps.

use std::fmt::{self, Write as _};

use thiserror::Error;

use super::dag::{GateDag, GateOp, Signal};
use crate::grc::{BitState, Direction, Gate, GateKind, GrcError, MAX_WIDTH};

/// Widest register a schedule may address.
pub const MAX_SCHEDULE_WIDTH: usize = 64;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Layout {
    pub inputs: usize,
    pub ancillas: usize,
    pub results: usize,
}

impl Layout {
    pub fn width(&self) -> usize {
        self.inputs + self.ancillas + self.results
    }

    pub fn ancilla(&self, gate: usize) -> usize {
        self.inputs + gate
    }

    pub fn result(&self, output: usize) -> usize {
        self.inputs + self.ancillas + output
    }

    /// `(x, 0, 0)` for a primary input `x`.
    pub fn initial_state(&self, input: &BitState) -> BitState {
        let mut bits = input.bits();
        bits.resize(self.width(), false);
        BitState::from_bits(&bits)
    }

    pub fn input_region(&self, state: &BitState) -> BitState {
        state.slice(0, self.inputs)
    }

    pub fn ancilla_region(&self, state: &BitState) -> BitState {
        state.slice(self.inputs, self.ancillas)
    }

    pub fn result_region(&self, state: &BitState) -> BitState {
        state.slice(self.inputs + self.ancillas, self.results)
    }

    /// Exhaustive verification is possible.
    pub fn is_verifiable(&self) -> bool {
        self.width() <= MAX_WIDTH
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ReversibleSchedule {
    layout: Layout,
    steps: Vec<Gate>,
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum ScheduleError {
    #[error("step {step}: precondition of `{gate}` violated by state {state}")]
    PreconditionViolated {
        /// 1-based.
        step: usize,
        gate: String,
        state: BitState,
    },
    #[error("state has {got} bits, schedule needs {expected}")]
    WidthMismatch { expected: usize, got: usize },
    #[error("schedule needs {0} bits, more than {MAX_SCHEDULE_WIDTH}")]
    TooWide(usize),
    #[error("step {step} addresses variable {variable} outside the register")]
    OutOfRange { step: usize, variable: usize },
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },
    #[error(transparent)]
    Gate(#[from] GrcError),
}

impl ReversibleSchedule {
    pub fn new(layout: Layout, steps: Vec<Gate>) -> Result<Self, ScheduleError> {
        if layout.width() > MAX_SCHEDULE_WIDTH {
            return Err(ScheduleError::TooWide(layout.width()));
        }
        for (i, g) in steps.iter().enumerate() {
            if g.max_variable() >= layout.width() {
                return Err(ScheduleError::OutOfRange {
                    step: i + 1,
                    variable: g.max_variable(),
                });
            }
        }
        Ok(Self { layout, steps })
    }

    pub fn layout(&self) -> Layout {
        self.layout
    }

    pub fn steps(&self) -> &[Gate] {
        &self.steps
    }

    pub fn len(&self) -> usize {
        self.steps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.steps.is_empty()
    }

    /// Steps reversed, each replaced by its inverse.
    pub fn inverse(&self) -> Result<Self, ScheduleError> {
        let steps = self
            .steps
            .iter()
            .rev()
            .map(|g| g.inverse())
            .collect::<Result<Vec<_>, _>>()?;
        Ok(Self {
            layout: self.layout,
            steps,
        })
    }

    /// A copy with steps replaced, for building mutants in tests and tools.
    pub fn with_steps(&self, steps: Vec<Gate>) -> Result<Self, ScheduleError> {
        Self::new(self.layout, steps)
    }
}

/// Compile a DAG into its Bennett embedding. Schedules wider than
/// [`MAX_WIDTH`] are still produced but cannot be verified exhaustively.
pub fn bennett_embed(dag: &GateDag) -> Result<ReversibleSchedule, ScheduleError> {
    let layout = Layout {
        inputs: dag.inputs().len(),
        ancillas: dag.gate_count(),
        results: dag.outputs().len(),
    };
    if layout.width() > MAX_SCHEDULE_WIDTH {
        return Err(ScheduleError::TooWide(layout.width()));
    }
    let var = |s: Signal| match s {
        Signal::Input(i) => i,
        Signal::Node(n) => layout.ancilla(n),
    };
    let mut forward = Vec::with_capacity(dag.gate_count());
    for (i, node) in dag.nodes().iter().enumerate() {
        let target = layout.ancilla(i);
        let gate = match node.op {
            // x AND x = x OR x = x
            GateOp::And | GateOp::Or if node.operands[0] == node.operands[1] => {
                Gate::new(GateKind::Copy, vec![var(node.operands[0]), target])
            }
            GateOp::And => Gate::new(
                GateKind::RevAnd,
                vec![var(node.operands[0]), var(node.operands[1]), target],
            ),
            GateOp::Or => Gate::new(
                GateKind::RevOr,
                vec![var(node.operands[0]), var(node.operands[1]), target],
            ),
            GateOp::Not => Gate::new(GateKind::NCopy, vec![var(node.operands[0]), target]),
        }?;
        forward.push(gate);
    }
    let mut steps = forward.clone();
    for (j, out) in dag.outputs().iter().enumerate() {
        steps.push(Gate::new(
            GateKind::Copy,
            vec![var(*out), layout.result(j)],
        )?);
    }
    for g in forward.iter().rev() {
        steps.push(g.inverse()?);
    }
    ReversibleSchedule::new(layout, steps)
}

/// Apply every step in order, checking each precondition on the way.
pub fn execute_schedule(
    schedule: &ReversibleSchedule,
    state: &BitState,
) -> Result<BitState, ScheduleError> {
    let width = schedule.layout.width();
    if state.width() != width {
        return Err(ScheduleError::WidthMismatch {
            expected: width,
            got: state.width(),
        });
    }
    let mut current = *state;
    for (i, gate) in schedule.steps.iter().enumerate() {
        if !gate.allows(&current) {
            return Err(ScheduleError::PreconditionViolated {
                step: i + 1,
                gate: gate.to_string(),
                state: current,
            });
        }
        current = gate.apply(&current);
    }
    Ok(current)
}

/// Serialized form:
///
/// ```text
/// layout <inputs> <ancillas> <results>
/// step 1 REV_AND 0 1 2 fwd
/// step 2 COPY 2 3 fwd
/// step 3 REV_AND 0 1 2 inv
/// ```
impl fmt::Display for ReversibleSchedule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let l = self.layout;
        writeln!(f, "layout {} {} {}", l.inputs, l.ancillas, l.results)?;
        for (i, g) in self.steps.iter().enumerate() {
            let mut line = format!("step {} {}", i + 1, g.kind());
            for v in g.wiring() {
                let _ = write!(line, " {v}");
            }
            writeln!(f, "{line} {}", g.direction().name())?;
        }
        Ok(())
    }
}

pub fn parse_schedule(text: &str) -> Result<ReversibleSchedule, ScheduleError> {
    let perr = |line: usize, message: String| ScheduleError::Parse { line, message };
    let mut layout = None;
    let mut steps = Vec::new();
    for (n, raw) in text.lines().enumerate() {
        let line = n + 1;
        let content = raw.split('#').next().unwrap_or("").trim();
        if content.is_empty() {
            continue;
        }
        let tokens: Vec<&str> = content.split_whitespace().collect();
        let num = |t: &str| {
            t.parse::<usize>()
                .map_err(|_| perr(line, format!("bad number `{t}`")))
        };
        match tokens.as_slice() {
            ["layout", a, b, c] if layout.is_none() => {
                layout = Some(Layout {
                    inputs: num(a)?,
                    ancillas: num(b)?,
                    results: num(c)?,
                });
            }
            ["step", index, kind, rest @ ..] if layout.is_some() && !rest.is_empty() => {
                if num(index)? != steps.len() + 1 {
                    return Err(perr(line, format!("expected step {}", steps.len() + 1)));
                }
                let kind: GateKind = kind
                    .parse()
                    .map_err(|e: GrcError| perr(line, e.to_string()))?;
                let (dir, wires) = rest.split_last().expect("rest is non-empty");
                let direction = match *dir {
                    "fwd" => Direction::Forward,
                    "inv" => Direction::Inverse,
                    other => return Err(perr(line, format!("expected fwd|inv, found `{other}`"))),
                };
                let wiring = wires
                    .iter()
                    .map(|w| num(w))
                    .collect::<Result<Vec<_>, _>>()?;
                let gate = Gate::new(kind, wiring)
                    .and_then(|g| g.with_direction(direction))
                    .map_err(|e| perr(line, e.to_string()))?;
                steps.push(gate);
            }
            _ => return Err(perr(line, format!("unrecognized line `{content}`"))),
        }
    }
    let layout = layout.ok_or_else(|| perr(0, "missing `layout` header".into()))?;
    ReversibleSchedule::new(layout, steps)
}
