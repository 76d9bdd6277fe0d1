//! The gate library and its bit-level semantics.
//!
//! A [`Gate`] is a kind, a wiring (variable indices) and a direction. It acts
//! on a [`BitState`] directly, so it can be applied to registers wider than
//! the enumerable cap; [`Gate::to_op`] tabulates it into a [`ConditionedOp`].
//!
//! Wiring conventions (targets last):
//!
//! | kind            | wiring              | forward map                       | precondition      |
//! |-----------------|---------------------|-----------------------------------|-------------------|
//! | `NOT`           | `t`                 | `t ← ¬t`                          | none              |
//! | `CNOT`          | `c t`               | `t ← t ⊕ c`                       | none              |
//! | `TOFFOLI`       | `c1 c2 t`           | `t ← t ⊕ (c1 ∧ c2)`               | none              |
//! | `FREDKIN`       | `c x y`             | swap `x, y` when `c`              | none              |
//! | `ERASE`         | `t`                 | `t ← 0`                           | none              |
//! | `OVERWRITE_OR`  | `a b t`             | `t ← a ∨ b`                       | none              |
//! | `OVERWRITE_AND` | `a b t`             | `t ← a ∧ b`                       | none              |
//! | `REV_OR`        | `a b t`             | `t ← a ∨ b`                       | `t = 0`           |
//! | `REV_AND`       | `a b t`             | `t ← a ∧ b`                       | `t = 0`           |
//! | `COPY`          | `s t`               | `t ← s`                           | `t = 0`           |
//! | `NCOPY`         | `s t`               | `t ← ¬s`                          | `t = 0`           |
//!
//! A forward conditioned gate writes the computed value regardless of the
//! target, so a state violating `t = 0` merges with the allowed state that
//! has the same sources. The inverse requires the target to hold the
//! computed value, clears it back to zero, and leaves other states alone.

use std::fmt;
use std::str::FromStr;

use super::op::{ConditionedOp, Precondition};
use super::state::{BitState, StateSpace};
use super::GrcError;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum GateKind {
    Not,
    Cnot,
    Toffoli,
    Fredkin,
    Erase,
    OverwriteOr,
    OverwriteAnd,
    RevOr,
    RevAnd,
    Copy,
    /// Copy the negation of the source into a zero target. One step in a
    /// compiled schedule.
    NCopy,
}

impl GateKind {
    pub const ALL: [GateKind; 11] = [
        GateKind::Not,
        GateKind::Cnot,
        GateKind::Toffoli,
        GateKind::Fredkin,
        GateKind::Erase,
        GateKind::OverwriteOr,
        GateKind::OverwriteAnd,
        GateKind::RevOr,
        GateKind::RevAnd,
        GateKind::Copy,
        GateKind::NCopy,
    ];

    pub fn arity(self) -> usize {
        match self {
            GateKind::Not | GateKind::Erase => 1,
            GateKind::Cnot | GateKind::Copy | GateKind::NCopy => 2,
            _ => 3,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            GateKind::Not => "NOT",
            GateKind::Cnot => "CNOT",
            GateKind::Toffoli => "TOFFOLI",
            GateKind::Fredkin => "FREDKIN",
            GateKind::Erase => "ERASE",
            GateKind::OverwriteOr => "OVERWRITE_OR",
            GateKind::OverwriteAnd => "OVERWRITE_AND",
            GateKind::RevOr => "REV_OR",
            GateKind::RevAnd => "REV_AND",
            GateKind::Copy => "COPY",
            GateKind::NCopy => "NCOPY",
        }
    }

    /// Bijections on the full space that are their own inverse.
    pub fn is_self_inverse(self) -> bool {
        matches!(
            self,
            GateKind::Not | GateKind::Cnot | GateKind::Toffoli | GateKind::Fredkin
        )
    }

    /// Gates whose forward precondition is "target initially 0".
    pub fn is_conditioned(self) -> bool {
        matches!(
            self,
            GateKind::RevOr | GateKind::RevAnd | GateKind::Copy | GateKind::NCopy
        )
    }

    /// Value a conditioned gate writes into its target.
    fn computed(self, state: &BitState, wiring: &[usize]) -> bool {
        match self {
            GateKind::RevOr | GateKind::OverwriteOr => state.get(wiring[0]) || state.get(wiring[1]),
            GateKind::RevAnd | GateKind::OverwriteAnd => {
                state.get(wiring[0]) && state.get(wiring[1])
            }
            GateKind::Copy => state.get(wiring[0]),
            GateKind::NCopy => !state.get(wiring[0]),
            _ => unreachable!("{} has no computed target value", self.name()),
        }
    }
}

impl fmt::Display for GateKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for GateKind {
    type Err = GrcError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        GateKind::ALL
            .into_iter()
            .find(|k| k.name().eq_ignore_ascii_case(s))
            .ok_or_else(|| GrcError::Wiring(format!("unknown gate kind `{s}`")))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Direction {
    Forward,
    Inverse,
}

impl Direction {
    pub fn flip(self) -> Self {
        match self {
            Direction::Forward => Direction::Inverse,
            Direction::Inverse => Direction::Forward,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Direction::Forward => "fwd",
            Direction::Inverse => "inv",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Gate {
    kind: GateKind,
    wiring: Vec<usize>,
    direction: Direction,
}

impl Gate {
    pub fn new(kind: GateKind, wiring: Vec<usize>) -> Result<Self, GrcError> {
        if wiring.len() != kind.arity() {
            return Err(GrcError::Wiring(format!(
                "{kind} takes {} variables, got {}",
                kind.arity(),
                wiring.len()
            )));
        }
        for (i, a) in wiring.iter().enumerate() {
            if wiring[..i].contains(a) {
                return Err(GrcError::Wiring(format!(
                    "{kind} wiring uses variable {a} twice"
                )));
            }
        }
        Ok(Self {
            kind,
            wiring,
            direction: Direction::Forward,
        })
    }

    pub fn kind(&self) -> GateKind {
        self.kind
    }

    pub fn wiring(&self) -> &[usize] {
        &self.wiring
    }

    pub fn direction(&self) -> Direction {
        self.direction
    }

    pub fn target(&self) -> usize {
        *self.wiring.last().expect("wiring is never empty")
    }

    /// The inverse gate. Erasing and overwriting gates have none.
    pub fn inverse(&self) -> Result<Self, GrcError> {
        match self.kind {
            GateKind::Erase | GateKind::OverwriteOr | GateKind::OverwriteAnd => {
                Err(GrcError::NotInvertible(self.kind.name()))
            }
            k if k.is_self_inverse() => Ok(self.clone()),
            _ => Ok(Self {
                direction: self.direction.flip(),
                ..self.clone()
            }),
        }
    }

    pub fn with_direction(mut self, direction: Direction) -> Result<Self, GrcError> {
        if direction == Direction::Inverse
            && !self.kind.is_conditioned()
            && !self.kind.is_self_inverse()
        {
            return Err(GrcError::NotInvertible(self.kind.name()));
        }
        if !self.kind.is_self_inverse() {
            self.direction = direction;
        }
        Ok(self)
    }

    pub fn max_variable(&self) -> usize {
        *self.wiring.iter().max().expect("wiring is never empty")
    }

    fn check_width(&self, width: usize) -> Result<(), GrcError> {
        if self.max_variable() >= width {
            return Err(GrcError::Wiring(format!(
                "{} wiring {:?} out of range for width {width}",
                self.kind, self.wiring
            )));
        }
        Ok(())
    }

    /// Whether `state` satisfies this gate's precondition.
    pub fn allows(&self, state: &BitState) -> bool {
        if !self.kind.is_conditioned() {
            return true;
        }
        let target = state.get(self.target());
        match self.direction {
            Direction::Forward => !target,
            Direction::Inverse => target == self.kind.computed(state, &self.wiring),
        }
    }

    /// Total map. Forward conditioned gates write the computed value whatever
    /// the target held, so violating states merge with allowed ones; inverse
    /// gates are the identity outside their precondition.
    pub fn apply(&self, state: &BitState) -> BitState {
        let w = &self.wiring;
        let mut out = *state;
        match self.kind {
            GateKind::Not => out.set(w[0], !state.get(w[0])),
            GateKind::Cnot => out.set(w[1], state.get(w[1]) ^ state.get(w[0])),
            GateKind::Toffoli => {
                out.set(w[2], state.get(w[2]) ^ (state.get(w[0]) && state.get(w[1])))
            }
            GateKind::Fredkin => {
                if state.get(w[0]) {
                    out.set(w[1], state.get(w[2]));
                    out.set(w[2], state.get(w[1]));
                }
            }
            GateKind::Erase => out.set(w[0], false),
            GateKind::OverwriteOr | GateKind::OverwriteAnd => {
                out.set(w[2], self.kind.computed(state, w))
            }
            GateKind::RevOr | GateKind::RevAnd | GateKind::Copy | GateKind::NCopy => {
                match self.direction {
                    Direction::Forward => out.set(self.target(), self.kind.computed(state, w)),
                    Direction::Inverse => {
                        if self.allows(state) {
                            out.set(self.target(), false);
                        }
                    }
                }
            }
        }
        out
    }

    /// Tabulate over `space`.
    pub fn to_op(&self, space: StateSpace) -> Result<ConditionedOp, GrcError> {
        self.check_width(space.width())?;
        let table: Vec<u32> = space
            .states()
            .map(|s| self.apply(&s).value() as u32)
            .collect();
        let allowed: Vec<bool> = space.states().map(|s| self.allows(&s)).collect();
        ConditionedOp::new(space, table, Precondition::new(space, allowed)?)
    }
}

impl fmt::Display for Gate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.kind)?;
        for v in &self.wiring {
            write!(f, " {v}")?;
        }
        write!(f, " {}", self.direction.name())
    }
}

/// Build the standard transition table of a library gate on `space`.
pub fn make_gate(
    kind: GateKind,
    wiring: &[usize],
    space: StateSpace,
) -> Result<ConditionedOp, GrcError> {
    Gate::new(kind, wiring.to_vec())?.to_op(space)
}
