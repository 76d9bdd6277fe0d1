use std::fmt;

use serde::Serialize;

use super::distribution::{entropy, Distribution};
use super::state::{BitState, StateSpace};
use super::GrcError;
use crate::energy;

/// Loss below this (in bits) is an entropy bug, not rounding.
pub const LOSS_TOLERANCE: f64 = 1e-12;

/// The set of initial states an operation is designed for.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Precondition {
    space: StateSpace,
    allowed: Vec<bool>,
}

impl Precondition {
    pub fn new(space: StateSpace, allowed: Vec<bool>) -> Result<Self, GrcError> {
        if allowed.len() != space.size() {
            return Err(GrcError::SpaceMismatch);
        }
        if !allowed.iter().any(|a| *a) {
            return Err(GrcError::EmptyPrecondition);
        }
        Ok(Self { space, allowed })
    }

    pub fn full(space: StateSpace) -> Self {
        Self {
            space,
            allowed: vec![true; space.size()],
        }
    }

    pub fn from_predicate(
        space: StateSpace,
        predicate: impl Fn(BitState) -> bool,
    ) -> Result<Self, GrcError> {
        Self::new(space, space.states().map(predicate).collect())
    }

    pub fn space(&self) -> StateSpace {
        self.space
    }

    pub fn allows(&self, state: BitState) -> bool {
        self.allowed[state.index()]
    }

    pub fn is_full(&self) -> bool {
        self.allowed.iter().all(|a| *a)
    }

    pub fn allowed_states(&self) -> impl Iterator<Item = BitState> + '_ {
        self.space.states().filter(|s| self.allowed[s.index()])
    }

    pub fn count(&self) -> usize {
        self.allowed.iter().filter(|a| **a).count()
    }
}

/// A total deterministic map on a state space plus the precondition under
/// which it is meant to run.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConditionedOp {
    space: StateSpace,
    table: Vec<u32>,
    precondition: Precondition,
}

impl ConditionedOp {
    pub fn new(
        space: StateSpace,
        table: Vec<u32>,
        precondition: Precondition,
    ) -> Result<Self, GrcError> {
        if table.len() != space.size() || precondition.space != space {
            return Err(GrcError::SpaceMismatch);
        }
        if let Some(bad) = table.iter().find(|t| **t as usize >= space.size()) {
            return Err(GrcError::InvalidTable(format!(
                "image {bad} outside a {}-bit space",
                space.width()
            )));
        }
        Ok(Self {
            space,
            table,
            precondition,
        })
    }

    /// Build from a function, unconditioned.
    pub fn from_fn(
        space: StateSpace,
        map: impl Fn(BitState) -> BitState,
    ) -> Result<Self, GrcError> {
        let table = space.states().map(|s| map(s).value() as u32).collect();
        Self::new(space, table, Precondition::full(space))
    }

    pub fn identity(space: StateSpace) -> Self {
        Self {
            space,
            table: (0..space.size() as u32).collect(),
            precondition: Precondition::full(space),
        }
    }

    pub fn with_precondition(mut self, precondition: Precondition) -> Result<Self, GrcError> {
        if precondition.space != self.space {
            return Err(GrcError::SpaceMismatch);
        }
        self.precondition = precondition;
        Ok(self)
    }

    pub fn space(&self) -> StateSpace {
        self.space
    }

    pub fn precondition(&self) -> &Precondition {
        &self.precondition
    }

    pub fn table(&self) -> &[u32] {
        &self.table
    }

    pub fn apply(&self, state: BitState) -> BitState {
        self.space.state(self.table[state.index()] as usize)
    }

    /// Whether the map merges no two states accepted by `keep`. Returns the
    /// first merged pair found otherwise.
    fn find_merge(&self, keep: impl Fn(usize) -> bool) -> Option<MergeWitness> {
        let mut first_preimage: Vec<u32> = vec![u32::MAX; self.space.size()];
        for (i, &image) in self.table.iter().enumerate() {
            if !keep(i) {
                continue;
            }
            let slot = &mut first_preimage[image as usize];
            if *slot != u32::MAX {
                return Some(MergeWitness {
                    first: self.space.state(*slot as usize),
                    second: self.space.state(i),
                    image: self.space.state(image as usize),
                });
            }
            *slot = i as u32;
        }
        None
    }

    pub fn is_bijective(&self) -> bool {
        self.find_merge(|_| true).is_none()
    }

    pub fn is_injective_on_precondition(&self) -> bool {
        self.find_merge(|i| self.precondition.allowed[i]).is_none()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum ReversibilityClass {
    UnconditionallyReversible,
    ConditionallyReversible,
    Irreversible,
}

impl fmt::Display for ReversibilityClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            ReversibilityClass::UnconditionallyReversible => "UnconditionallyReversible",
            ReversibilityClass::ConditionallyReversible => "ConditionallyReversible",
            ReversibilityClass::Irreversible => "Irreversible",
        })
    }
}

pub fn classify(op: &ConditionedOp) -> ReversibilityClass {
    if op.is_bijective() {
        ReversibilityClass::UnconditionallyReversible
    } else if op.is_injective_on_precondition() {
        ReversibilityClass::ConditionallyReversible
    } else {
        ReversibilityClass::Irreversible
    }
}

/// Two distinct states sent to the same image.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct MergeWitness {
    pub first: BitState,
    pub second: BitState,
    pub image: BitState,
}

impl fmt::Display for MergeWitness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "({}) -> {} and ({}) -> {}",
            self.first, self.image, self.second, self.image
        )
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MergeVerdict {
    NoMerge,
    Merged(MergeWitness),
}

impl MergeVerdict {
    pub fn is_no_merge(&self) -> bool {
        matches!(self, MergeVerdict::NoMerge)
    }
}

/// Checks that no two states with nonzero probability share an image.
pub fn verify_no_merge(op: &ConditionedOp, dist: &Distribution) -> Result<MergeVerdict, GrcError> {
    if op.space != dist.space() {
        return Err(GrcError::SpaceMismatch);
    }
    let mass = dist.mass();
    Ok(match op.find_merge(|i| mass[i] > 0.0) {
        None => MergeVerdict::NoMerge,
        Some(w) => MergeVerdict::Merged(w),
    })
}

/// Image distribution under the op's map.
pub fn pushforward(op: &ConditionedOp, dist: &Distribution) -> Result<Distribution, GrcError> {
    if op.space != dist.space() {
        return Err(GrcError::SpaceMismatch);
    }
    let mut mass = vec![0.0; op.space.size()];
    for (i, &p) in dist.mass().iter().enumerate() {
        if p > 0.0 {
            mass[op.table[i] as usize] += p;
        }
    }
    Ok(Distribution::from_parts_unchecked(op.space, mass))
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct LossReport {
    /// Bits.
    pub input_entropy: f64,
    /// Bits.
    pub output_entropy: f64,
    /// Bits of information ejected, `input_entropy - output_entropy`.
    pub loss: f64,
    /// Kelvin.
    pub temperature: Option<f64>,
    /// Joules.
    pub min_heat: Option<f64>,
}

pub fn information_loss(
    op: &ConditionedOp,
    dist: &Distribution,
    temperature: Option<f64>,
) -> Result<LossReport, GrcError> {
    let image = pushforward(op, dist)?;
    let input_entropy = entropy(dist);
    let output_entropy = entropy(&image);
    let loss = input_entropy - output_entropy;
    if loss < -LOSS_TOLERANCE {
        return Err(GrcError::NegativeLoss(loss));
    }
    let min_heat = match temperature {
        Some(t) => Some(loss * energy::landauer_limit(t)?),
        None => None,
    };
    Ok(LossReport {
        input_entropy,
        output_entropy,
        loss,
        temperature,
        min_heat,
    })
}

/// Sequential composition. The resulting precondition keeps exactly the
/// states for which every op in turn sees an allowed state.
pub fn compose(ops: &[ConditionedOp]) -> Result<ConditionedOp, GrcError> {
    let (first, rest) = ops.split_first().ok_or(GrcError::EmptySequence)?;
    let space = first.space;
    if rest.iter().any(|op| op.space != space) {
        return Err(GrcError::SpaceMismatch);
    }
    let mut table = first.table.clone();
    let mut allowed = first.precondition.allowed.clone();
    for op in rest {
        for (i, current) in table.iter_mut().enumerate() {
            allowed[i] &= op.precondition.allowed[*current as usize];
            *current = op.table[*current as usize];
        }
    }
    let precondition = Precondition::new(space, allowed)?;
    ConditionedOp::new(space, table, precondition)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::grc::gates::{make_gate, GateKind};

    fn space(w: usize) -> StateSpace {
        StateSpace::new(w).unwrap()
    }

    fn bits(s: &str) -> BitState {
        BitState::parse(s).unwrap()
    }

    /// Q <- A or B on (A, B, Q), merging freely.
    fn overwrite_or() -> ConditionedOp {
        make_gate(GateKind::OverwriteOr, &[0, 1, 2], space(3)).unwrap()
    }

    #[test]
    fn pushforward_identity_and_erase() {
        let d = Distribution::new(space(1), vec![0.3, 0.7]).unwrap();
        assert_eq!(
            pushforward(&ConditionedOp::identity(space(1)), &d).unwrap(),
            d
        );
        let erase = make_gate(GateKind::Erase, &[0], space(1)).unwrap();
        let out = pushforward(&erase, &Distribution::uniform(space(1))).unwrap();
        assert_eq!(out.mass(), &[1.0, 0.0]);
    }

    #[test]
    fn pushforward_overwrite_or() {
        let out = pushforward(&overwrite_or(), &Distribution::uniform(space(3))).unwrap();
        for s in space(3).states() {
            let expected = match s.to_string().as_str() {
                "000" | "011" | "101" | "111" => 0.25,
                _ => 0.0,
            };
            assert_eq!(out.probability(s), expected, "state {s}");
        }
    }

    #[test]
    fn pushforward_space_mismatch() {
        let d = Distribution::uniform(space(2));
        assert_eq!(
            pushforward(&overwrite_or(), &d),
            Err(GrcError::SpaceMismatch)
        );
    }

    #[test]
    fn erase_loss_and_heat() {
        let erase = make_gate(GateKind::Erase, &[0], space(1)).unwrap();
        let r = information_loss(&erase, &Distribution::uniform(space(1)), Some(300.0)).unwrap();
        assert_eq!(r.loss, 1.0);
        let heat = r.min_heat.unwrap();
        assert!(((heat - 2.8709e-21) / 2.8709e-21).abs() < 1e-4);
    }

    #[test]
    fn overwrite_or_loses_one_bit() {
        let r = information_loss(&overwrite_or(), &Distribution::uniform(space(3)), None).unwrap();
        assert_eq!(r.input_entropy, 3.0);
        assert_eq!(r.output_entropy, 2.0);
        assert_eq!(r.loss, 1.0);
        assert!(r.min_heat.is_none());
    }

    #[test]
    fn bad_temperature_is_an_error() {
        let erase = make_gate(GateKind::Erase, &[0], space(1)).unwrap();
        assert!(information_loss(&erase, &Distribution::uniform(space(1)), Some(0.0)).is_err());
    }

    #[test]
    fn no_merge_verdicts() {
        let rev_or = make_gate(GateKind::RevOr, &[0, 1, 2], space(3)).unwrap();
        let q_zero = Distribution::uniform_over(space(3), |s| !s.get(2)).unwrap();
        assert!(verify_no_merge(&rev_or, &q_zero).unwrap().is_no_merge());
        assert!(verify_no_merge(&overwrite_or(), &q_zero)
            .unwrap()
            .is_no_merge());

        let erase = make_gate(GateKind::Erase, &[0], space(1)).unwrap();
        match verify_no_merge(&erase, &Distribution::uniform(space(1))).unwrap() {
            MergeVerdict::Merged(w) => {
                assert_eq!(
                    (w.first, w.second, w.image),
                    (bits("0"), bits("1"), bits("0"))
                );
            }
            MergeVerdict::NoMerge => panic!("erase merges"),
        }
    }

    #[test]
    fn classification_examples() {
        let not = make_gate(GateKind::Not, &[0], space(1)).unwrap();
        assert_eq!(
            classify(&not),
            ReversibilityClass::UnconditionallyReversible
        );
        let rev_or = make_gate(GateKind::RevOr, &[0, 1, 2], space(3)).unwrap();
        assert_eq!(
            classify(&rev_or),
            ReversibilityClass::ConditionallyReversible
        );
        let erase = make_gate(GateKind::Erase, &[0], space(1)).unwrap();
        assert_eq!(classify(&erase), ReversibilityClass::Irreversible);
        assert_eq!(classify(&overwrite_or()), ReversibilityClass::Irreversible);
    }

    #[test]
    fn compose_involutions() {
        let not = make_gate(GateKind::Not, &[0], space(1)).unwrap();
        let twice = compose(&[not.clone(), not]).unwrap();
        assert_eq!(twice, ConditionedOp::identity(space(1)));

        let cnot = make_gate(GateKind::Cnot, &[0, 1], space(2)).unwrap();
        assert_eq!(
            compose(&[cnot.clone(), cnot]).unwrap(),
            ConditionedOp::identity(space(2))
        );
    }

    #[test]
    fn compose_rev_or_with_its_inverse() {
        let g = crate::grc::gates::Gate::new(GateKind::RevOr, vec![0, 1, 2]).unwrap();
        let fwd = g.to_op(space(3)).unwrap();
        let inv = g.inverse().unwrap().to_op(space(3)).unwrap();
        let both = compose(&[fwd, inv]).unwrap();
        let allowed: Vec<String> = both
            .precondition()
            .allowed_states()
            .map(|s| s.to_string())
            .collect();
        assert_eq!(allowed, ["000", "010", "100", "110"]);
        for s in both.precondition().allowed_states() {
            assert_eq!(both.apply(s), s);
        }
    }

    #[test]
    fn compose_errors() {
        assert_eq!(compose(&[]), Err(GrcError::EmptySequence));
        let a = ConditionedOp::identity(space(1));
        let b = ConditionedOp::identity(space(2));
        assert_eq!(compose(&[a, b]), Err(GrcError::SpaceMismatch));
        // erase then "requires 1" can never be satisfied
        let erase = make_gate(GateKind::Erase, &[0], space(1)).unwrap();
        let needs_one = ConditionedOp::identity(space(1))
            .with_precondition(Precondition::from_predicate(space(1), |s| s.get(0)).unwrap())
            .unwrap();
        assert_eq!(
            compose(&[erase, needs_one]),
            Err(GrcError::EmptyPrecondition)
        );
    }

    #[test]
    fn empty_precondition_rejected() {
        assert_eq!(
            Precondition::new(space(1), vec![false, false]),
            Err(GrcError::EmptyPrecondition)
        );
    }
}
