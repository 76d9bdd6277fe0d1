//! Circuit structure: rails, dual-rail signals, transmission gates and the
//! elements built from them.
//!
//! Dual-rail encoding used everywhere in this module:
//!
//! | value          | N rail | P rail |
//! |----------------|--------|--------|
//! | logic 0 / rest | low    | high   |
//! | logic 1        | high   | low    |
//!
//! Both rails therefore sit at their inactive level at rest, a transmission
//! gate controlled by a signal at rest is off, and the N and P copies of an
//! output are generated by mirrored structures from the complementary drivers
//! `D.n` and `D.p`.

use std::collections::HashMap;
use std::fmt;

use super::SimError;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct NodeId(pub usize);

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, serde::Serialize)]
pub struct SignalId(pub usize);

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Polarity {
    N,
    P,
}

impl Polarity {
    /// Level of this rail when the signal carries `value`.
    pub fn level_for(self, value: f64) -> f64 {
        match self {
            Polarity::N => value,
            Polarity::P => 1.0 - value,
        }
    }

    pub fn rest_level(self) -> f64 {
        self.level_for(0.0)
    }
}

/// One wire with a normalized voltage.
#[derive(Debug, Clone, PartialEq)]
pub struct Rail {
    pub name: String,
    pub polarity: Polarity,
    pub initial_level: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct DualRailSignal {
    pub name: String,
    pub n: NodeId,
    pub p: NodeId,
}

/// Conducts between its terminals while its control carries a valid 1.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TransmissionGate {
    pub control: SignalId,
    pub a: NodeId,
    pub b: NodeId,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ElementKind {
    Or,
    And,
    Buffer,
}

impl ElementKind {
    pub fn name(self) -> &'static str {
        match self {
            ElementKind::Or => "or",
            ElementKind::And => "and",
            ElementKind::Buffer => "buf",
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Element {
    pub kind: ElementKind,
    pub inputs: Vec<SignalId>,
    pub drive: SignalId,
    pub output: SignalId,
    /// Indices into the circuit's gate list.
    pub gates: Vec<usize>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct ElementId(pub usize);

#[derive(Debug, Clone, Default, PartialEq)]
pub struct TwoLalCircuit {
    rails: Vec<Rail>,
    signals: Vec<DualRailSignal>,
    gates: Vec<TransmissionGate>,
    elements: Vec<Element>,
    by_name: HashMap<String, SignalId>,
}

impl TwoLalCircuit {
    pub fn new() -> Self {
        Self::default()
    }

    fn add_rail(&mut self, name: String, polarity: Polarity) -> NodeId {
        self.rails.push(Rail {
            name,
            polarity,
            initial_level: polarity.rest_level(),
        });
        NodeId(self.rails.len() - 1)
    }

    /// New signal at rest.
    pub fn add_signal(&mut self, name: &str) -> Result<SignalId, SimError> {
        if self.by_name.contains_key(name) {
            return Err(SimError::Build(format!("duplicate signal `{name}`")));
        }
        let n = self.add_rail(format!("{name}.n"), Polarity::N);
        let p = self.add_rail(format!("{name}.p"), Polarity::P);
        self.signals.push(DualRailSignal {
            name: name.to_string(),
            n,
            p,
        });
        let id = SignalId(self.signals.len() - 1);
        self.by_name.insert(name.to_string(), id);
        Ok(id)
    }

    pub fn signal_named(&self, name: &str) -> Option<SignalId> {
        self.by_name.get(name).copied()
    }

    /// `name.n` or `name.p`.
    pub fn rail_named(&self, name: &str) -> Option<NodeId> {
        let (sig, pol) = name.rsplit_once('.')?;
        let s = self.signal(self.signal_named(sig)?);
        match pol {
            "n" => Some(s.n),
            "p" => Some(s.p),
            _ => None,
        }
    }

    pub fn add_tgate(
        &mut self,
        control: SignalId,
        a: NodeId,
        b: NodeId,
    ) -> Result<usize, SimError> {
        if a == b {
            return Err(SimError::Build(
                "transmission gate shorts a rail to itself".into(),
            ));
        }
        let ctl = self.signal(control);
        if [ctl.n, ctl.p].contains(&a) || [ctl.n, ctl.p].contains(&b) {
            return Err(SimError::Build(format!(
                "transmission gate controlled by `{}` switches its own rail",
                ctl.name
            )));
        }
        self.gates.push(TransmissionGate { control, a, b });
        Ok(self.gates.len() - 1)
    }

    fn check_distinct(&self, signals: &[SignalId]) -> Result<(), SimError> {
        for (i, s) in signals.iter().enumerate() {
            if signals[..i].contains(s) {
                return Err(SimError::Build(format!(
                    "signal `{}` used twice in one element",
                    self.signal(*s).name
                )));
            }
        }
        Ok(())
    }

    /// Wire an element whose output signal already exists.
    ///
    /// * `Or`: two gates in parallel from `drive.n` to `q.n`, controlled by
    ///   the two inputs, mirrored from `drive.p` to `q.p`.
    /// * `And`: the same two gates in series through an internal rail.
    /// * `Buffer`: one gate per rail.
    pub fn add_element(
        &mut self,
        kind: ElementKind,
        inputs: &[SignalId],
        drive: SignalId,
        output: SignalId,
    ) -> Result<ElementId, SimError> {
        let expected = match kind {
            ElementKind::Buffer => 1,
            ElementKind::Or | ElementKind::And => 2,
        };
        if inputs.len() != expected {
            return Err(SimError::Build(format!(
                "{} element takes {expected} inputs, got {}",
                kind.name(),
                inputs.len()
            )));
        }
        let mut all = inputs.to_vec();
        all.extend([drive, output]);
        self.check_distinct(&all)?;

        let d = self.signal(drive).clone();
        let q = self.signal(output).clone();
        let mut gates = Vec::new();
        match kind {
            ElementKind::Buffer | ElementKind::Or => {
                for &input in inputs {
                    gates.push(self.add_tgate(input, d.n, q.n)?);
                    gates.push(self.add_tgate(input, d.p, q.p)?);
                }
            }
            ElementKind::And => {
                let mid_n = self.add_rail(format!("{}.mid.n", q.name), Polarity::N);
                let mid_p = self.add_rail(format!("{}.mid.p", q.name), Polarity::P);
                gates.push(self.add_tgate(inputs[0], d.n, mid_n)?);
                gates.push(self.add_tgate(inputs[1], mid_n, q.n)?);
                gates.push(self.add_tgate(inputs[0], d.p, mid_p)?);
                gates.push(self.add_tgate(inputs[1], mid_p, q.p)?);
            }
        }
        self.elements.push(Element {
            kind,
            inputs: inputs.to_vec(),
            drive,
            output,
            gates,
        });
        Ok(ElementId(self.elements.len() - 1))
    }

    /// OR element creating its output signal `q_name`.
    pub fn build_or_element(
        &mut self,
        q_name: &str,
        a: SignalId,
        b: SignalId,
        drive: SignalId,
    ) -> Result<(ElementId, SignalId), SimError> {
        self.check_distinct(&[a, b, drive])?;
        let q = self.add_signal(q_name)?;
        Ok((self.add_element(ElementKind::Or, &[a, b], drive, q)?, q))
    }

    /// AND element, the series dual of the OR element.
    pub fn build_and_element(
        &mut self,
        q_name: &str,
        a: SignalId,
        b: SignalId,
        drive: SignalId,
    ) -> Result<(ElementId, SignalId), SimError> {
        self.check_distinct(&[a, b, drive])?;
        let q = self.add_signal(q_name)?;
        Ok((self.add_element(ElementKind::And, &[a, b], drive, q)?, q))
    }

    pub fn rails(&self) -> &[Rail] {
        &self.rails
    }

    pub fn rail(&self, id: NodeId) -> &Rail {
        &self.rails[id.0]
    }

    pub fn signals(&self) -> &[DualRailSignal] {
        &self.signals
    }

    pub fn signal(&self, id: SignalId) -> &DualRailSignal {
        &self.signals[id.0]
    }

    pub fn gates(&self) -> &[TransmissionGate] {
        &self.gates
    }

    pub fn elements(&self) -> &[Element] {
        &self.elements
    }

    pub fn element(&self, id: ElementId) -> &Element {
        &self.elements[id.0]
    }

    /// Two transistors per transmission gate.
    pub fn transistor_count(&self) -> usize {
        2 * self.gates.len()
    }

    /// Elements that read `signal` as an input.
    pub fn fanout(&self, signal: SignalId) -> impl Iterator<Item = ElementId> + '_ {
        self.elements
            .iter()
            .enumerate()
            .filter(move |(_, e)| e.inputs.contains(&signal))
            .map(|(i, _)| ElementId(i))
    }
}

impl fmt::Display for NodeId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "#{}", self.0)
    }
}
