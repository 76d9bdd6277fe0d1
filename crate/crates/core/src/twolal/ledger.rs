use std::fmt;

use serde::Serialize;

use super::SimError;
use crate::energy::{joules_to_ev, signal_energy, TechnologyParams};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum ViolationKind {
    TurnOnWithDifferential,
    TurnOffWhileConductingMidRamp,
    DriveFloatingNodeFromDifferentLevel,
}

impl ViolationKind {
    pub fn name(self) -> &'static str {
        match self {
            ViolationKind::TurnOnWithDifferential => "turn_on_with_differential",
            ViolationKind::TurnOffWhileConductingMidRamp => "turn_off_while_conducting_mid_ramp",
            ViolationKind::DriveFloatingNodeFromDifferentLevel => {
                "drive_floating_node_from_different_level"
            }
        }
    }
}

impl fmt::Display for ViolationKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct AdiabaticEvent {
    /// Tick at which the monotone transition finished.
    pub tick: u64,
    pub node: String,
    pub from: f64,
    pub to: f64,
    pub energy: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ViolationReport {
    pub kind: ViolationKind,
    pub tick: u64,
    /// Offending transmission gate, when one is involved.
    pub gate: Option<usize>,
    pub node: String,
    /// Normalized level jump the energy was charged for.
    pub delta: f64,
    pub energy: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct EnergyLedger {
    pub adiabatic_events: Vec<AdiabaticEvent>,
    pub violation_events: Vec<ViolationReport>,
    pub leakage_total: f64,
    pub params: TechnologyParams,
    pub ticks: u64,
    pub intervals: u64,
    pub intervals_per_cycle: usize,
}

impl EnergyLedger {
    pub fn new(params: TechnologyParams, intervals_per_cycle: usize) -> Self {
        Self {
            adiabatic_events: Vec::new(),
            violation_events: Vec::new(),
            leakage_total: 0.0,
            params,
            ticks: 0,
            intervals: 0,
            intervals_per_cycle,
        }
    }

    pub fn adiabatic_total(&self) -> f64 {
        self.adiabatic_events
            .iter()
            .fold(0.0, |acc, e| acc + e.energy)
    }

    pub fn violation_total(&self) -> f64 {
        self.violation_events
            .iter()
            .fold(0.0, |acc, e| acc + e.energy)
    }

    pub fn total(&self) -> f64 {
        self.adiabatic_total() + self.violation_total() + self.leakage_total
    }

    pub fn is_fully_adiabatic(&self) -> bool {
        self.violation_events.is_empty()
    }

    pub fn completed_cycles(&self) -> u64 {
        self.intervals / self.intervals_per_cycle as u64
    }
}

/// Ledger totals normalized per transistor per cycle.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct EnergySummary {
    pub transistors: usize,
    pub cycles: u64,
    pub total_j: f64,
    pub adiabatic_j: f64,
    pub violation_j: f64,
    pub leakage_j: f64,
    pub adiabatic_events: usize,
    pub per_transistor_per_cycle_j: f64,
    pub per_transistor_per_cycle_ev: f64,
    pub adiabatic_per_transistor_per_cycle_j: f64,
    pub adiabatic_per_transistor_per_cycle_ev: f64,
    /// `CV²`.
    pub signal_energy_j: f64,
    /// Total per transistor per cycle over `CV²`.
    pub ratio_to_signal: f64,
    /// Adiabatic part per transistor per cycle over `CV²`.
    pub adiabatic_ratio_to_signal: f64,
    pub violations: Vec<ViolationReport>,
}

pub fn energy_summary(
    ledger: &EnergyLedger,
    transistors: usize,
) -> Result<EnergySummary, SimError> {
    let cycles = ledger.completed_cycles();
    if cycles == 0 {
        return Err(SimError::ZeroCycles);
    }
    if transistors == 0 {
        return Err(SimError::Build("circuit has no transistors".into()));
    }
    let norm = transistors as f64 * cycles as f64;
    let total = ledger.total();
    let adiabatic = ledger.adiabatic_total();
    let cv2 = signal_energy(&ledger.params);
    Ok(EnergySummary {
        transistors,
        cycles,
        total_j: total,
        adiabatic_j: adiabatic,
        violation_j: ledger.violation_total(),
        leakage_j: ledger.leakage_total,
        adiabatic_events: ledger.adiabatic_events.len(),
        per_transistor_per_cycle_j: total / norm,
        per_transistor_per_cycle_ev: joules_to_ev(total / norm),
        adiabatic_per_transistor_per_cycle_j: adiabatic / norm,
        adiabatic_per_transistor_per_cycle_ev: joules_to_ev(adiabatic / norm),
        signal_energy_j: cv2,
        ratio_to_signal: total / norm / cv2,
        adiabatic_ratio_to_signal: adiabatic / norm / cv2,
        violations: ledger.violation_events.clone(),
    })
}

impl fmt::Display for EnergySummary {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "transistors: {}", self.transistors)?;
        writeln!(f, "cycles: {}", self.cycles)?;
        writeln!(
            f,
            "adiabatic: {:.6e} J ({} events)",
            self.adiabatic_j, self.adiabatic_events
        )?;
        writeln!(
            f,
            "violations: {:.6e} J ({} events)",
            self.violation_j,
            self.violations.len()
        )?;
        writeln!(f, "leakage: {:.6e} J", self.leakage_j)?;
        writeln!(f, "total: {:.6e} J", self.total_j)?;
        writeln!(
            f,
            "per transistor per cycle: {:.6e} J = {:.4} eV",
            self.per_transistor_per_cycle_j, self.per_transistor_per_cycle_ev
        )?;
        writeln!(
            f,
            "adiabatic per transistor per cycle: {:.6e} J = {:.4} eV",
            self.adiabatic_per_transistor_per_cycle_j, self.adiabatic_per_transistor_per_cycle_ev
        )?;
        writeln!(f, "ratio to CV^2: {:.3e}", self.ratio_to_signal)?;
        write!(
            f,
            "adiabatic ratio to CV^2: {:.3e}",
            self.adiabatic_ratio_to_signal
        )?;
        for v in &self.violations {
            write!(
                f,
                "\nviolation {} at tick {} on {}: {:.6e} J",
                v.kind, v.tick, v.node, v.energy
            )?;
        }
        Ok(())
    }
}
