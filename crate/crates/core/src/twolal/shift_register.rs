//! A 2LAL shift register built from the OR element alone.
//!
//! Cell `i` (1-based) is an OR element whose drive is clock phase `i mod 4`
//! and whose two inputs are its neighbours: `Q(i-1)` computes it, and
//! `Q(i+1)` keeps it connected to its clock while the copy downstream
//! exists, so the cell is restored by its own clock ramping down exactly
//! after the next cell has taken over. Each cell is thus logic and latch at
//! once. With four phases, data advances one cell per interval and four cells
//! per cycle; one stage of the register is four cells.
//!
//! Cell 0 is the input driver and cell `N+1` a reversible echo sink, whose
//! samples are the register's output.

use super::circuit::{ElementId, ElementKind, SignalId, TwoLalCircuit};
use super::clock::{phase_clock, ClockSchedule, Transition, Waveform};
use super::sim::SimulationResult;
use super::SimError;

pub const CELLS_PER_STAGE: usize = 4;
const PHASES: usize = 4;

#[derive(Debug, Clone, PartialEq)]
pub struct ShiftRegister {
    pub circuit: TwoLalCircuit,
    pub schedule: ClockSchedule,
    pub stages: usize,
    pub input: SignalId,
    pub sink: SignalId,
    /// `Q1 ..= QN`.
    pub cells: Vec<SignalId>,
    pub clocks: Vec<SignalId>,
}

pub fn build_shift_register(stages: usize) -> Result<ShiftRegister, SimError> {
    build_shift_register_with(stages, ClockSchedule::default().ticks_per_interval)
}

pub fn build_shift_register_with(
    stages: usize,
    ticks_per_interval: usize,
) -> Result<ShiftRegister, SimError> {
    if stages == 0 {
        return Err(SimError::Build(
            "shift register needs at least one stage".into(),
        ));
    }
    let n = stages * CELLS_PER_STAGE;
    let mut circuit = TwoLalCircuit::new();
    let mut schedule = ClockSchedule::new(ticks_per_interval, PHASES)?;

    let clocks = (0..PHASES)
        .map(|p| circuit.add_signal(&format!("phi{p}")))
        .collect::<Result<Vec<_>, _>>()?;
    let input = circuit.add_signal("IN")?;
    let cells = (1..=n)
        .map(|i| circuit.add_signal(&format!("Q{i}")))
        .collect::<Result<Vec<_>, _>>()?;
    let sink = circuit.add_signal("OUT")?;

    let chain: Vec<SignalId> = std::iter::once(input)
        .chain(cells.iter().copied())
        .chain([sink])
        .collect();
    for i in 1..=n {
        circuit.add_element(
            ElementKind::Or,
            &[chain[i - 1], chain[i + 1]],
            clocks[i % PHASES],
            chain[i],
        )?;
    }

    for (p, &clk) in clocks.iter().enumerate() {
        schedule.drive(clk, phase_clock(p, PHASES))?;
    }
    schedule.drive(input, Waveform::Sequence(Vec::new()))?;
    schedule.drive(
        sink,
        Waveform::Echo {
            watch: cells[n - 1],
            period: PHASES,
            sample_at: (n + 1) % PHASES,
            release_at: (n + 3) % PHASES,
        },
    )?;

    Ok(ShiftRegister {
        circuit,
        schedule,
        stages,
        input,
        sink,
        cells,
        clocks,
    })
}

impl ShiftRegister {
    pub fn cell_count(&self) -> usize {
        self.cells.len()
    }

    /// Program the input: bit `j` enters in cycle `j`.
    pub fn load_pattern(&mut self, bits: &[bool]) {
        let mut program = vec![Transition::Hold; bits.len() * PHASES];
        for (j, &b) in bits.iter().enumerate() {
            if b {
                program[PHASES * j] = Transition::Ramp(1.0);
                program[PHASES * j + 2] = Transition::Ramp(0.0);
            }
        }
        let driver = self
            .schedule
            .drivers
            .iter_mut()
            .find(|d| d.signal == self.input)
            .expect("input driver exists");
        driver.waveform = Waveform::Sequence(program);
    }

    /// Cycles needed for every bit of a `len`-bit pattern to reach the sink
    /// and for the sink to release it.
    pub fn cycles_for(&self, len: usize) -> usize {
        len + self.stages + 1
    }

    /// Sink samples in cycle order; sample `c` is the bit that entered in
    /// cycle `c - stages`.
    pub fn output_bits(&self, result: &SimulationResult) -> Vec<bool> {
        result
            .samples
            .iter()
            .filter(|s| s.signal == self.sink)
            .map(|s| s.value)
            .collect()
    }

    pub fn elements(&self) -> impl Iterator<Item = ElementId> + '_ {
        (0..self.circuit.elements().len()).map(ElementId)
    }
}

/// Output expected from a pure delay of `latency` cycles, zero-filled.
pub fn pure_delay(input: &[bool], latency: usize, cycles: usize) -> Vec<bool> {
    (0..cycles)
        .map(|c| c >= latency && input.get(c - latency).copied().unwrap_or(false))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::energy::TechnologyParams;
    use crate::twolal::simulate;

    fn run(stages: usize, bits: &[bool]) -> (ShiftRegister, SimulationResult) {
        let mut sr = build_shift_register(stages).unwrap();
        sr.load_pattern(bits);
        let cycles = sr.cycles_for(bits.len());
        let r = simulate(
            &sr.circuit,
            &sr.schedule,
            TechnologyParams::default(),
            cycles,
            false,
        )
        .unwrap();
        (sr, r)
    }

    fn bits(s: &str) -> Vec<bool> {
        s.chars().map(|c| c == '1').collect()
    }

    #[test]
    fn one_stage_one_bit() {
        let (sr, r) = run(1, &[true]);
        let out = sr.output_bits(&r);
        assert_eq!(out, pure_delay(&[true], 1, out.len()));
        assert!(out[1]);
        assert!(
            r.ledger.is_fully_adiabatic(),
            "{:?}",
            r.ledger.violation_events
        );
    }

    #[test]
    fn eight_stage_pattern() {
        let pattern = bits("10110010");
        let (sr, r) = run(8, &pattern);
        let out = sr.output_bits(&r);
        assert_eq!(out, pure_delay(&pattern, 8, out.len()));
        assert_eq!(&out[8..16], &pattern[..]);
        assert!(
            r.ledger.is_fully_adiabatic(),
            "{:?}",
            r.ledger.violation_events.first()
        );
        assert_eq!(r.dual_rail_faults, 0);
    }

    #[test]
    fn all_zero_is_quiet() {
        let (_, r) = run(8, &[false; 8]);
        assert!(r.ledger.adiabatic_events.is_empty());
        assert!(r.ledger.is_fully_adiabatic());
        assert_eq!(r.ledger.total(), r.ledger.leakage_total);
    }

    #[test]
    fn transistor_count() {
        let sr = build_shift_register(3).unwrap();
        assert_eq!(sr.cell_count(), 12);
        assert_eq!(sr.circuit.transistor_count(), 12 * 8);
        assert!(build_shift_register(0).is_err());
    }

    #[test]
    fn delay_oracle() {
        assert_eq!(pure_delay(&bits("11"), 1, 4), bits("0110"));
    }
}
