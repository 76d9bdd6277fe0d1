//! The two reversible ways to retire an OR element's result: restore the
//! inputs and latch Q, or restore the drive and decompute Q.

use revkit::energy::TechnologyParams;
use revkit::twolal::{
    decompute_cycle, ClockSchedule, DecomputeOption, Simulator, Transition::*, TwoLalCircuit,
    Waveform,
};

fn main() {
    for option in [DecomputeOption::Inputs, DecomputeOption::Drive] {
        let mut c = TwoLalCircuit::new();
        let a = c.add_signal("A").unwrap();
        let b = c.add_signal("B").unwrap();
        let d = c.add_signal("D").unwrap();
        let (element, q) = c.build_or_element("Q", a, b, d).unwrap();
        let mut s = ClockSchedule::default();
        s.drive(a, Waveform::Sequence(vec![Ramp(1.0)])).unwrap();
        s.drive(b, Waveform::Sequence(vec![Ramp(0.0)])).unwrap();
        s.drive(d, Waveform::Sequence(vec![Hold, Ramp(1.0)]))
            .unwrap();
        decompute_cycle(&c, &mut s, element, option, 2).unwrap();

        let mut sim = Simulator::new(&c, &s, TechnologyParams::default()).unwrap();
        sim.run_intervals(3).unwrap();
        let (a_now, q_now) = (sim.logic(a), sim.logic(q));
        let r = sim.finish();
        println!(
            "{option:?}: after decompute A={} Q={}, {} adiabatic events, fully adiabatic: {}",
            u8::from(a_now),
            u8::from(q_now),
            r.ledger.adiabatic_events.len(),
            r.ledger.is_fully_adiabatic()
        );
    }
}
