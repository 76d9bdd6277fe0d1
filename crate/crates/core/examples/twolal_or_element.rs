//! One 2LAL OR element driven through its truth table: inputs ramp in
//! interval 0, the drive ramps in interval 1, everything ramps back after.

use revkit::energy::{adiabatic_dissipation, TechnologyParams};
use revkit::twolal::{ClockSchedule, Simulator, Transition::*, TwoLalCircuit, Waveform};

fn main() {
    let params = TechnologyParams::default();
    println!(
        "closed form per full swing: {:.3e} J",
        adiabatic_dissipation(&params)
    );
    for (a_val, b_val) in [(0.0, 0.0), (0.0, 1.0), (1.0, 0.0), (1.0, 1.0)] {
        let mut c = TwoLalCircuit::new();
        let a = c.add_signal("A").unwrap();
        let b = c.add_signal("B").unwrap();
        let d = c.add_signal("D").unwrap();
        let (_, q) = c.build_or_element("Q", a, b, d).unwrap();
        let mut s = ClockSchedule::default();
        s.drive(
            a,
            Waveform::Sequence(vec![Ramp(a_val), Hold, Hold, Ramp(0.0)]),
        )
        .unwrap();
        s.drive(
            b,
            Waveform::Sequence(vec![Ramp(b_val), Hold, Hold, Ramp(0.0)]),
        )
        .unwrap();
        s.drive(d, Waveform::Sequence(vec![Hold, Ramp(1.0), Ramp(0.0)]))
            .unwrap();

        let mut sim = Simulator::new(&c, &s, params).unwrap();
        sim.run_intervals(2).unwrap();
        let out = sim.logic(q);
        sim.run_intervals(2).unwrap();
        let r = sim.finish();
        println!(
            "A={a_val} B={b_val}: Q={} adiabatic {:.3e} J in {} events, violations {}",
            u8::from(out),
            r.ledger.adiabatic_total(),
            r.ledger.adiabatic_events.len(),
            r.ledger.violation_events.len()
        );
    }
}
