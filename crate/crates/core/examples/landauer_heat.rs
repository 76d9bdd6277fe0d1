//! Heat floor for erasing bits at a few temperatures.

use revkit::energy::{joules_to_ev, landauer_limit};
use revkit::grc::{information_loss, make_gate, Distribution, GateKind, StateSpace};

fn main() {
    let space = StateSpace::new(1).unwrap();
    let erase = make_gate(GateKind::Erase, &[0], space).unwrap();
    for p1 in [0.5, 0.1, 0.0] {
        let d = Distribution::new(space, vec![1.0 - p1, p1]).unwrap();
        let r = information_loss(&erase, &d, Some(300.0)).unwrap();
        println!(
            "erase with P(1) = {p1}: {:.4} bits lost, {:.4e} J",
            r.loss,
            r.min_heat.unwrap()
        );
    }
    for t in [4.0, 77.0, 300.0, 373.0] {
        let floor = landauer_limit(t).unwrap();
        println!(
            "k_B T ln2 at {t:>5} K = {floor:.4e} J = {:.3e} eV",
            joules_to_ev(floor)
        );
    }
}
