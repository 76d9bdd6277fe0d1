//! The conditioned reversible OR: lossless while its precondition holds,
//! lossy once disallowed states get probability.

use revkit::grc::{
    classify, information_loss, make_gate, verify_no_merge, BitState, Distribution, GateKind,
    StateSpace,
};

fn main() {
    let space = StateSpace::new(3).unwrap();
    let op = make_gate(GateKind::RevOr, &[0, 1, 2], space).unwrap();
    println!("class: {:?}", classify(&op));

    let state = |s| BitState::parse(s).unwrap();
    let allowed = Distribution::from_pairs(
        space,
        [
            (state("000"), 0.4),
            (state("010"), 0.1),
            (state("100"), 0.2),
            (state("110"), 0.3),
        ],
    )
    .unwrap();
    let loss = information_loss(&op, &allowed, Some(300.0)).unwrap();
    println!(
        "precondition respected: loss {} bits, no merge: {}",
        loss.loss,
        verify_no_merge(&op, &allowed).unwrap().is_no_merge()
    );

    let uniform = Distribution::uniform(space);
    let loss = information_loss(&op, &uniform, Some(300.0)).unwrap();
    println!(
        "uniform over all 8 states: loss {} bits, at least {:.3e} J of heat",
        loss.loss,
        loss.min_heat.unwrap()
    );
}
