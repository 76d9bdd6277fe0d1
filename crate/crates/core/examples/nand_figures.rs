//! Figures of merit for a reversible mechanical NAND at 300 K.

use revkit::energy::{
    implied_ops_per_composite, rotary_drag_power, FigureOfMerit, MechanicalParams,
};

fn main() {
    let mech = MechanicalParams::default();
    let fom = FigureOfMerit::new(mech.nand_energy, 300.0).unwrap();
    println!("landauer floor at 300 K: {:.4e} J", fom.landauer_floor);
    println!("per-NAND energy:         {:.1e} J", fom.device_energy);
    println!("efficiency ratio:        {:.0}x", fom.efficiency_ratio);
    println!("NAND ops per joule:      {:.3e}", fom.ops_per_watt);
    let target = 1.28e12 * 1e9;
    println!(
        "NAND ops per FLOP implied by {target:.2e} FLOPS/W: {:.4e}",
        implied_ops_per_composite(mech.nand_energy, target).unwrap()
    );
    let drag = rotary_drag_power(&mech);
    println!(
        "one joint at {:.0e} Hz: {:.3e} W, {:.3e} J per cycle",
        mech.operating_frequency, drag.power_watts, drag.joules_per_op
    );
}
