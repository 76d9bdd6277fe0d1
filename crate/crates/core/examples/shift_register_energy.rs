//! An 8-stage 2LAL shift register: pure-delay behaviour and the 1/τ law of
//! adiabatic dissipation.

use revkit::energy::TechnologyParams;
use revkit::twolal::{build_shift_register, energy_summary, pure_delay, simulate};

fn main() {
    let mut sr = build_shift_register(8).unwrap();
    let pattern: Vec<bool> = "10110010".chars().map(|c| c == '1').collect();
    sr.load_pattern(&pattern);
    let cycles = sr.cycles_for(pattern.len());
    let base = TechnologyParams::default();

    let r = simulate(&sr.circuit, &sr.schedule, base, cycles, false).unwrap();
    let out = sr.output_bits(&r);
    let show = |b: &[bool]| {
        b.iter()
            .map(|&x| if x { '1' } else { '0' })
            .collect::<String>()
    };
    println!("output   {}", show(&out));
    println!("expected {}", show(&pure_delay(&pattern, 8, out.len())));

    println!(
        "{:>10} {:>14} {:>12}",
        "tau (s)", "adiabatic (J)", "eV/tr/cycle"
    );
    for i in 0..8 {
        let p = base.with_ramp_time(base.ramp_time * f64::from(1u32 << i));
        let r = simulate(&sr.circuit, &sr.schedule, p, cycles, false).unwrap();
        let s = energy_summary(&r.ledger, sr.circuit.transistor_count()).unwrap();
        println!(
            "{:>10.1e} {:>14.4e} {:>12.4}",
            p.ramp_time, s.adiabatic_j, s.adiabatic_per_transistor_per_cycle_ev
        );
    }
}
