#![allow(dead_code)]

use rand::Rng;
use revkit::bennett::{parse_dag, GateDag};

/// Netlist text for a random DAG: every gate reads earlier signals only, and
/// the outputs are a nonempty random subset of the gates.
pub fn random_dag_text<R: Rng>(rng: &mut R, max_inputs: usize, max_gates: usize) -> String {
    let inputs = rng.gen_range(1..=max_inputs);
    let gates = rng.gen_range(1..=max_gates);
    let mut names: Vec<String> = (0..inputs).map(|i| format!("x{i}")).collect();
    let mut text = format!("in {};", names.join(" "));
    for g in 0..gates {
        let pick = |rng: &mut R, names: &[String]| names[rng.gen_range(0..names.len())].clone();
        let stmt = match rng.gen_range(0..3) {
            0 => format!(" g{g} = NOT {};", pick(rng, &names)),
            k => {
                let a = pick(rng, &names);
                let b = pick(rng, &names);
                format!(" g{g} = {} {a} {b};", if k == 1 { "AND" } else { "OR" })
            }
        };
        text += &stmt;
        names.push(format!("g{g}"));
    }
    let mut outs: Vec<String> = (0..gates)
        .filter(|_| rng.gen_bool(0.4))
        .map(|g| format!("g{g}"))
        .collect();
    if outs.is_empty() {
        outs.push(format!("g{}", gates - 1));
    }
    text += &format!(" out {};", outs.join(" "));
    text
}

pub fn random_dag<R: Rng>(rng: &mut R, max_inputs: usize, max_gates: usize) -> GateDag {
    parse_dag(&random_dag_text(rng, max_inputs, max_gates)).expect("generated netlist parses")
}

pub fn bits(s: &str) -> Vec<bool> {
    s.chars().map(|c| c == '1').collect()
}
