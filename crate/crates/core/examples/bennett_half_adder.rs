//! Compile a half adder with forward/copy/reverse and verify it exhaustively.

use revkit::bennett::{bennett_embed, execute_schedule, parse_dag, verify_schedule};
use revkit::grc::BitState;

const HALF_ADDER: &str = "
in a b;
na = NOT a; nb = NOT b;
t1 = AND a nb; t2 = AND na b;
sum = OR t1 t2;
carry = AND a b;
out sum carry;
";

fn main() {
    let dag = parse_dag(HALF_ADDER).unwrap();
    let schedule = bennett_embed(&dag).unwrap();
    print!("{schedule}");
    println!("{}", verify_schedule(&schedule, &dag).unwrap());

    let layout = schedule.layout();
    for v in 0..4u64 {
        let input = BitState::new(2, v);
        let end = execute_schedule(&schedule, &layout.initial_state(&input)).unwrap();
        println!(
            "in {input} -> ancillas {} results {}",
            layout.ancilla_region(&end),
            layout.result_region(&end)
        );
    }
}
