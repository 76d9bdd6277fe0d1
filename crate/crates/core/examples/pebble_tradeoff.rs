//! Space/time tradeoff of the reversible pebble game.

use revkit::bennett::{pebble_bennett_recursive, pebble_exhaustive};

fn main() {
    let n = 8;
    println!("chain of {n}: fewest moves with at most S pebbles");
    for s in 1..=n {
        match pebble_exhaustive(n, s).unwrap() {
            Some(st) => println!("  S = {s}: {} moves", st.step_count),
            None => println!("  S = {s}: impossible"),
        }
    }
    println!("recursive scheme, chain of 64");
    for k in [2, 3, 4, 8] {
        let st = pebble_bennett_recursive(64, k).unwrap();
        println!(
            "  k = {k}: {} moves, {} pebbles",
            st.step_count, st.max_pebbles
        );
    }
}
