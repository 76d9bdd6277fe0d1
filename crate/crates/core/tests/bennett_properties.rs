mod common;

use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use revkit::bennett::{
    bennett_embed, check_legality, execute_schedule, parse_dag, pebble_bennett_recursive,
    pebble_exhaustive, verify_schedule,
};
use revkit::grc::BitState;

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn compiled_random_dags_verify(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let dag = common::random_dag(&mut rng, 5, 8);
        let s = bennett_embed(&dag).unwrap();
        let g = dag.gate_count();
        let m = dag.outputs().len();
        prop_assert_eq!(s.len(), 2 * g + m);
        prop_assert_eq!(s.layout().ancillas, g);
        let r = verify_schedule(&s, &dag).unwrap();
        prop_assert!(r.passed(), "{}", r);
    }

    #[test]
    fn inverse_schedule_restores_the_start(seed in any::<u64>(), x in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let dag = common::random_dag(&mut rng, 4, 6);
        let s = bennett_embed(&dag).unwrap();
        let layout = s.layout();
        let start = layout.initial_state(&BitState::new(layout.inputs, x & ((1 << layout.inputs) - 1)));
        let end = execute_schedule(&s, &start).unwrap();
        let back = execute_schedule(&s.inverse().unwrap(), &end).unwrap();
        prop_assert_eq!(back, start);
    }

    #[test]
    fn display_round_trips(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let dag = common::random_dag(&mut rng, 4, 6);
        prop_assert_eq!(&parse_dag(&dag.to_string()).unwrap(), &dag);
        let s = bennett_embed(&dag).unwrap();
        prop_assert_eq!(revkit::bennett::parse_schedule(&s.to_string()).unwrap(), s);
    }

    #[test]
    fn recursive_pebbling_is_legal(n in 1usize..80, k in 2usize..6) {
        let s = pebble_bennett_recursive(n, k).unwrap();
        let r = check_legality(n, &s.moves).unwrap();
        prop_assert_eq!(r.final_pebbles, 1);
        prop_assert_eq!(r.max_pebbles, s.max_pebbles);
    }
}

#[test]
fn exhaustive_pebbling_never_loses_to_recursive() {
    for n in 1..=8 {
        for k in 2..=4 {
            let rec = pebble_bennett_recursive(n, k).unwrap();
            let best = pebble_exhaustive(n, rec.max_pebbles)
                .unwrap()
                .expect("recursive budget suffices");
            assert!(best.step_count <= rec.step_count, "n={n} k={k}");
        }
    }
}

#[test]
fn half_adder_sample_compiles() {
    let text = std::fs::read_to_string(concat!(
        env!("CARGO_MANIFEST_DIR"),
        "/../../samples/half_adder.net"
    ))
    .unwrap();
    let dag = parse_dag(&text).unwrap();
    let s = bennett_embed(&dag).unwrap();
    assert_eq!(s.len(), 14);
    assert!(verify_schedule(&s, &dag).unwrap().passed());
}
