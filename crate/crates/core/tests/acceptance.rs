//! Acceptance criteria, one PASS/FAIL line each. Runs as a plain binary so
//! the lines always reach stdout; exits nonzero if any criterion fails.

mod common;

use std::path::PathBuf;
use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use revkit::bennett::{
    bennett_embed, pebble_bennett_recursive, pebble_exhaustive, verify_schedule,
};
use revkit::energy::{
    efficiency_vs_landauer, implied_ops_per_composite, landauer_limit, TechnologyParams,
};
use revkit::grc::{
    information_loss, make_gate, verify_no_merge, BitState, ConditionedOp, Distribution, Gate,
    GateKind, Precondition, StateSpace, LOSS_TOLERANCE,
};
use revkit::twolal::{
    build_shift_register, build_shift_register_with, energy_summary, parse_circuit, pure_delay,
    simulate,
};

const SEED: u64 = 0x5eed;

type Criterion = (&'static str, fn() -> Outcome, Duration);

struct Outcome {
    pass: bool,
    detail: String,
}

fn outcome(pass: bool, detail: impl Into<String>) -> Outcome {
    Outcome {
        pass,
        detail: detail.into(),
    }
}

fn root() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../..")
}

fn rel(a: f64, b: f64) -> f64 {
    (a / b - 1.0).abs()
}

fn c1_landauer_floor() -> Outcome {
    let floor = landauer_limit(300.0).unwrap();
    outcome(
        rel(floor, 2.8709e-21) <= 1e-4,
        format!("k_B*300*ln2 = {floor:.6e} J"),
    )
}

fn c2_efficiency_ratio() -> Outcome {
    let ratio = efficiency_vs_landauer(3.9e-26, 300.0).unwrap();
    outcome(rel(ratio, 74_000.0) <= 0.02, format!("ratio = {ratio:.1}"))
}

fn c3_implied_ops() -> Outcome {
    let ops = implied_ops_per_composite(3.9e-26, 1.28e12 * 1e9).unwrap();
    outcome(
        rel(ops, 2.0e4) <= 0.01,
        format!("primitive ops per composite = {ops:.1}"),
    )
}

fn c4_rev_or_zero_loss() -> Outcome {
    let space = StateSpace::new(3).unwrap();
    let gate = Gate::new(GateKind::RevOr, vec![0, 1, 2]).unwrap();
    let op = make_gate(GateKind::RevOr, &[0, 1, 2], space).unwrap();
    let q_clear = |s: BitState| !s.get(2);
    let mut rng = ChaCha8Rng::seed_from_u64(SEED);
    let mut worst = 0.0f64;
    let mut merges = 0;
    for _ in 0..1000 {
        let d = Distribution::random_over(space, &mut rng, q_clear).unwrap();
        worst = worst.max(information_loss(&op, &d, None).unwrap().loss.abs());
        if !verify_no_merge(&op, &d).unwrap().is_no_merge() {
            merges += 1;
        }
    }
    // brute-force oracle for the uniform case: 8 states at 1/8 map onto
    // images with multiplicities counted directly
    let uniform = Distribution::uniform(space);
    let mut counts = [0usize; 8];
    for s in space.states() {
        counts[gate.apply(&s).index()] += 1;
    }
    let h_out: f64 = counts
        .iter()
        .filter(|&&c| c > 0)
        .map(|&c| {
            let p = c as f64 / 8.0;
            -p * p.log2()
        })
        .sum();
    let oracle = 3.0 - h_out;
    let full = information_loss(&op, &uniform, None).unwrap().loss;
    outcome(
        worst <= 1e-12 && merges == 0 && oracle == 1.0 && full == 1.0,
        format!("max seeded loss = {worst:.1e}, merges = {merges}, uniform loss = {full} (oracle {oracle})"),
    )
}

fn c5_injective_iff_lossless() -> Outcome {
    let space = StateSpace::new(4).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(SEED);
    let mut mismatches = 0;
    let mut injective = 0;
    for _ in 0..10_000 {
        // bias half the draws towards permutations so both sides are exercised
        let table: Vec<u32> = if rng.gen_bool(0.5) {
            let mut t: Vec<u32> = (0..16).collect();
            for i in (1..16).rev() {
                t.swap(i, rng.gen_range(0..=i));
            }
            if rng.gen_bool(0.5) {
                t[rng.gen_range(0..16)] = rng.gen_range(0..16);
            }
            t
        } else {
            (0..16).map(|_| rng.gen_range(0..16)).collect()
        };
        let mut seen = [false; 16];
        let oracle = table
            .iter()
            .all(|&t| !std::mem::replace(&mut seen[t as usize], true));
        injective += usize::from(oracle);
        let op = ConditionedOp::new(space, table, Precondition::full(space)).unwrap();
        let mut dists = vec![Distribution::uniform(space)];
        for _ in 0..4 {
            let raw: Vec<f64> = (0..16).map(|_| rng.gen_range(0.01..1.0)).collect();
            let total: f64 = raw.iter().sum();
            dists.push(Distribution::new(space, raw.iter().map(|p| p / total).collect()).unwrap());
        }
        let lossless = dists
            .iter()
            .all(|d| information_loss(&op, d, None).unwrap().loss.abs() <= LOSS_TOLERANCE);
        if lossless != oracle {
            mismatches += 1;
        }
    }
    outcome(
        mismatches == 0 && injective > 0 && injective < 10_000,
        format!("10000 tables ({injective} injective), {mismatches} disagreements with the injectivity oracle"),
    )
}

fn c6_bennett_compiler() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(SEED);
    let mut bad = Vec::new();
    for i in 0..200 {
        let dag = common::random_dag(&mut rng, 6, 10);
        let (g, m) = (dag.gate_count(), dag.outputs().len());
        let s = bennett_embed(&dag).unwrap();
        let report = verify_schedule(&s, &dag).unwrap();
        // every ancilla slot must actually be written by some step
        let layout = s.layout();
        let ancillas = (0..layout.ancillas)
            .filter(|&a| s.steps().iter().any(|st| st.target() == layout.ancilla(a)))
            .count();
        if !report.passed() || s.len() != 2 * g + m || ancillas != g {
            bad.push(i);
        }
    }
    outcome(bad.is_empty(), format!("200 DAGs, failing: {bad:?}"))
}

fn c7_pebble_game() -> Outcome {
    let mut illegal = Vec::new();
    for n in 1..=64 {
        for k in [2, 3, 4] {
            let ok = pebble_bennett_recursive(n, k)
                .and_then(|s| s.verify())
                .is_ok();
            if !ok {
                illegal.push((n, k));
            }
        }
    }
    let mut non_monotone = Vec::new();
    for n in 1..=8 {
        let mut prev = usize::MAX;
        for s in 1..=n {
            let steps = pebble_exhaustive(n, s)
                .unwrap()
                .map_or(usize::MAX, |st| st.step_count);
            if steps > prev {
                non_monotone.push((n, s));
            }
            prev = steps;
        }
    }
    outcome(
        illegal.is_empty() && non_monotone.is_empty(),
        format!("illegal recursive (n,k): {illegal:?}; non-monotone (n,S): {non_monotone:?}"),
    )
}

fn c8_scaling_law() -> Outcome {
    let mut sr = build_shift_register(8).unwrap();
    let pattern = common::bits("1011001110001011");
    sr.load_pattern(&pattern);
    let cycles = sr.cycles_for(pattern.len());
    let base = TechnologyParams::default();
    let mut points = Vec::new();
    let mut violations = 0;
    for i in 0..8 {
        let tau = base.ramp_time * f64::from(1u32 << i);
        let r = simulate(
            &sr.circuit,
            &sr.schedule,
            base.with_ramp_time(tau),
            cycles,
            false,
        )
        .unwrap();
        violations += r.ledger.violation_events.len();
        points.push((tau.ln(), r.ledger.adiabatic_total().ln()));
    }
    let n = points.len() as f64;
    let (mx, my) = points
        .iter()
        .fold((0.0, 0.0), |(a, b), (x, y)| (a + x / n, b + y / n));
    let sxy: f64 = points.iter().map(|(x, y)| (x - mx) * (y - my)).sum();
    let sxx: f64 = points.iter().map(|(x, _)| (x - mx) * (x - mx)).sum();
    let slope = sxy / sxx;
    outcome(
        (slope + 1.0).abs() <= 0.05 && violations == 0,
        format!("slope = {slope:.6}, violations = {violations}"),
    )
}

fn c9_ev_point() -> Outcome {
    let params = TechnologyParams::from_file(&root().join("params/ev_point.cfg")).unwrap();
    let doc = parse_circuit(&std::fs::read_to_string(root().join("samples/ev_point.ckt")).unwrap())
        .unwrap();
    let cycles = doc.cycles.unwrap();
    let r = simulate(&doc.circuit, &doc.schedule, params, cycles, false).unwrap();
    let s = energy_summary(&r.ledger, doc.circuit.transistor_count()).unwrap();
    let ratio = s.adiabatic_ratio_to_signal;
    outcome(
        s.per_transistor_per_cycle_ev <= 1.0
            && (1e-5 / 3.0..=3e-5).contains(&ratio)
            && s.violations.is_empty(),
        format!(
            "{:.4} eV per transistor per cycle, adiabatic/CV^2 = {ratio:.3e}, RC/tau = {:.3e}",
            s.per_transistor_per_cycle_ev,
            params.rc() / params.ramp_time
        ),
    )
}

fn c10_shift_register_delay() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(SEED);
    let mut registers: Vec<_> = (1..=16)
        .map(|n| build_shift_register_with(n, 4).unwrap())
        .collect();
    let params = TechnologyParams::default();
    let mut wrong = 0;
    let mut nondeterministic = 0;
    for i in 0..1000 {
        let stages = rng.gen_range(1..=16);
        let len = rng.gen_range(1..=16);
        let pattern: Vec<bool> = (0..len).map(|_| rng.gen_bool(0.5)).collect();
        let sr = &mut registers[stages - 1];
        sr.load_pattern(&pattern);
        let cycles = sr.cycles_for(len);
        let a = simulate(&sr.circuit, &sr.schedule, params, cycles, false).unwrap();
        let out = sr.output_bits(&a);
        if out != pure_delay(&pattern, stages, out.len()) || !a.ledger.is_fully_adiabatic() {
            wrong += 1;
        }
        if i % 10 == 0 {
            let b = simulate(&sr.circuit, &sr.schedule, params, cycles, false).unwrap();
            if a.ledger != b.ledger || a.samples != b.samples {
                nondeterministic += 1;
            }
        }
    }
    outcome(
        wrong == 0 && nondeterministic == 0,
        format!("1000 patterns: {wrong} wrong, {nondeterministic} of 100 repeats differ"),
    )
}

fn main() {
    let criteria: [Criterion; 10] = [
        (
            "1 landauer floor",
            c1_landauer_floor,
            Duration::from_secs(1),
        ),
        (
            "2 efficiency ratio",
            c2_efficiency_ratio,
            Duration::from_secs(1),
        ),
        (
            "3 implied ops per composite",
            c3_implied_ops,
            Duration::from_secs(1),
        ),
        (
            "4 rev_or zero loss",
            c4_rev_or_zero_loss,
            Duration::from_secs(5),
        ),
        (
            "5 injective iff lossless",
            c5_injective_iff_lossless,
            Duration::from_secs(60),
        ),
        (
            "6 bennett compiler",
            c6_bennett_compiler,
            Duration::from_secs(120),
        ),
        ("7 pebble game", c7_pebble_game, Duration::from_secs(120)),
        (
            "8 adiabatic scaling law",
            c8_scaling_law,
            Duration::from_secs(60),
        ),
        (
            "9 one eV operating point",
            c9_ev_point,
            Duration::from_secs(30),
        ),
        (
            "10 shift register delay",
            c10_shift_register_delay,
            Duration::from_secs(60),
        ),
    ];
    let mut failed = 0;
    for (name, check, budget) in criteria {
        let start = Instant::now();
        let o = check();
        let elapsed = start.elapsed();
        let pass = o.pass && elapsed <= budget;
        failed += usize::from(!pass);
        println!(
            "{} criterion {name}: {} [{:.2}s of {}s]",
            if pass { "PASS" } else { "FAIL" },
            o.detail,
            elapsed.as_secs_f64(),
            budget.as_secs()
        );
    }
    if failed > 0 {
        println!("{failed} criteria failed");
        std::process::exit(1);
    }
}
