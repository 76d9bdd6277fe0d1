//! The `revkit` command line.
//!
//! Exit codes: 0 success, 2 bad input (usage, parse, parameter errors),
//! 3 verification failure, 4 simulation conflict.

use std::ffi::OsString;
use std::fmt::Write as _;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};

use crate::bennett::{bennett_embed, parse_dag, verify_schedule, ReversibleSchedule, VerifyError};
use crate::energy::{
    adiabatic_dissipation, efficiency_vs_landauer, implied_ops_per_composite, joules_to_ev,
    landauer_limit, ops_per_watt, rotary_drag_power, signal_energy, MechanicalParams,
    TechnologyParams,
};
use crate::grc::{self, classify, information_loss, verify_no_merge, Distribution, MergeVerdict};
use crate::twolal::{self, energy_summary, pure_delay, simulate, write_trace_csv, SimError};

pub const EXIT_OK: i32 = 0;
pub const EXIT_INPUT: i32 = 2;
pub const EXIT_VERIFY: i32 = 3;
pub const EXIT_CONFLICT: i32 = 4;

/// Environment variable naming a default params file.
pub const PARAMS_ENV: &str = "REVKIT_PARAMS";

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Csv,
    Json,
}

#[derive(Debug, Parser)]
#[command(name = "revkit", version, about = "Reversible-computing toolkit")]
pub struct Cli {
    /// Output format.
    #[arg(long, value_enum, default_value_t = Format::Text, global = true)]
    pub format: Format,
    /// Seed for every randomized sweep; echoed in output headers.
    #[arg(long, default_value_t = 0, global = true)]
    pub seed: u64,
    /// Technology params file (overrides $REVKIT_PARAMS).
    #[arg(long, global = true)]
    pub params: Option<PathBuf>,
    /// Override one technology parameter, e.g. `--set ramp_time=2e-6`.
    #[arg(long = "set", value_name = "KEY=VALUE", global = true)]
    pub overrides: Vec<String>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Classify an operation table; with a distribution, report information loss.
    Classify {
        /// Operation table (`.op`).
        op: PathBuf,
        /// Distribution file (otherwise one embedded in the op file is used).
        #[arg(long)]
        dist: Option<PathBuf>,
        /// Temperature for the minimum-heat figure (K).
        #[arg(long)]
        temp: Option<f64>,
        /// Also check this many seeded random distributions on the precondition.
        #[arg(long, default_value_t = 0)]
        samples: usize,
    },
    /// Compile a gate netlist into a reversible schedule.
    Compile {
        /// Gate netlist (`.net`).
        net: PathBuf,
        /// Exhaustively verify the schedule (width ≤ 24).
        #[arg(long)]
        verify: bool,
        /// Write the schedule here instead of standard output.
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Simulate a 2LAL circuit and report its energy ledger.
    Sim {
        /// Circuit description (`.ckt`).
        circuit: PathBuf,
        /// Clock cycles to run (default: the file's `cycles`, else 1).
        #[arg(long)]
        cycles: Option<usize>,
        /// Ramp time per clock interval (s).
        #[arg(long)]
        tau: Option<f64>,
        /// Write the tick trace as CSV.
        #[arg(long)]
        trace: Option<PathBuf>,
    },
    /// Figures of merit: Landauer floor, adiabatic cost, efficiency ratios.
    Energy {
        /// Temperature (K); defaults to the params file.
        #[arg(long)]
        temp: Option<f64>,
        /// Energy per device operation (J).
        #[arg(long)]
        device_energy: Option<f64>,
        /// Device operations per composite operation.
        #[arg(long)]
        ops_per_composite: Option<f64>,
        /// Target composite operations per second per watt.
        #[arg(long)]
        composite_per_watt: Option<f64>,
        /// Rotary drag coefficient (J·s) for a mechanical joint estimate.
        #[arg(long)]
        rotary_drag: Option<f64>,
        /// Operating frequency for the rotary estimate (Hz).
        #[arg(long)]
        frequency: Option<f64>,
    },
}

struct Failure {
    code: i32,
    message: String,
}

fn input_error(message: impl std::fmt::Display) -> Failure {
    Failure {
        code: EXIT_INPUT,
        message: message.to_string(),
    }
}

fn read(path: &Path) -> Result<String, Failure> {
    std::fs::read_to_string(path).map_err(|e| input_error(format!("{}: {e}", path.display())))
}

/// Defaults, then `$REVKIT_PARAMS` or `--params`, then `--set` overrides.
fn resolve_params(cli: &Cli) -> Result<TechnologyParams, Failure> {
    let file = cli.params.clone().or_else(|| {
        std::env::var_os(PARAMS_ENV)
            .filter(|v| !v.is_empty())
            .map(PathBuf::from)
    });
    let mut params = match file {
        Some(path) => TechnologyParams::from_file(&path).map_err(input_error)?,
        None => TechnologyParams::default(),
    };
    for o in &cli.overrides {
        let (key, value) = o
            .split_once('=')
            .ok_or_else(|| input_error(format!("--set expects KEY=VALUE, got `{o}`")))?;
        let value: f64 = value
            .trim()
            .parse()
            .map_err(|_| input_error(format!("--set {key}: `{value}` is not a number")))?;
        params.set(key.trim(), value).map_err(input_error)?;
    }
    params.validate().map_err(input_error)?;
    Ok(params)
}

fn header(cli: &Cli, command: &str) -> String {
    format!("# revkit {command} seed={}\n", cli.seed)
}

fn emit_json(cli: &Cli, command: &str, mut body: Value) -> String {
    if let Value::Object(map) = &mut body {
        map.insert("command".into(), json!(command));
        map.insert("seed".into(), json!(cli.seed));
    }
    serde_json::to_string_pretty(&body).expect("serializable") + "\n"
}

fn csv_rows(cli: &Cli, command: &str, rows: &[(&str, String, &str)]) -> String {
    let mut s = header(cli, command);
    s += "quantity,value,unit\n";
    for (k, v, u) in rows {
        let _ = writeln!(s, "{k},{v},{u}");
    }
    s
}

fn cmd_classify(
    cli: &Cli,
    op_path: &Path,
    dist_path: Option<&Path>,
    temp: Option<f64>,
    samples: usize,
) -> Result<String, Failure> {
    let doc = grc::format::parse_document(&read(op_path)?)
        .map_err(|e| input_error(format!("{}: {e}", op_path.display())))?;
    let op = doc
        .op
        .ok_or_else(|| input_error(format!("{}: no `map` lines", op_path.display())))?;
    let dist = match dist_path {
        Some(p) => Some(
            grc::format::parse_distribution(&read(p)?)
                .map_err(|e| input_error(format!("{}: {e}", p.display())))?,
        ),
        None => doc.dist,
    };
    if let Some(d) = &dist {
        if d.space() != op.space() {
            return Err(input_error(
                "distribution and operation have different widths",
            ));
        }
    }
    let temp = match temp {
        Some(t) => {
            landauer_limit(t).map_err(input_error)?;
            Some(t)
        }
        None => None,
    };
    let class = classify(&op);
    let loss = match &dist {
        Some(d) => Some((
            information_loss(&op, d, temp).map_err(input_error)?,
            verify_no_merge(&op, d).map_err(input_error)?,
        )),
        None => None,
    };
    let mut max_sampled: Option<f64> = None;
    if samples > 0 {
        let mut rng = ChaCha8Rng::seed_from_u64(cli.seed);
        let pre = op.precondition().clone();
        let mut worst = 0.0f64;
        for _ in 0..samples {
            let d = Distribution::random_over(op.space(), &mut rng, |s| pre.allows(s))
                .map_err(input_error)?;
            worst = worst.max(information_loss(&op, &d, None).map_err(input_error)?.loss);
        }
        max_sampled = Some(worst);
    }

    let witness = |v: &MergeVerdict| match v {
        MergeVerdict::NoMerge => None,
        MergeVerdict::Merged(w) => Some(w.to_string()),
    };
    Ok(match cli.format {
        Format::Json => {
            let mut body = json!({
                "class": class,
                "width": op.space().width(),
                "precondition_states": op.precondition().count(),
            });
            if let Some((report, verdict)) = &loss {
                body["loss"] = json!(report);
                body["no_merge"] = json!(verdict.is_no_merge());
                body["merge_witness"] = json!(witness(verdict));
            }
            if let Some(m) = max_sampled {
                body["sampled_distributions"] = json!(samples);
                body["max_sampled_loss"] = json!(m);
            }
            emit_json(cli, "classify", body)
        }
        Format::Csv => {
            let mut rows = vec![
                ("class", class.to_string(), ""),
                (
                    "precondition_states",
                    op.precondition().count().to_string(),
                    "states",
                ),
            ];
            if let Some((r, v)) = &loss {
                rows.push(("input_entropy", format!("{:?}", r.input_entropy), "bits"));
                rows.push(("output_entropy", format!("{:?}", r.output_entropy), "bits"));
                rows.push(("loss", format!("{:?}", r.loss), "bits"));
                rows.push(("no_merge", v.is_no_merge().to_string(), ""));
                if let Some(h) = r.min_heat {
                    rows.push(("min_heat", format!("{h:?}"), "J"));
                }
            }
            if let Some(m) = max_sampled {
                rows.push(("max_sampled_loss", format!("{m:?}"), "bits"));
            }
            csv_rows(cli, "classify", &rows)
        }
        Format::Text => {
            let mut s = header(cli, "classify");
            let _ = writeln!(s, "class: {class}");
            let _ = writeln!(
                s,
                "states: {} (precondition allows {})",
                op.space().size(),
                op.precondition().count()
            );
            if let Some((r, v)) = &loss {
                let _ = writeln!(s, "input entropy: {:.6} bits", r.input_entropy);
                let _ = writeln!(s, "output entropy: {:.6} bits", r.output_entropy);
                let _ = writeln!(s, "loss: {:.6} bits", r.loss);
                match witness(v) {
                    None => s += "merges: none on the support\n",
                    Some(w) => {
                        let _ = writeln!(s, "merges: {w}");
                    }
                }
                if let (Some(t), Some(h)) = (r.temperature, r.min_heat) {
                    let _ = writeln!(s, "min heat at {t} K: {h:.6e} J");
                }
            }
            if let Some(m) = max_sampled {
                let _ = writeln!(s, "max loss over {samples} random distributions on the precondition: {m:.3e} bits");
            }
            s
        }
    })
}

fn schedule_csv(s: &ReversibleSchedule) -> String {
    let mut out = String::from("step,kind,wires,direction\n");
    for (i, g) in s.steps().iter().enumerate() {
        let wires: Vec<String> = g.wiring().iter().map(|w| w.to_string()).collect();
        let _ = writeln!(
            out,
            "{},{},{},{}",
            i + 1,
            g.kind().name(),
            wires.join(" "),
            g.direction().name()
        );
    }
    out
}

fn cmd_compile(
    cli: &Cli,
    net: &Path,
    verify: bool,
    output: Option<&Path>,
) -> Result<(String, i32), Failure> {
    let dag = parse_dag(&read(net)?).map_err(|e| input_error(format!("{}: {e}", net.display())))?;
    let schedule = bennett_embed(&dag).map_err(input_error)?;
    let report = if verify {
        match verify_schedule(&schedule, &dag) {
            Ok(r) => Some(r),
            Err(e @ VerifyError::WidthCapExceeded(_)) => {
                return Err(Failure {
                    code: EXIT_VERIFY,
                    message: format!("cannot verify: {e}"),
                })
            }
            Err(e) => return Err(input_error(e)),
        }
    } else {
        None
    };
    let code = match &report {
        Some(r) if !r.passed() => EXIT_VERIFY,
        _ => EXIT_OK,
    };
    let layout = schedule.layout();
    let schedule_text = match cli.format {
        Format::Csv => schedule_csv(&schedule),
        _ => schedule.to_string(),
    };
    if let Some(path) = output {
        std::fs::write(path, &schedule_text)
            .map_err(|e| input_error(format!("{}: {e}", path.display())))?;
    }
    let out = match cli.format {
        Format::Json => {
            let mut body = json!({
                "inputs": layout.inputs,
                "ancillas": layout.ancillas,
                "results": layout.results,
                "width": layout.width(),
                "steps": schedule.len(),
            });
            if output.is_none() {
                body["schedule"] = json!(schedule_text.lines().collect::<Vec<_>>());
            }
            if let Some(r) = &report {
                body["verify"] = json!(r);
                body["passed"] = json!(r.passed());
            }
            emit_json(cli, "compile", body)
        }
        Format::Csv | Format::Text => {
            let mut s = header(cli, "compile");
            if output.is_none() {
                s += &schedule_text;
                if !s.ends_with('\n') {
                    s.push('\n');
                }
            }
            let _ = writeln!(
                s,
                "# {} steps, {} inputs, {} ancillas, {} results",
                schedule.len(),
                layout.inputs,
                layout.ancillas,
                layout.results
            );
            if let Some(r) = &report {
                for line in r.to_string().lines() {
                    let _ = writeln!(s, "# {line}");
                }
            }
            s
        }
    };
    Ok((out, code))
}

fn bits(b: &[bool]) -> String {
    b.iter().map(|&x| if x { '1' } else { '0' }).collect()
}

fn cmd_sim(
    cli: &Cli,
    path: &Path,
    cycles: Option<usize>,
    tau: Option<f64>,
    trace_path: Option<&Path>,
) -> Result<String, Failure> {
    let doc = twolal::parse_circuit(&read(path)?)
        .map_err(|e| input_error(format!("{}: {e}", path.display())))?;
    let mut params = resolve_params(cli)?;
    if let Some(t) = tau {
        params = params.with_ramp_time(t);
        params.validate().map_err(input_error)?;
    }
    let cycles = cycles.or(doc.cycles).unwrap_or(1);
    if cycles == 0 {
        return Err(input_error(SimError::ZeroCycles));
    }
    let want_trace = trace_path.is_some() || cli.format == Format::Csv;
    let result =
        simulate(&doc.circuit, &doc.schedule, params, cycles, want_trace).map_err(|e| match e {
            SimError::LevelConflict { .. } => Failure {
                code: EXIT_CONFLICT,
                message: e.to_string(),
            },
            other => input_error(other),
        })?;
    let summary =
        energy_summary(&result.ledger, doc.circuit.transistor_count()).map_err(input_error)?;
    if let Some(p) = trace_path {
        let file =
            std::fs::File::create(p).map_err(|e| input_error(format!("{}: {e}", p.display())))?;
        write_trace_csv(&result.trace, std::io::BufWriter::new(file))
            .map_err(|e| input_error(format!("{}: {e}", p.display())))?;
    }
    let register = doc.shift_register.as_ref().map(|(sr, input)| {
        let out = sr.output_bits(&result);
        let expected = pure_delay(input, sr.stages, out.len());
        (bits(input), bits(&out), bits(&expected), out == expected)
    });

    Ok(match cli.format {
        Format::Csv => {
            let mut buf = header(cli, "sim").into_bytes();
            write_trace_csv(&result.trace, &mut buf).expect("in-memory write");
            String::from_utf8(buf).expect("utf-8 trace")
        }
        Format::Json => {
            let mut body = json!({
                "cycles": cycles,
                "ticks": result.ledger.ticks,
                "ramp_time": params.ramp_time,
                "summary": summary,
                "dual_rail_faults": result.dual_rail_faults,
            });
            if let Some((input, out, expected, ok)) = &register {
                body["shift_register"] = json!({
                    "input": input, "output": out, "expected": expected, "matches_delay": ok,
                });
            }
            emit_json(cli, "sim", body)
        }
        Format::Text => {
            let mut s = header(cli, "sim");
            let _ = writeln!(
                s,
                "ramp time: {:e} s, RC/tau: {:.3e}, {} ticks",
                params.ramp_time,
                params.rc() / params.ramp_time,
                result.ledger.ticks
            );
            s += &summary.to_string();
            s.push('\n');
            if let Some((input, out, expected, ok)) = &register {
                let _ = writeln!(s, "input:    {input}");
                let _ = writeln!(s, "output:   {out}");
                let _ = writeln!(
                    s,
                    "expected: {expected} ({})",
                    if *ok { "match" } else { "MISMATCH" }
                );
            }
            s
        }
    })
}

#[allow(clippy::too_many_arguments)]
fn cmd_energy(
    cli: &Cli,
    temp: Option<f64>,
    device_energy: Option<f64>,
    ops_per_composite: Option<f64>,
    composite_per_watt: Option<f64>,
    rotary_drag: Option<f64>,
    frequency: Option<f64>,
) -> Result<String, Failure> {
    let mut params = resolve_params(cli)?;
    if let Some(t) = temp {
        params.temperature = t;
    }
    let t = params.temperature;
    let floor = landauer_limit(t).map_err(input_error)?;
    params.validate().map_err(input_error)?;
    let adiabatic = adiabatic_dissipation(&params);
    let cv2 = signal_energy(&params);

    let mut rows: Vec<(&str, f64, &str)> = vec![
        ("temperature", t, "K"),
        ("landauer_floor", floor, "J"),
        ("landauer_floor_ev", joules_to_ev(floor), "eV"),
        ("ramp_time", params.ramp_time, "s"),
        ("rc_over_tau", params.rc() / params.ramp_time, ""),
        ("adiabatic_per_transition", adiabatic, "J"),
        ("adiabatic_per_transition_ev", joules_to_ev(adiabatic), "eV"),
        ("signal_energy", cv2, "J"),
        ("signal_energy_ev", joules_to_ev(cv2), "eV"),
        (
            "leakage_per_transistor_per_interval",
            params.off_current * params.swing * params.ramp_time,
            "J",
        ),
    ];
    if let Some(e) = device_energy {
        rows.push(("device_energy", e, "J"));
        rows.push((
            "efficiency_ratio",
            efficiency_vs_landauer(e, t).map_err(input_error)?,
            "",
        ));
        let per = ops_per_composite.unwrap_or(1.0);
        rows.push((
            "composite_ops_per_watt",
            ops_per_watt(e, per).map_err(input_error)?,
            "1/J",
        ));
        if let Some(target) = composite_per_watt {
            rows.push((
                "implied_ops_per_composite",
                implied_ops_per_composite(e, target).map_err(input_error)?,
                "",
            ));
        }
    } else if ops_per_composite.is_some() || composite_per_watt.is_some() {
        return Err(input_error(
            "--ops-per-composite/--composite-per-watt need --device-energy",
        ));
    }
    if rotary_drag.is_some() || frequency.is_some() {
        let defaults = MechanicalParams::default();
        let mech = MechanicalParams {
            rotary_drag: rotary_drag.unwrap_or(defaults.rotary_drag),
            operating_frequency: frequency.unwrap_or(defaults.operating_frequency),
            nand_energy: device_energy.unwrap_or(defaults.nand_energy),
        };
        mech.validate().map_err(input_error)?;
        let drag = rotary_drag_power(&mech);
        rows.push(("rotary_drag_power", drag.power_watts, "W"));
        rows.push(("rotary_drag_per_cycle", drag.joules_per_op, "J"));
    }

    Ok(match cli.format {
        Format::Json => {
            let map: serde_json::Map<String, Value> = rows
                .iter()
                .map(|(k, v, _)| (k.to_string(), json!(v)))
                .collect();
            emit_json(cli, "energy", json!({ "figures": map }))
        }
        Format::Csv => {
            let rows: Vec<(&str, String, &str)> = rows
                .iter()
                .map(|(k, v, u)| (*k, format!("{v:?}"), *u))
                .collect();
            csv_rows(cli, "energy", &rows)
        }
        Format::Text => {
            let mut s = header(cli, "energy");
            let width = rows.iter().map(|(k, _, _)| k.len()).max().unwrap_or(0);
            for (k, v, u) in &rows {
                let _ = writeln!(s, "{k:<width$}  {v:.6e} {u}");
            }
            s
        }
    })
}

fn dispatch(cli: &Cli) -> Result<(String, i32), Failure> {
    match &cli.command {
        Command::Classify {
            op,
            dist,
            temp,
            samples,
        } => cmd_classify(cli, op, dist.as_deref(), *temp, *samples).map(|s| (s, EXIT_OK)),
        Command::Compile {
            net,
            verify,
            output,
        } => cmd_compile(cli, net, *verify, output.as_deref()),
        Command::Sim {
            circuit,
            cycles,
            tau,
            trace,
        } => cmd_sim(cli, circuit, *cycles, *tau, trace.as_deref()).map(|s| (s, EXIT_OK)),
        Command::Energy {
            temp,
            device_energy,
            ops_per_composite,
            composite_per_watt,
            rotary_drag,
            frequency,
        } => cmd_energy(
            cli,
            *temp,
            *device_energy,
            *ops_per_composite,
            *composite_per_watt,
            *rotary_drag,
            *frequency,
        )
        .map(|s| (s, EXIT_OK)),
    }
}

/// Run the command line `args` (including the program name), writing results
/// to `out` and diagnostics to `err`. Returns the process exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_INPUT } else { EXIT_OK };
            let target: &mut dyn Write = if e.use_stderr() { err } else { out };
            let _ = write!(target, "{}", e.render());
            return code;
        }
    };
    match dispatch(&cli) {
        Ok((text, code)) => {
            let _ = out.write_all(text.as_bytes());
            code
        }
        Err(f) => {
            let _ = writeln!(err, "error: {}", f.message);
            f.code
        }
    }
}
