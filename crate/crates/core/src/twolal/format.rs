//! Line-oriented circuit description and trace CSV.
//!
//! ```text
//! # OR element, inputs @0, drive @1, inputs restored @2
//! clock 16 4
//! signal A B D
//! element or Q A B D
//! driver A once 1 - 0
//! driver B once 0
//! driver D once - 1
//! cycles 1
//! ```
//!
//! Stanzas:
//!
//! * `clock TICKS INTERVALS` — ticks per interval, intervals per cycle;
//! * `signal NAME...` — dual-rail signals at rest;
//! * `tgate CONTROL RAIL RAIL` — rails are written `SIG.n` / `SIG.p`;
//! * `element or|and Q A B D`, `element buf Q A D` — `Q` is created if new;
//! * `driver SIG once|periodic T...` — one token per interval: `-` hold,
//!   a value in `[0, 1]` ramps there, `!value` steps there;
//! * `echo SIG WATCH PERIOD SAMPLE RELEASE` — reversible sampling sink;
//! * `shiftreg STAGES PATTERN` — a complete shift register fed `PATTERN`
//!   (only `clock` and `cycles` may accompany it);
//! * `cycles N` — default run length.

use std::io::{self, BufRead, Write};

use super::circuit::{ElementKind, TwoLalCircuit};
use super::clock::{ClockSchedule, Transition, Waveform, DEFAULT_TICKS_PER_INTERVAL};
use super::shift_register::{build_shift_register_with, ShiftRegister};
use super::sim::{RailMode, TraceRow};
use super::SimError;

#[derive(Debug, Clone, PartialEq)]
pub struct CircuitDocument {
    pub circuit: TwoLalCircuit,
    pub schedule: ClockSchedule,
    pub cycles: Option<usize>,
    pub shift_register: Option<(ShiftRegister, Vec<bool>)>,
}

fn err(line: usize, message: impl Into<String>) -> SimError {
    SimError::Parse {
        line,
        message: message.into(),
    }
}

fn parse_count(tok: Option<&str>, line: usize, what: &str) -> Result<usize, SimError> {
    let t = tok.ok_or_else(|| err(line, format!("missing {what}")))?;
    t.parse()
        .map_err(|_| err(line, format!("{what} `{t}` is not a non-negative integer")))
}

fn parse_transition(tok: &str, line: usize) -> Result<Transition, SimError> {
    if tok == "-" {
        return Ok(Transition::Hold);
    }
    let (step, num) = match tok.strip_prefix('!') {
        Some(rest) => (true, rest),
        None => (false, tok),
    };
    let v: f64 = num
        .parse()
        .map_err(|_| err(line, format!("bad driver token `{tok}`")))?;
    if !(0.0..=1.0).contains(&v) {
        return Err(err(line, format!("driver level {v} outside [0, 1]")));
    }
    Ok(if step {
        Transition::Step(v)
    } else {
        Transition::Ramp(v)
    })
}

pub fn parse_circuit(text: &str) -> Result<CircuitDocument, SimError> {
    let mut circuit = TwoLalCircuit::new();
    let mut ticks = DEFAULT_TICKS_PER_INTERVAL;
    let mut intervals = None;
    let mut drivers: Vec<(usize, String, Waveform)> = Vec::new();
    let mut echoes: Vec<(usize, String, String, [usize; 3])> = Vec::new();
    let mut cycles = None;
    let mut shiftreg: Option<(usize, usize, Vec<bool>)> = None;
    let mut structural = 0usize;

    let lookup = |c: &TwoLalCircuit, name: &str, line: usize| {
        c.signal_named(name)
            .ok_or_else(|| err(line, format!("unknown signal `{name}`")))
    };

    for (i, raw) in text.lines().enumerate() {
        let line = i + 1;
        let content = raw.split('#').next().unwrap_or("").trim();
        if content.is_empty() {
            continue;
        }
        let mut toks = content.split_whitespace();
        let keyword = toks.next().expect("non-empty line");
        let rest: Vec<&str> = toks.collect();
        let mut it = rest.iter().copied();
        match keyword {
            "clock" => {
                ticks = parse_count(it.next(), line, "ticks per interval")?;
                intervals = Some(parse_count(it.next(), line, "intervals per cycle")?);
                if ticks == 0 || intervals == Some(0) {
                    return Err(err(line, "clock counts must be positive"));
                }
            }
            "cycles" => cycles = Some(parse_count(it.next(), line, "cycle count")?),
            "signal" => {
                structural += 1;
                if rest.is_empty() {
                    return Err(err(line, "signal stanza names no signals"));
                }
                for name in &rest {
                    circuit
                        .add_signal(name)
                        .map_err(|e| err(line, e.to_string()))?;
                }
            }
            "tgate" => {
                structural += 1;
                let [c, a, b] = rest[..] else {
                    return Err(err(line, "usage: tgate CONTROL RAIL RAIL"));
                };
                let control = lookup(&circuit, c, line)?;
                let rail = |n: &str| {
                    circuit.rail_named(n).ok_or_else(|| {
                        err(line, format!("unknown rail `{n}` (write SIG.n or SIG.p)"))
                    })
                };
                let (a, b) = (rail(a)?, rail(b)?);
                circuit
                    .add_tgate(control, a, b)
                    .map_err(|e| err(line, e.to_string()))?;
            }
            "element" => {
                structural += 1;
                let kind = match it.next() {
                    Some("or") => ElementKind::Or,
                    Some("and") => ElementKind::And,
                    Some("buf") => ElementKind::Buffer,
                    other => return Err(err(line, format!("unknown element kind {other:?}"))),
                };
                let names: Vec<&str> = it.collect();
                let want = if kind == ElementKind::Buffer { 3 } else { 4 };
                if names.len() != want {
                    return Err(err(
                        line,
                        format!("{} element takes {want} signal names", kind.name()),
                    ));
                }
                let q = match circuit.signal_named(names[0]) {
                    Some(q) => q,
                    None => circuit
                        .add_signal(names[0])
                        .map_err(|e| err(line, e.to_string()))?,
                };
                let inputs = names[1..want - 1]
                    .iter()
                    .map(|n| lookup(&circuit, n, line))
                    .collect::<Result<Vec<_>, _>>()?;
                let drive = lookup(&circuit, names[want - 1], line)?;
                circuit
                    .add_element(kind, &inputs, drive, q)
                    .map_err(|e| err(line, e.to_string()))?;
            }
            "driver" => {
                let name = it
                    .next()
                    .ok_or_else(|| err(line, "driver needs a signal"))?;
                let mode = it
                    .next()
                    .ok_or_else(|| err(line, "driver needs once|periodic"))?;
                let program = it
                    .map(|t| parse_transition(t, line))
                    .collect::<Result<Vec<_>, _>>()?;
                let waveform = match mode {
                    "once" => Waveform::Sequence(program),
                    "periodic" if program.is_empty() => {
                        return Err(err(line, "periodic driver needs at least one token"))
                    }
                    "periodic" => Waveform::Periodic(program),
                    other => return Err(err(line, format!("unknown driver mode `{other}`"))),
                };
                drivers.push((line, name.to_string(), waveform));
            }
            "echo" => {
                let [sig, watch, p, s, r] = rest[..] else {
                    return Err(err(line, "usage: echo SIG WATCH PERIOD SAMPLE RELEASE"));
                };
                let nums = [
                    parse_count(Some(p), line, "period")?,
                    parse_count(Some(s), line, "sample interval")?,
                    parse_count(Some(r), line, "release interval")?,
                ];
                echoes.push((line, sig.to_string(), watch.to_string(), nums));
            }
            "shiftreg" => {
                if shiftreg.is_some() {
                    return Err(err(line, "only one shiftreg stanza allowed"));
                }
                let stages = parse_count(it.next(), line, "stage count")?;
                if stages == 0 {
                    return Err(err(line, "shift register needs at least one stage"));
                }
                let pattern = it.next().unwrap_or("");
                let bits = pattern
                    .chars()
                    .map(|c| match c {
                        '0' => Ok(false),
                        '1' => Ok(true),
                        _ => Err(err(line, format!("pattern `{pattern}` must be 0s and 1s"))),
                    })
                    .collect::<Result<Vec<_>, _>>()?;
                shiftreg = Some((line, stages, bits));
            }
            other => return Err(err(line, format!("unknown stanza `{other}`"))),
        }
    }

    if let Some((line, stages, bits)) = shiftreg {
        if structural > 0 || !drivers.is_empty() || !echoes.is_empty() {
            return Err(err(
                line,
                "shiftreg cannot be combined with other circuit stanzas",
            ));
        }
        if intervals.is_some_and(|n| n != 4) {
            return Err(err(line, "shift register runs on a 4-interval cycle"));
        }
        let mut sr =
            build_shift_register_with(stages, ticks).map_err(|e| err(line, e.to_string()))?;
        sr.load_pattern(&bits);
        return Ok(CircuitDocument {
            circuit: sr.circuit.clone(),
            schedule: sr.schedule.clone(),
            cycles: Some(cycles.unwrap_or_else(|| sr.cycles_for(bits.len()))),
            shift_register: Some((sr, bits)),
        });
    }

    let mut schedule = ClockSchedule::new(ticks, intervals.unwrap_or(4))?;
    for (line, name, waveform) in drivers {
        let s = lookup(&circuit, &name, line)?;
        schedule
            .drive(s, waveform)
            .map_err(|e| err(line, e.to_string()))?;
    }
    for (line, sig, watch, [period, sample_at, release_at]) in echoes {
        let s = lookup(&circuit, &sig, line)?;
        let watch = lookup(&circuit, &watch, line)?;
        schedule
            .drive(
                s,
                Waveform::Echo {
                    watch,
                    period,
                    sample_at,
                    release_at,
                },
            )
            .map_err(|e| err(line, e.to_string()))?;
    }
    Ok(CircuitDocument {
        circuit,
        schedule,
        cycles,
        shift_register: None,
    })
}

pub const TRACE_HEADER: &str = "tick,node,level,mode,event_kind,energy_J";

/// Levels and energies are written at round-trip precision; event rows leave
/// the level empty.
pub fn write_trace_csv<W: Write>(rows: &[TraceRow], mut out: W) -> io::Result<()> {
    writeln!(out, "{TRACE_HEADER}")?;
    for r in rows {
        let level = if r.level.is_nan() {
            String::new()
        } else {
            format!("{:?}", r.level)
        };
        writeln!(
            out,
            "{},{},{},{},{},{:?}",
            r.tick,
            r.node,
            level,
            r.mode.name(),
            r.event_kind,
            r.energy
        )?;
    }
    Ok(())
}

pub fn parse_trace_csv<R: BufRead>(input: R) -> Result<Vec<TraceRow>, SimError> {
    let mut rows = Vec::new();
    for (i, line) in input.lines().enumerate() {
        let line_no = i + 1;
        let line = line.map_err(|e| err(line_no, e.to_string()))?;
        if i == 0 {
            if line.trim() != TRACE_HEADER {
                return Err(err(1, "missing trace header"));
            }
            continue;
        }
        if line.trim().is_empty() {
            continue;
        }
        let f: Vec<&str> = line.split(',').collect();
        if f.len() != 6 {
            return Err(err(line_no, "expected 6 fields"));
        }
        let num = |s: &str| {
            s.parse::<f64>()
                .map_err(|_| err(line_no, format!("bad number `{s}`")))
        };
        rows.push(TraceRow {
            tick: f[0].parse().map_err(|_| err(line_no, "bad tick"))?,
            node: f[1].to_string(),
            level: if f[2].is_empty() {
                f64::NAN
            } else {
                num(f[2])?
            },
            mode: match f[3] {
                "held" => RailMode::Held,
                "ramping" => RailMode::Ramping,
                "floating" => RailMode::Floating,
                m => return Err(err(line_no, format!("bad mode `{m}`"))),
            },
            event_kind: f[4].to_string(),
            energy: num(f[5])?,
        });
    }
    Ok(rows)
}
