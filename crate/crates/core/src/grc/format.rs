//! Line-oriented text format for transition tables and distributions.
//!
//! ```text
//! # reversible OR on (A, B, Q)
//! space 3
//! map 100 101        # <in-bits> <out-bits>, most-significant variable first
//! pre 000            # one line per allowed initial state
//! p 000 0.25         # <bits> <probability>
//! ```
//!
//! * `space <width>` must come first (after comments and blank lines).
//! * States without a `map` line map to themselves.
//! * Without any `pre` line the precondition is the full space.
//! * A file with `map`/`pre` lines describes an op; a file with `p` lines
//!   describes a distribution. Both may appear in one file. States without a
//!   `p` line have probability zero.
//! * `#` starts a comment; blank lines are ignored.

use std::fmt::Write as _;

use super::distribution::Distribution;
use super::op::{ConditionedOp, Precondition};
use super::state::{BitState, StateSpace};
use super::GrcError;

#[derive(Debug, Clone, PartialEq)]
pub struct Document {
    pub space: StateSpace,
    pub op: Option<ConditionedOp>,
    pub dist: Option<Distribution>,
}

fn parse_error(line: usize, message: impl Into<String>) -> GrcError {
    GrcError::Parse {
        line,
        message: message.into(),
    }
}

fn parse_state(token: &str, space: StateSpace, line: usize) -> Result<BitState, GrcError> {
    let state = BitState::parse(token)
        .ok_or_else(|| parse_error(line, format!("`{token}` is not a bit string")))?;
    if state.width() != space.width() {
        return Err(parse_error(
            line,
            format!(
                "`{token}` has {} bits, space has {}",
                state.width(),
                space.width()
            ),
        ));
    }
    Ok(state)
}

pub fn parse_document(text: &str) -> Result<Document, GrcError> {
    let mut space: Option<StateSpace> = None;
    let mut map: Vec<Option<u32>> = Vec::new();
    let mut allowed: Vec<bool> = Vec::new();
    let mut mass: Vec<f64> = Vec::new();
    let (mut saw_op, mut saw_pre, mut saw_dist) = (false, false, false);

    for (n, raw) in text.lines().enumerate() {
        let line = n + 1;
        let content = raw.split('#').next().unwrap_or("").trim();
        if content.is_empty() {
            continue;
        }
        let tokens: Vec<&str> = content.split_whitespace().collect();
        let Some(sp) = space else {
            match tokens.as_slice() {
                ["space", w] => {
                    let width: usize = w
                        .parse()
                        .map_err(|_| parse_error(line, format!("bad width `{w}`")))?;
                    let s = StateSpace::new(width).map_err(|e| parse_error(line, e.to_string()))?;
                    map = vec![None; s.size()];
                    allowed = vec![false; s.size()];
                    mass = vec![0.0; s.size()];
                    space = Some(s);
                    continue;
                }
                _ => return Err(parse_error(line, "expected `space <width>` first")),
            }
        };
        match tokens.as_slice() {
            ["map", from, to] => {
                let from = parse_state(from, sp, line)?;
                let to = parse_state(to, sp, line)?;
                let slot = &mut map[from.index()];
                if slot.is_some() {
                    return Err(parse_error(line, format!("duplicate map for {from}")));
                }
                *slot = Some(to.value() as u32);
                saw_op = true;
            }
            ["pre", s] => {
                let s = parse_state(s, sp, line)?;
                allowed[s.index()] = true;
                saw_pre = true;
                saw_op = true;
            }
            ["p", s, prob] => {
                let s = parse_state(s, sp, line)?;
                let p: f64 = prob
                    .parse()
                    .map_err(|_| parse_error(line, format!("bad probability `{prob}`")))?;
                if mass[s.index()] != 0.0 {
                    return Err(parse_error(line, format!("duplicate probability for {s}")));
                }
                mass[s.index()] = p;
                saw_dist = true;
            }
            ["space", ..] => return Err(parse_error(line, "`space` given twice")),
            _ => return Err(parse_error(line, format!("unrecognized line `{content}`"))),
        }
    }

    let space = space.ok_or_else(|| parse_error(0, "missing `space <width>` header"))?;
    let op = if saw_op {
        let table = map
            .iter()
            .enumerate()
            .map(|(i, m)| m.unwrap_or(i as u32))
            .collect();
        let precondition = if saw_pre {
            Precondition::new(space, allowed)?
        } else {
            Precondition::full(space)
        };
        Some(ConditionedOp::new(space, table, precondition)?)
    } else {
        None
    };
    let dist = if saw_dist {
        Some(Distribution::new(space, mass)?)
    } else {
        None
    };
    Ok(Document { space, op, dist })
}

pub fn parse_op(text: &str) -> Result<ConditionedOp, GrcError> {
    parse_document(text)?
        .op
        .ok_or_else(|| parse_error(0, "no `map` or `pre` lines"))
}

pub fn parse_distribution(text: &str) -> Result<Distribution, GrcError> {
    parse_document(text)?
        .dist
        .ok_or_else(|| parse_error(0, "no `p` lines"))
}

/// Writes every `map` line, and `pre` lines unless the precondition is the
/// full space.
pub fn write_op(op: &ConditionedOp) -> String {
    let mut out = format!("space {}\n", op.space().width());
    for s in op.space().states() {
        let _ = writeln!(out, "map {s} {}", op.apply(s));
    }
    if !op.precondition().is_full() {
        for s in op.precondition().allowed_states() {
            let _ = writeln!(out, "pre {s}");
        }
    }
    out
}

/// Writes one `p` line per support state, with round-trip precision.
pub fn write_distribution(dist: &Distribution) -> String {
    let mut out = format!("space {}\n", dist.space().width());
    for s in dist.support() {
        let _ = writeln!(out, "p {s} {:?}", dist.probability(s));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::grc::gates::{make_gate, GateKind};
    use crate::grc::op::{classify, ReversibilityClass};

    const REV_OR: &str = "\
# Q <- A or B, reversible when Q starts at 0
space 3
map 001 000
map 010 011
map 100 101
map 110 111
pre 000
pre 010
pre 100
pre 110
";

    #[test]
    fn parses_rev_or() {
        let op = parse_op(REV_OR).unwrap();
        let lib = make_gate(GateKind::RevOr, &[0, 1, 2], StateSpace::new(3).unwrap()).unwrap();
        assert_eq!(op, lib);
        assert_eq!(classify(&op), ReversibilityClass::ConditionallyReversible);
    }

    #[test]
    fn writes_what_it_reads() {
        let op = parse_op(REV_OR).unwrap();
        assert_eq!(parse_op(&write_op(&op)).unwrap(), op);
        let d = parse_distribution("space 2\np 00 0.1\np 11 0.9\n").unwrap();
        assert_eq!(parse_distribution(&write_distribution(&d)).unwrap(), d);
    }

    #[test]
    fn combined_file() {
        let doc = parse_document("space 1\nmap 1 0\np 0 0.5\np 1 0.5\n").unwrap();
        assert!(doc.op.is_some() && doc.dist.is_some());
    }

    #[test]
    fn errors_carry_line_numbers() {
        let err = parse_op("space 2\nmap 00 01\nmap 0 1\n").unwrap_err();
        assert!(matches!(err, GrcError::Parse { line: 3, .. }), "{err}");
        let err = parse_op("map 0 1\n").unwrap_err();
        assert!(matches!(err, GrcError::Parse { line: 1, .. }));
        let err = parse_op("space 1\nmap 0 1\nmap 0 0\n").unwrap_err();
        assert!(matches!(err, GrcError::Parse { line: 3, .. }));
        let err = parse_op("space 1\nfrobnicate\n").unwrap_err();
        assert!(matches!(err, GrcError::Parse { line: 2, .. }));
        assert!(parse_op("space 30\n").is_err());
        assert!(parse_distribution("space 1\np 0 0.7\n").is_err());
        assert!(parse_op("").is_err());
    }
}
