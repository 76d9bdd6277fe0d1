//! Boolean gate netlists.
//!
//! Grammar (whitespace-insensitive, `#` comments to end of line, statements
//! terminated by `;`, the last terminator optional):
//!
//! ```text
//! in a b;
//! na = NOT a;
//! nb = NOT b;
//! t1 = AND a nb;
//! t2 = AND na b;
//! sum = OR t1 t2;
//! carry = AND a b;
//! out sum carry;
//! ```
//!
//! Gates may be listed in any order; they are sorted topologically and a
//! cycle is an error.

use std::collections::HashMap;
use std::fmt;

use thiserror::Error;

use crate::grc::BitState;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum GateOp {
    And,
    Or,
    Not,
}

impl GateOp {
    pub fn arity(self) -> usize {
        match self {
            GateOp::Not => 1,
            GateOp::And | GateOp::Or => 2,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            GateOp::And => "AND",
            GateOp::Or => "OR",
            GateOp::Not => "NOT",
        }
    }

    fn parse(s: &str) -> Option<Self> {
        match s.to_ascii_uppercase().as_str() {
            "AND" => Some(GateOp::And),
            "OR" => Some(GateOp::Or),
            "NOT" => Some(GateOp::Not),
            _ => None,
        }
    }

    pub fn eval(self, operands: &[bool]) -> bool {
        match self {
            GateOp::And => operands[0] && operands[1],
            GateOp::Or => operands[0] || operands[1],
            GateOp::Not => !operands[0],
        }
    }
}

/// A value in the DAG: a primary input or the output of a gate.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Signal {
    Input(usize),
    Node(usize),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DagNode {
    pub id: String,
    pub op: GateOp,
    pub operands: Vec<Signal>,
}

/// An acyclic netlist of AND/OR/NOT gates with nodes in topological order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GateDag {
    inputs: Vec<String>,
    nodes: Vec<DagNode>,
    outputs: Vec<Signal>,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DagError {
    #[error("line {line}, column {column}: {kind}")]
    Parse {
        line: usize,
        column: usize,
        kind: ParseErrorKind,
    },
    #[error("expected {expected} input bits, got {got}")]
    WidthMismatch { expected: usize, got: usize },
    #[error("invalid DAG: {0}")]
    Invalid(String),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseErrorKind {
    #[error("syntax error: {0}")]
    Syntax(String),
    #[error("cycle through `{0}`")]
    Cycle(String),
    #[error("unknown operand `{0}`")]
    UnknownOperand(String),
    #[error("{op} takes {expected} operands, got {got}")]
    BadArity {
        op: &'static str,
        expected: usize,
        got: usize,
    },
    #[error("duplicate id `{0}`")]
    DuplicateId(String),
}

impl GateDag {
    /// Build from parts; operands must refer to earlier nodes.
    pub fn new(
        inputs: Vec<String>,
        nodes: Vec<DagNode>,
        outputs: Vec<Signal>,
    ) -> Result<Self, DagError> {
        let check = |s: &Signal, limit: usize| match *s {
            Signal::Input(i) => i < inputs.len(),
            Signal::Node(n) => n < limit,
        };
        for (i, node) in nodes.iter().enumerate() {
            if node.operands.len() != node.op.arity() {
                return Err(DagError::Invalid(format!("{} has bad arity", node.id)));
            }
            if !node.operands.iter().all(|s| check(s, i)) {
                return Err(DagError::Invalid(format!(
                    "{} uses an operand that is not defined before it",
                    node.id
                )));
            }
        }
        if outputs.is_empty() || !outputs.iter().all(|s| check(s, nodes.len())) {
            return Err(DagError::Invalid(
                "outputs must name existing signals".into(),
            ));
        }
        Ok(Self {
            inputs,
            nodes,
            outputs,
        })
    }

    pub fn inputs(&self) -> &[String] {
        &self.inputs
    }

    pub fn nodes(&self) -> &[DagNode] {
        &self.nodes
    }

    pub fn outputs(&self) -> &[Signal] {
        &self.outputs
    }

    pub fn gate_count(&self) -> usize {
        self.nodes.len()
    }

    pub fn signal_name(&self, s: Signal) -> &str {
        match s {
            Signal::Input(i) => &self.inputs[i],
            Signal::Node(n) => &self.nodes[n].id,
        }
    }
}

impl fmt::Display for GateDag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "in {};", self.inputs.join(" "))?;
        for node in &self.nodes {
            write!(f, "{} = {}", node.id, node.op.name())?;
            for s in &node.operands {
                write!(f, " {}", self.signal_name(*s))?;
            }
            writeln!(f, ";")?;
        }
        let outs: Vec<&str> = self.outputs.iter().map(|s| self.signal_name(*s)).collect();
        writeln!(f, "out {};", outs.join(" "))
    }
}

/// Topological evaluation; returns the outputs in declaration order.
pub fn evaluate_dag(dag: &GateDag, input: &BitState) -> Result<BitState, DagError> {
    if input.width() != dag.inputs.len() {
        return Err(DagError::WidthMismatch {
            expected: dag.inputs.len(),
            got: input.width(),
        });
    }
    let mut values = Vec::with_capacity(dag.nodes.len());
    let read = |values: &Vec<bool>, s: Signal| match s {
        Signal::Input(i) => input.get(i),
        Signal::Node(n) => values[n],
    };
    for node in &dag.nodes {
        let operands: Vec<bool> = node.operands.iter().map(|s| read(&values, *s)).collect();
        values.push(node.op.eval(&operands));
    }
    let outputs: Vec<bool> = dag.outputs.iter().map(|s| read(&values, *s)).collect();
    Ok(BitState::from_bits(&outputs))
}

struct Token<'a> {
    text: &'a str,
    line: usize,
    column: usize,
}

/// Statements as token lists, split on `;`, comments removed.
fn statements(text: &str) -> Vec<Vec<Token<'_>>> {
    let mut out = Vec::new();
    let mut current = Vec::new();
    for (ln, raw) in text.lines().enumerate() {
        let content = raw.split('#').next().unwrap_or("");
        let mut rest = content;
        let mut offset = 0;
        loop {
            let trimmed = rest.trim_start();
            offset += rest.len() - trimmed.len();
            if trimmed.is_empty() {
                break;
            }
            if let Some(after) = trimmed.strip_prefix(';') {
                out.push(std::mem::take(&mut current));
                offset += 1;
                rest = after;
                continue;
            }
            let end = trimmed
                .find(|c: char| c.is_whitespace() || c == ';')
                .unwrap_or(trimmed.len());
            current.push(Token {
                text: &trimmed[..end],
                line: ln + 1,
                column: offset + 1,
            });
            offset += end;
            rest = &trimmed[end..];
        }
    }
    out.push(current);
    out.retain(|s| !s.is_empty());
    out
}

fn err(tok: &Token<'_>, kind: ParseErrorKind) -> DagError {
    DagError::Parse {
        line: tok.line,
        column: tok.column,
        kind,
    }
}

fn valid_ident(s: &str) -> bool {
    let mut chars = s.chars();
    matches!(chars.next(), Some(c) if c.is_ascii_alphabetic() || c == '_')
        && chars.all(|c| c.is_ascii_alphanumeric() || c == '_' || c == '.')
}

struct RawGate<'a> {
    id: Token<'a>,
    op: GateOp,
    operands: Vec<Token<'a>>,
}

pub fn parse_dag(text: &str) -> Result<GateDag, DagError> {
    let mut inputs: Vec<String> = Vec::new();
    let mut gates: Vec<RawGate<'_>> = Vec::new();
    let mut outputs: Vec<Token<'_>> = Vec::new();
    let mut names: HashMap<&str, ()> = HashMap::new();

    for stmt in statements(text) {
        let head = &stmt[0];
        match head.text {
            "in" => {
                for tok in &stmt[1..] {
                    if !valid_ident(tok.text) {
                        return Err(err(
                            tok,
                            ParseErrorKind::Syntax(format!("bad name `{}`", tok.text)),
                        ));
                    }
                    if names.insert(tok.text, ()).is_some() {
                        return Err(err(tok, ParseErrorKind::DuplicateId(tok.text.into())));
                    }
                    inputs.push(tok.text.to_string());
                }
            }
            "out" => {
                if stmt.len() < 2 {
                    return Err(err(
                        head,
                        ParseErrorKind::Syntax("`out` needs at least one id".into()),
                    ));
                }
                outputs.extend(stmt.into_iter().skip(1));
            }
            _ => {
                let mut it = stmt.into_iter();
                let id = it.next().expect("non-empty statement");
                if !valid_ident(id.text) {
                    return Err(err(
                        &id,
                        ParseErrorKind::Syntax(format!("unexpected `{}`", id.text)),
                    ));
                }
                let eq = it
                    .next()
                    .ok_or_else(|| err(&id, ParseErrorKind::Syntax("expected `=`".into())))?;
                if eq.text != "=" {
                    return Err(err(
                        &eq,
                        ParseErrorKind::Syntax(format!("expected `=`, found `{}`", eq.text)),
                    ));
                }
                let op_tok = it
                    .next()
                    .ok_or_else(|| err(&eq, ParseErrorKind::Syntax("expected a gate".into())))?;
                let op = GateOp::parse(op_tok.text).ok_or_else(|| {
                    err(
                        &op_tok,
                        ParseErrorKind::Syntax(format!("unknown gate `{}`", op_tok.text)),
                    )
                })?;
                let operands: Vec<Token<'_>> = it.collect();
                if operands.len() != op.arity() {
                    return Err(err(
                        &op_tok,
                        ParseErrorKind::BadArity {
                            op: op.name(),
                            expected: op.arity(),
                            got: operands.len(),
                        },
                    ));
                }
                if names.insert(id.text, ()).is_some() {
                    return Err(err(&id, ParseErrorKind::DuplicateId(id.text.into())));
                }
                gates.push(RawGate { id, op, operands });
            }
        }
    }

    let input_index: HashMap<&str, usize> = inputs
        .iter()
        .enumerate()
        .map(|(i, n)| (n.as_str(), i))
        .collect();
    let gate_index: HashMap<&str, usize> = gates
        .iter()
        .enumerate()
        .map(|(i, g)| (g.id.text, i))
        .collect();

    // resolve operands, then Kahn's algorithm in declaration order
    let mut deps: Vec<Vec<usize>> = Vec::with_capacity(gates.len());
    for g in &gates {
        let mut d = Vec::new();
        for tok in &g.operands {
            if input_index.contains_key(tok.text) {
                continue;
            }
            match gate_index.get(tok.text) {
                Some(&j) => d.push(j),
                None => return Err(err(tok, ParseErrorKind::UnknownOperand(tok.text.into()))),
            }
        }
        deps.push(d);
    }
    let mut order: Vec<usize> = Vec::with_capacity(gates.len());
    let mut placed = vec![false; gates.len()];
    while order.len() < gates.len() {
        let next = (0..gates.len()).find(|&i| !placed[i] && deps[i].iter().all(|&j| placed[j]));
        match next {
            Some(i) => {
                placed[i] = true;
                order.push(i);
            }
            None => {
                let stuck = (0..gates.len())
                    .find(|&i| !placed[i])
                    .expect("some gate unplaced");
                let g = &gates[stuck];
                return Err(err(&g.id, ParseErrorKind::Cycle(g.id.text.into())));
            }
        }
    }
    let mut position = vec![0usize; gates.len()];
    for (pos, &i) in order.iter().enumerate() {
        position[i] = pos;
    }
    let resolve = |name: &str| -> Option<Signal> {
        input_index
            .get(name)
            .map(|&i| Signal::Input(i))
            .or_else(|| gate_index.get(name).map(|&g| Signal::Node(position[g])))
    };

    let nodes: Vec<DagNode> = order
        .iter()
        .map(|&i| {
            let g = &gates[i];
            DagNode {
                id: g.id.text.to_string(),
                op: g.op,
                operands: g
                    .operands
                    .iter()
                    .map(|t| resolve(t.text).expect("resolved above"))
                    .collect(),
            }
        })
        .collect();

    if outputs.is_empty() {
        return Err(DagError::Parse {
            line: 0,
            column: 0,
            kind: ParseErrorKind::Syntax("no `out` statement".into()),
        });
    }
    let mut out_signals = Vec::with_capacity(outputs.len());
    for tok in &outputs {
        out_signals.push(
            resolve(tok.text)
                .ok_or_else(|| err(tok, ParseErrorKind::UnknownOperand(tok.text.into())))?,
        );
    }
    GateDag::new(inputs, nodes, out_signals)
}

#[cfg(test)]
mod tests {
    use super::*;

    pub(crate) const HALF_ADDER: &str = "\
# sum = a xor b, carry = a and b
in a b;
na = NOT a;
nb = NOT b;
t1 = AND a nb;
t2 = AND na b;
sum = OR t1 t2;
carry = AND a b;
out sum carry;
";

    fn bits(s: &str) -> BitState {
        BitState::parse(s).unwrap()
    }

    #[test]
    fn smallest_netlist() {
        let dag = parse_dag("in a b; n1 = AND a b; out n1").unwrap();
        assert_eq!(dag.gate_count(), 1);
        assert_eq!(evaluate_dag(&dag, &bits("11")).unwrap(), bits("1"));
        assert_eq!(evaluate_dag(&dag, &bits("10")).unwrap(), bits("0"));
    }

    #[test]
    fn half_adder() {
        let dag = parse_dag(HALF_ADDER).unwrap();
        assert_eq!(dag.gate_count(), 6);
        for (x, expected) in [("00", "00"), ("01", "10"), ("10", "10"), ("11", "01")] {
            assert_eq!(
                evaluate_dag(&dag, &bits(x)).unwrap(),
                bits(expected),
                "input {x}"
            );
        }
    }

    #[test]
    fn expanded_xor_has_five_nodes() {
        let dag = parse_dag(
            "in a b; na = NOT a; nb = NOT b; t1 = AND a nb; t2 = AND na b; s = OR t1 t2; out s;",
        )
        .unwrap();
        assert_eq!(dag.gate_count(), 5);
        assert_eq!(evaluate_dag(&dag, &bits("11")).unwrap(), bits("0"));
        assert_eq!(evaluate_dag(&dag, &bits("01")).unwrap(), bits("1"));
    }

    #[test]
    fn forward_references_are_sorted() {
        let dag = parse_dag("in a; y = NOT x; x = NOT a; out y").unwrap();
        assert_eq!(dag.nodes()[0].id, "x");
        assert_eq!(evaluate_dag(&dag, &bits("1")).unwrap(), bits("1"));
    }

    #[test]
    fn self_reference_is_a_cycle() {
        let e = parse_dag("in a b; n1 = AND a n1; out n1").unwrap_err();
        assert!(
            matches!(e, DagError::Parse { kind: ParseErrorKind::Cycle(ref id), line: 1, column: 9 } if id == "n1"),
            "{e}"
        );
        let e = parse_dag("in a;\nx = NOT y;\ny = NOT x;\nout x").unwrap_err();
        assert!(matches!(
            e,
            DagError::Parse {
                kind: ParseErrorKind::Cycle(_),
                line: 2,
                ..
            }
        ));
    }

    #[test]
    fn structural_errors() {
        let e = parse_dag("in a; n = AND a zz; out n").unwrap_err();
        assert!(
            matches!(
                e,
                DagError::Parse {
                    kind: ParseErrorKind::UnknownOperand(_),
                    column: 17,
                    ..
                }
            ),
            "{e}"
        );
        let e = parse_dag("in a b; n = NOT a b; out n").unwrap_err();
        assert!(matches!(
            e,
            DagError::Parse {
                kind: ParseErrorKind::BadArity {
                    expected: 1,
                    got: 2,
                    ..
                },
                ..
            }
        ));
        let e = parse_dag("in a b;\nn = NOT a;\nn = NOT b;\nout n").unwrap_err();
        assert!(matches!(
            e,
            DagError::Parse {
                kind: ParseErrorKind::DuplicateId(_),
                line: 3,
                column: 1
            }
        ));
        let e = parse_dag("in a a; out a").unwrap_err();
        assert!(matches!(
            e,
            DagError::Parse {
                kind: ParseErrorKind::DuplicateId(_),
                ..
            }
        ));
        assert!(parse_dag("in a; n = XOR a a; out n").is_err());
        assert!(parse_dag("in a; out q").is_err());
        assert!(parse_dag("in a;").is_err());
    }

    #[test]
    fn width_mismatch() {
        let dag = parse_dag("in a b; n1 = AND a b; out n1").unwrap();
        assert!(matches!(
            evaluate_dag(&dag, &bits("1")),
            Err(DagError::WidthMismatch {
                expected: 2,
                got: 1
            })
        ));
    }

    #[test]
    fn display_reparses() {
        let dag = parse_dag(HALF_ADDER).unwrap();
        assert_eq!(parse_dag(&dag.to_string()).unwrap(), dag);
    }
}
