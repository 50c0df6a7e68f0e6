//! Plain-text system files.
//!
//! ```text
//! # comment
//! vertices 3
//! edge 1 2
//! edge 2 3
//! table 1 [1 2] 0110
//! formula 2 x1 ^ x3
//! circuit 3 in 1; in 2; xor 1 2; out 3
//! step 1 2
//! step 3
//! ```
//!
//! Vertices are numbered from 1. A table lists its argument order, which must
//! be the ascending closed neighbourhood of the vertex, then `2^k` bits with
//! the first argument as the most significant. Formula and circuit variables
//! `x1..xk` refer to the same ascending order. `step` lines give the update
//! schedule in order; without any the schedule is synchronous.

use std::fmt::Write as _;

use fixpoint_core::repr::Circuit;
use fixpoint_core::{FunctionRepr, Network, System, TruthTable, UpdateSchedule};
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
#[error("line {line}: {message}")]
pub struct ParseError {
    pub line: usize,
    pub message: String,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SystemFile {
    pub system: System,
    pub schedule: Option<UpdateSchedule>,
}

fn err(line: usize, message: impl Into<String>) -> ParseError {
    ParseError {
        line,
        message: message.into(),
    }
}

fn number(line: usize, word: &str, n: Option<usize>) -> Result<usize, ParseError> {
    let v: usize = word
        .parse()
        .map_err(|_| err(line, format!("expected a vertex number, got {word:?}")))?;
    match n {
        Some(n) if v == 0 || v > n => Err(err(line, format!("vertex {v} outside 1..{n}"))),
        None if v == 0 => Err(err(line, "vertex numbers start at 1")),
        _ => Ok(v - 1),
    }
}

struct Lines {
    n: usize,
    edges: Vec<(usize, usize)>,
    /// (line, vertex, kind, rest of the line)
    functions: Vec<(usize, usize, String, String)>,
    steps: Vec<Vec<usize>>,
}

fn scan(text: &str, allow_functions: bool) -> Result<Lines, ParseError> {
    let mut n = None;
    let mut lines = Lines {
        n: 0,
        edges: Vec::new(),
        functions: Vec::new(),
        steps: Vec::new(),
    };
    for (i, raw) in text.lines().enumerate() {
        let line = i + 1;
        let content = raw.split('#').next().unwrap_or("").trim();
        if content.is_empty() {
            continue;
        }
        let (head, rest) = content
            .split_once(char::is_whitespace)
            .map(|(h, r)| (h, r.trim()))
            .unwrap_or((content, ""));
        if head != "vertices" && n.is_none() {
            return Err(err(line, "the first entry must be `vertices N`"));
        }
        match head {
            "vertices" => {
                if n.is_some() {
                    return Err(err(line, "`vertices` given twice"));
                }
                let v = rest
                    .parse()
                    .map_err(|_| err(line, format!("expected a vertex count, got {rest:?}")))?;
                n = Some(v);
                lines.n = v;
            }
            "edge" => {
                let words: Vec<&str> = rest.split_whitespace().collect();
                let [a, b] = words[..] else {
                    return Err(err(line, "`edge` takes two vertices"));
                };
                lines.edges.push((number(line, a, n)?, number(line, b, n)?));
            }
            "table" | "formula" | "circuit" if allow_functions => {
                let (v, body) = rest
                    .split_once(char::is_whitespace)
                    .ok_or_else(|| err(line, format!("`{head}` needs a vertex and a body")))?;
                let v = number(line, v, n)?;
                lines
                    .functions
                    .push((line, v, head.to_string(), body.trim().to_string()));
            }
            "step" if allow_functions => {
                let step = rest
                    .split_whitespace()
                    .map(|w| number(line, w, n))
                    .collect::<Result<_, _>>()?;
                lines.steps.push(step);
            }
            other => return Err(err(line, format!("unknown entry {other:?}"))),
        }
    }
    if n.is_none() {
        return Err(err(0, "missing `vertices N`"));
    }
    Ok(lines)
}

/// Reads a file holding only `vertices` and `edge` entries.
pub fn parse_network(text: &str) -> Result<Network, ParseError> {
    let lines = scan(text, false)?;
    Network::new(lines.n, lines.edges).map_err(|e| err(0, e.to_string()))
}

fn parse_table(line: usize, body: &str, scope: &[usize]) -> Result<TruthTable, ParseError> {
    let open = body
        .strip_prefix('[')
        .ok_or_else(|| err(line, "a table starts with its argument order `[...]`"))?;
    let (order, bits) = open
        .split_once(']')
        .ok_or_else(|| err(line, "unclosed argument order"))?;
    let order = order
        .split_whitespace()
        .map(|w| number(line, w, None))
        .collect::<Result<Vec<_>, _>>()?;
    if order != scope {
        let want: Vec<String> = scope.iter().map(|v| (v + 1).to_string()).collect();
        return Err(err(
            line,
            format!("argument order must be [{}]", want.join(" ")),
        ));
    }
    TruthTable::parse(bits.trim(), scope.len()).map_err(|e| err(line, e.to_string()))
}

pub fn parse_system(text: &str) -> Result<SystemFile, ParseError> {
    let lines = scan(text, true)?;
    let n = lines.n;
    let network = Network::new(n, lines.edges).map_err(|e| err(0, e.to_string()))?;
    let mut functions: Vec<Option<FunctionRepr>> = vec![None; n];
    for (line, v, kind, body) in lines.functions {
        if functions[v].is_some() {
            return Err(err(line, format!("vertex {} has two functions", v + 1)));
        }
        let scope = network.closed_neighborhood(v);
        let k = scope.len();
        let f = match kind.as_str() {
            "table" => FunctionRepr::Table(parse_table(line, &body, &scope)?),
            "formula" => FunctionRepr::formula(&body, k).map_err(|e| err(line, e.to_string()))?,
            _ => FunctionRepr::Circuit(
                Circuit::parse(&body, k).map_err(|e| err(line, e.to_string()))?,
            ),
        };
        functions[v] = Some(f);
    }
    let functions = functions
        .into_iter()
        .enumerate()
        .map(|(v, f)| f.ok_or_else(|| err(0, format!("vertex {} has no function", v + 1))))
        .collect::<Result<Vec<_>, _>>()?;
    let system = System::new(network, functions).map_err(|e| err(0, e.to_string()))?;
    let schedule = if lines.steps.is_empty() {
        None
    } else {
        Some(UpdateSchedule::new(n, lines.steps).map_err(|e| err(0, e.to_string()))?)
    };
    Ok(SystemFile { system, schedule })
}

pub fn print_network(g: &Network) -> String {
    let mut out = format!("vertices {}\n", g.vertex_count());
    for (u, v) in g.edges() {
        writeln!(out, "edge {} {}", u + 1, v + 1).unwrap();
    }
    out
}

pub fn print_system(file: &SystemFile) -> String {
    let s = &file.system;
    let mut out = print_network(s.network());
    for v in 0..s.vertex_count() {
        match s.function(v) {
            FunctionRepr::Table(t) => {
                let order: Vec<String> = s.scope(v).iter().map(|w| (w + 1).to_string()).collect();
                writeln!(out, "table {} [{}] {t}", v + 1, order.join(" ")).unwrap();
            }
            FunctionRepr::Formula { formula, .. } => {
                writeln!(out, "formula {} {formula}", v + 1).unwrap()
            }
            FunctionRepr::Circuit(c) => writeln!(out, "circuit {} {c}", v + 1).unwrap(),
        }
    }
    if let Some(schedule) = &file.schedule {
        for step in schedule.steps() {
            let vs: Vec<String> = step.iter().map(|w| (w + 1).to_string()).collect();
            writeln!(out, "step {}", vs.join(" ")).unwrap();
        }
    }
    out
}
