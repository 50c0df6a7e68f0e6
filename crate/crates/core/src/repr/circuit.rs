use std::collections::BTreeSet;
use std::fmt;

use super::{Formula, Operator, ReprError};

/// A gate; operands are indices of earlier gates.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Gate {
    /// Reads argument `j` (0-based).
    Input(usize),
    Const(bool),
    Not(usize),
    And(usize, usize),
    Or(usize, usize),
    Xor(usize, usize),
    Maj(usize, usize, usize),
    S00(usize, usize, usize),
    S10(usize, usize, usize),
}

impl Gate {
    fn operands(&self) -> Vec<usize> {
        match *self {
            Gate::Input(_) | Gate::Const(_) => vec![],
            Gate::Not(a) => vec![a],
            Gate::And(a, b) | Gate::Or(a, b) | Gate::Xor(a, b) => vec![a, b],
            Gate::Maj(a, b, c) | Gate::S00(a, b, c) | Gate::S10(a, b, c) => vec![a, b, c],
        }
    }

    fn operator(&self) -> Option<Operator> {
        Some(match self {
            Gate::Input(_) => return None,
            Gate::Const(_) => Operator::Const,
            Gate::Not(_) => Operator::Not,
            Gate::And(..) => Operator::And,
            Gate::Or(..) => Operator::Or,
            Gate::Xor(..) => Operator::Xor,
            Gate::Maj(..) => Operator::Maj,
            Gate::S00(..) => Operator::S00,
            Gate::S10(..) => Operator::S10,
        })
    }
}

/// Boolean circuit as a topologically ordered gate list.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Circuit {
    arity: usize,
    gates: Vec<Gate>,
    output: usize,
}

impl Circuit {
    /// Checks that operands point backwards, the output exists and the
    /// input gates read each argument exactly once.
    pub fn new(arity: usize, gates: Vec<Gate>, output: usize) -> Result<Self, ReprError> {
        let mut seen = vec![false; arity];
        for (g, gate) in gates.iter().enumerate() {
            if let Some(&bad) = gate.operands().iter().find(|&&o| o >= g) {
                return Err(ReprError::Circuit(format!(
                    "gate {} references gate {} which is not earlier",
                    g + 1,
                    bad + 1
                )));
            }
            if let Gate::Input(j) = *gate {
                if j >= arity {
                    return Err(ReprError::VariableOutOfRange {
                        index: j + 1,
                        arity,
                    });
                }
                if std::mem::replace(&mut seen[j], true) {
                    return Err(ReprError::Circuit(format!(
                        "argument {} has two input gates",
                        j + 1
                    )));
                }
            }
        }
        if let Some(j) = seen.iter().position(|s| !s) {
            return Err(ReprError::Circuit(format!(
                "argument {} has no input gate",
                j + 1
            )));
        }
        if output >= gates.len() {
            return Err(ReprError::Circuit(format!(
                "output gate {} does not exist",
                output + 1
            )));
        }
        Ok(Circuit {
            arity,
            gates,
            output,
        })
    }

    /// Input gates first, then one binary gate per n-ary connective.
    pub fn from_formula(formula: &Formula, arity: usize) -> Result<Self, ReprError> {
        if let Some(j) = formula.max_var().filter(|&j| j >= arity) {
            return Err(ReprError::VariableOutOfRange {
                index: j + 1,
                arity,
            });
        }
        let mut gates: Vec<Gate> = (0..arity).map(Gate::Input).collect();
        let output = lower(formula, &mut gates);
        Circuit::new(arity, gates, output)
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    pub fn gates(&self) -> &[Gate] {
        &self.gates
    }

    pub fn output(&self) -> usize {
        self.output
    }

    /// Gate count including inputs.
    pub fn size(&self) -> usize {
        self.gates.len()
    }

    pub fn eval_with<F: Fn(usize) -> bool>(&self, arg: F) -> bool {
        let mut val: Vec<bool> = Vec::with_capacity(self.gates.len());
        for gate in &self.gates {
            let v = match *gate {
                Gate::Input(j) => arg(j),
                Gate::Const(b) => b,
                Gate::Not(a) => !val[a],
                Gate::And(a, b) => val[a] && val[b],
                Gate::Or(a, b) => val[a] || val[b],
                Gate::Xor(a, b) => val[a] ^ val[b],
                Gate::Maj(a, b, c) => {
                    (val[a] && val[b]) || (val[a] && val[c]) || (val[b] && val[c])
                }
                Gate::S00(a, b, c) => val[a] || (val[b] && val[c]),
                Gate::S10(a, b, c) => val[a] && (val[b] || val[c]),
            };
            val.push(v);
        }
        val[self.output]
    }

    /// Dual circuit; every Xor gate is followed by a fresh Not gate.
    pub fn dual(&self) -> Circuit {
        let mut gates = Vec::with_capacity(self.gates.len());
        let mut at = Vec::with_capacity(self.gates.len());
        for gate in &self.gates {
            let m = |i: usize| at[i];
            let new = match *gate {
                Gate::Input(j) => Gate::Input(j),
                Gate::Const(b) => Gate::Const(!b),
                Gate::Not(a) => Gate::Not(m(a)),
                Gate::And(a, b) => Gate::Or(m(a), m(b)),
                Gate::Or(a, b) => Gate::And(m(a), m(b)),
                Gate::Xor(a, b) => Gate::Xor(m(a), m(b)),
                Gate::Maj(a, b, c) => Gate::Maj(m(a), m(b), m(c)),
                Gate::S00(a, b, c) => Gate::S10(m(a), m(b), m(c)),
                Gate::S10(a, b, c) => Gate::S00(m(a), m(b), m(c)),
            };
            gates.push(new);
            if matches!(new, Gate::Xor(..)) {
                gates.push(Gate::Not(gates.len() - 1));
            }
            at.push(gates.len() - 1);
        }
        Circuit {
            arity: self.arity,
            output: at[self.output],
            gates,
        }
    }

    pub fn operators(&self) -> BTreeSet<Operator> {
        self.gates.iter().filter_map(Gate::operator).collect()
    }

    /// Parses `in 1; in 2; and 1 2; out 3`.
    ///
    /// Gate operands are 1-based gate numbers; `in j` reads argument `j`.
    pub fn parse(text: &str, arity: usize) -> Result<Self, ReprError> {
        let mut gates = Vec::new();
        let mut output = None;
        for (k, item) in text.split(';').enumerate() {
            let words: Vec<&str> = item.split_whitespace().collect();
            let Some((&head, rest)) = words.split_first() else {
                continue;
            };
            let err = |m: &str| ReprError::Circuit(format!("item {}: {m}", k + 1));
            let nums = rest
                .iter()
                .map(|w| match w.parse::<usize>() {
                    Ok(0) | Err(_) => Err(err(&format!("expected a positive integer, got {w:?}"))),
                    Ok(v) => Ok(v - 1),
                })
                .collect::<Result<Vec<_>, _>>();
            let want = |count: usize| -> Result<Vec<usize>, ReprError> {
                let nums = nums.clone()?;
                if nums.len() != count {
                    return Err(err(&format!("{head} takes {count} operand(s)")));
                }
                Ok(nums)
            };
            if output.is_some() {
                return Err(err("nothing may follow the out item"));
            }
            let gate = match head {
                "in" => Gate::Input(want(1)?[0]),
                "const" => match rest {
                    ["0"] => Gate::Const(false),
                    ["1"] => Gate::Const(true),
                    _ => return Err(err("const takes 0 or 1")),
                },
                "not" => Gate::Not(want(1)?[0]),
                "and" | "or" | "xor" => {
                    let v = want(2)?;
                    match head {
                        "and" => Gate::And(v[0], v[1]),
                        "or" => Gate::Or(v[0], v[1]),
                        _ => Gate::Xor(v[0], v[1]),
                    }
                }
                "maj" | "s00" | "s10" => {
                    let v = want(3)?;
                    match head {
                        "maj" => Gate::Maj(v[0], v[1], v[2]),
                        "s00" => Gate::S00(v[0], v[1], v[2]),
                        _ => Gate::S10(v[0], v[1], v[2]),
                    }
                }
                "out" => {
                    output = Some(want(1)?[0]);
                    continue;
                }
                other => return Err(err(&format!("unknown gate {other:?}"))),
            };
            gates.push(gate);
        }
        let output = output.ok_or_else(|| ReprError::Circuit("missing out item".into()))?;
        Circuit::new(arity, gates, output)
    }
}

fn lower(f: &Formula, gates: &mut Vec<Gate>) -> usize {
    let push = |g: Gate, gates: &mut Vec<Gate>| {
        gates.push(g);
        gates.len() - 1
    };
    match f {
        Formula::Var(j) => *j,
        Formula::Const(b) => push(Gate::Const(*b), gates),
        Formula::Not(g) => {
            let a = lower(g, gates);
            push(Gate::Not(a), gates)
        }
        Formula::And(cs) | Formula::Or(cs) | Formula::Xor(cs) => {
            let mut acc = lower(&cs[0], gates);
            for c in &cs[1..] {
                let b = lower(c, gates);
                let g = match f {
                    Formula::And(_) => Gate::And(acc, b),
                    Formula::Or(_) => Gate::Or(acc, b),
                    _ => Gate::Xor(acc, b),
                };
                acc = push(g, gates);
            }
            acc
        }
        Formula::Maj(t) | Formula::S00(t) | Formula::S10(t) => {
            let a = lower(&t[0], gates);
            let b = lower(&t[1], gates);
            let c = lower(&t[2], gates);
            let g = match f {
                Formula::Maj(_) => Gate::Maj(a, b, c),
                Formula::S00(_) => Gate::S00(a, b, c),
                _ => Gate::S10(a, b, c),
            };
            push(g, gates)
        }
    }
}

impl fmt::Display for Circuit {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for gate in &self.gates {
            match *gate {
                Gate::Input(j) => write!(f, "in {}", j + 1)?,
                Gate::Const(b) => write!(f, "const {}", b as u8)?,
                Gate::Not(a) => write!(f, "not {}", a + 1)?,
                Gate::And(a, b) => write!(f, "and {} {}", a + 1, b + 1)?,
                Gate::Or(a, b) => write!(f, "or {} {}", a + 1, b + 1)?,
                Gate::Xor(a, b) => write!(f, "xor {} {}", a + 1, b + 1)?,
                Gate::Maj(a, b, c) => write!(f, "maj {} {} {}", a + 1, b + 1, c + 1)?,
                Gate::S00(a, b, c) => write!(f, "s00 {} {} {}", a + 1, b + 1, c + 1)?,
                Gate::S10(a, b, c) => write!(f, "s10 {} {} {}", a + 1, b + 1, c + 1)?,
            }
            f.write_str("; ")?;
        }
        write!(f, "out {}", self.output + 1)
    }
}
