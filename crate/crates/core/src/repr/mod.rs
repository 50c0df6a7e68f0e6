//! Representations of local transition functions.

mod circuit;
mod formula;
mod parse;
mod table;

use std::collections::BTreeSet;
use std::fmt;

use thiserror::Error;

pub use circuit::{Circuit, Gate};
pub use formula::Formula;
pub use parse::parse_formula;
pub use table::{TruthTable, MAX_TABLE_ARITY};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ReprError {
    #[error("syntax error at offset {offset}: {message}")]
    Syntax { offset: usize, message: String },
    #[error("variable x{index} exceeds arity {arity}")]
    VariableOutOfRange { index: usize, arity: usize },
    #[error("expected {expected} arguments, got {got}")]
    ArgumentCount { expected: usize, got: usize },
    #[error("arity {arity} exceeds the table conversion cap {cap}")]
    ArityCapExceeded { arity: usize, cap: usize },
    #[error("table length {0} is not a power of two")]
    TableLength(usize),
    #[error("table of length {len} does not match arity {arity}")]
    TableLengthForArity { len: usize, arity: usize },
    #[error("invalid table character {0:?}")]
    TableChar(char),
    #[error("invalid circuit: {0}")]
    Circuit(String),
}

/// Connective kinds appearing in formulas and circuits.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Operator {
    Not,
    And,
    Or,
    Xor,
    Const,
    Maj,
    S00,
    S10,
}

impl fmt::Display for Operator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Operator::Not => "not",
            Operator::And => "and",
            Operator::Or => "or",
            Operator::Xor => "xor",
            Operator::Const => "const",
            Operator::Maj => "maj",
            Operator::S00 => "s00",
            Operator::S10 => "s10",
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum ReprKind {
    Table,
    Formula,
    Circuit,
}

impl fmt::Display for ReprKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            ReprKind::Table => "table",
            ReprKind::Formula => "formula",
            ReprKind::Circuit => "circuit",
        })
    }
}

/// A local function in one of the three representations.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum FunctionRepr {
    Table(TruthTable),
    Formula { arity: usize, formula: Formula },
    Circuit(Circuit),
}

impl FunctionRepr {
    pub fn formula(text: &str, arity: usize) -> Result<Self, ReprError> {
        Ok(FunctionRepr::Formula {
            arity,
            formula: parse_formula(text, arity)?,
        })
    }

    pub fn kind(&self) -> ReprKind {
        match self {
            FunctionRepr::Table(_) => ReprKind::Table,
            FunctionRepr::Formula { .. } => ReprKind::Formula,
            FunctionRepr::Circuit(_) => ReprKind::Circuit,
        }
    }

    pub fn arity(&self) -> usize {
        match self {
            FunctionRepr::Table(t) => t.arity(),
            FunctionRepr::Formula { arity, .. } => *arity,
            FunctionRepr::Circuit(c) => c.arity(),
        }
    }

    /// Evaluates with argument `j` supplied by `arg(j)`; no length check.
    pub fn eval_with<F: Fn(usize) -> bool>(&self, arg: F) -> bool {
        match self {
            FunctionRepr::Table(t) => t.eval_with(arg),
            FunctionRepr::Formula { formula, .. } => formula.eval_with(&arg),
            FunctionRepr::Circuit(c) => c.eval_with(arg),
        }
    }

    pub fn evaluate(&self, args: &[bool]) -> Result<bool, ReprError> {
        if args.len() != self.arity() {
            return Err(ReprError::ArgumentCount {
                expected: self.arity(),
                got: args.len(),
            });
        }
        Ok(self.eval_with(|j| args[j]))
    }

    /// Tabulates the function; fails above `cap` arguments.
    pub fn to_table(&self, cap: usize) -> Result<TruthTable, ReprError> {
        let k = self.arity();
        if let FunctionRepr::Table(t) = self {
            return Ok(t.clone());
        }
        if k > cap.min(MAX_TABLE_ARITY) {
            return Err(ReprError::ArityCapExceeded { arity: k, cap });
        }
        Ok(TruthTable::from_fn(k, |idx| {
            self.eval_with(|j| idx >> (k - 1 - j) & 1 == 1)
        }))
    }

    pub fn dualize(&self) -> FunctionRepr {
        match self {
            FunctionRepr::Table(t) => FunctionRepr::Table(t.dual()),
            FunctionRepr::Formula { arity, formula } => FunctionRepr::Formula {
                arity: *arity,
                formula: formula.dual(),
            },
            FunctionRepr::Circuit(c) => FunctionRepr::Circuit(c.dual()),
        }
    }

    /// Operators present in a formula or circuit; `None` for tables.
    pub fn syntactic_basis(&self) -> Option<BTreeSet<Operator>> {
        match self {
            FunctionRepr::Table(_) => None,
            FunctionRepr::Formula { formula, .. } => Some(formula.operators()),
            FunctionRepr::Circuit(c) => Some(c.operators()),
        }
    }

    /// Formula symbol count, circuit gate count, or table length.
    pub fn size(&self) -> usize {
        match self {
            FunctionRepr::Table(t) => t.len(),
            FunctionRepr::Formula { formula, .. } => formula.size(),
            FunctionRepr::Circuit(c) => c.size(),
        }
    }
}
