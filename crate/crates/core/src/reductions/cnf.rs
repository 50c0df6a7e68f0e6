//! Two-literal CNF formulas and their DIMACS-style text form.

use std::fmt;
use std::str::FromStr;

use super::ReductionError;

/// Clauses `(¬x_neg ∨ x_pos)`, variables 0-based.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HornFormula {
    vars: usize,
    clauses: Vec<(usize, usize)>,
}

/// Clauses `(x_a ∨ x_b)`, variables 0-based.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PositiveFormula {
    vars: usize,
    clauses: Vec<(usize, usize)>,
}

fn check_vars(vars: usize, clauses: &[(usize, usize)]) -> Result<(), ReductionError> {
    for &(a, b) in clauses {
        if let Some(&var) = [a, b].iter().find(|&&x| x >= vars) {
            return Err(ReductionError::VariableOutOfRange { var, vars });
        }
    }
    Ok(())
}

impl HornFormula {
    /// `clauses` holds `(negative, positive)` pairs.
    pub fn new(vars: usize, clauses: Vec<(usize, usize)>) -> Result<Self, ReductionError> {
        check_vars(vars, &clauses)?;
        Ok(HornFormula { vars, clauses })
    }

    pub fn var_count(&self) -> usize {
        self.vars
    }

    pub fn clauses(&self) -> &[(usize, usize)] {
        &self.clauses
    }

    pub fn satisfied_by(&self, assignment: &[bool]) -> bool {
        self.clauses
            .iter()
            .all(|&(neg, pos)| !assignment[neg] || assignment[pos])
    }
}

impl PositiveFormula {
    pub fn new(vars: usize, clauses: Vec<(usize, usize)>) -> Result<Self, ReductionError> {
        check_vars(vars, &clauses)?;
        Ok(PositiveFormula { vars, clauses })
    }

    pub fn var_count(&self) -> usize {
        self.vars
    }

    pub fn clauses(&self) -> &[(usize, usize)] {
        &self.clauses
    }

    pub fn satisfied_by(&self, assignment: &[bool]) -> bool {
        self.clauses
            .iter()
            .all(|&(a, b)| assignment[a] || assignment[b])
    }
}

/// Parses `p cnf n m` followed by `m` lines of two signed literals and `0`.
/// Lines starting with `c` are comments.
fn parse_dimacs(text: &str) -> Result<(usize, Vec<(i64, i64)>), ReductionError> {
    let bad = |line: usize, message: &str| ReductionError::Dimacs {
        line,
        message: message.to_string(),
    };
    let mut header: Option<(usize, usize)> = None;
    let mut clauses = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let line = i + 1;
        let trimmed = raw.trim();
        if trimmed.is_empty() || trimmed.starts_with('c') {
            continue;
        }
        let tokens: Vec<&str> = trimmed.split_whitespace().collect();
        if tokens[0] == "p" {
            if header.is_some() {
                return Err(bad(line, "second header"));
            }
            if tokens.len() != 4 || tokens[1] != "cnf" {
                return Err(bad(line, "expected `p cnf <vars> <clauses>`"));
            }
            let n = tokens[2]
                .parse()
                .map_err(|_| bad(line, "bad variable count"))?;
            let m = tokens[3]
                .parse()
                .map_err(|_| bad(line, "bad clause count"))?;
            header = Some((n, m));
            continue;
        }
        let Some((n, _)) = header else {
            return Err(bad(line, "clause before header"));
        };
        let lits: Vec<i64> = tokens
            .iter()
            .map(|t| t.parse::<i64>())
            .collect::<Result<_, _>>()
            .map_err(|_| bad(line, "literals must be integers"))?;
        if lits.len() != 3 || lits[2] != 0 {
            return Err(bad(line, "expected two literals and a terminating 0"));
        }
        for &l in &lits[..2] {
            if l == 0 || l.unsigned_abs() as usize > n {
                return Err(bad(line, "literal out of range"));
            }
        }
        clauses.push((lits[0], lits[1]));
    }
    let Some((n, m)) = header else {
        return Err(bad(0, "missing header"));
    };
    if clauses.len() != m {
        return Err(bad(
            0,
            &format!("header declares {m} clauses, found {}", clauses.len()),
        ));
    }
    Ok((n, clauses))
}

impl FromStr for HornFormula {
    type Err = ReductionError;

    fn from_str(text: &str) -> Result<Self, Self::Err> {
        let (n, raw) = parse_dimacs(text)?;
        let clauses = raw
            .into_iter()
            .enumerate()
            .map(|(k, (a, b))| match (a < 0, b < 0) {
                (true, false) => Ok(((-a) as usize - 1, b as usize - 1)),
                (false, true) => Ok(((-b) as usize - 1, a as usize - 1)),
                _ => Err(ReductionError::SignPattern {
                    clause: k + 1,
                    expected: "one negative and one positive literal",
                }),
            })
            .collect::<Result<_, _>>()?;
        HornFormula::new(n, clauses)
    }
}

impl FromStr for PositiveFormula {
    type Err = ReductionError;

    fn from_str(text: &str) -> Result<Self, Self::Err> {
        let (n, raw) = parse_dimacs(text)?;
        let clauses = raw
            .into_iter()
            .enumerate()
            .map(|(k, (a, b))| {
                if a > 0 && b > 0 {
                    Ok((a as usize - 1, b as usize - 1))
                } else {
                    Err(ReductionError::SignPattern {
                        clause: k + 1,
                        expected: "two positive literals",
                    })
                }
            })
            .collect::<Result<_, _>>()?;
        PositiveFormula::new(n, clauses)
    }
}

impl fmt::Display for HornFormula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "p cnf {} {}", self.vars, self.clauses.len())?;
        for &(neg, pos) in &self.clauses {
            writeln!(f, "-{} {} 0", neg + 1, pos + 1)?;
        }
        Ok(())
    }
}

impl fmt::Display for PositiveFormula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "p cnf {} {}", self.vars, self.clauses.len())?;
        for &(a, b) in &self.clauses {
            writeln!(f, "{} {} 0", a + 1, b + 1)?;
        }
        Ok(())
    }
}
