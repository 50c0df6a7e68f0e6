use num_bigint::BigUint;
use num_traits::{One, Zero};

use super::{Count, CountError};
use crate::post::linear_coefficients;
use crate::repr::{Formula, FunctionRepr, Gate};
use crate::system::System;

/// `(a_0, [a_1, ..., a_k])` when `f` is affine over GF(2).
///
/// Formulas and circuits built from variables, constants, negation and Xor
/// are read off syntactically; anything else is tabulated when its arity
/// is at most `cap`.
pub fn vertex_coefficients(f: &FunctionRepr, cap: usize) -> Option<(bool, Vec<bool>)> {
    let k = f.arity();
    let syntactic = match f {
        FunctionRepr::Table(_) => None,
        FunctionRepr::Formula { formula, .. } => {
            let mut coeffs = vec![false; k];
            formula_parity(formula, &mut coeffs).map(|a0| (a0, coeffs))
        }
        FunctionRepr::Circuit(c) => {
            let mut at: Vec<Option<(bool, Vec<bool>)>> = Vec::with_capacity(c.size());
            for gate in c.gates() {
                let v = match *gate {
                    Gate::Input(j) => {
                        let mut v = vec![false; k];
                        v[j] = true;
                        Some((false, v))
                    }
                    Gate::Const(b) => Some((b, vec![false; k])),
                    Gate::Not(a) => at[a].clone().map(|(c0, v)| (!c0, v)),
                    Gate::Xor(a, b) => match (&at[a], &at[b]) {
                        (Some((ca, va)), Some((cb, vb))) => {
                            Some((ca ^ cb, va.iter().zip(vb).map(|(x, y)| x ^ y).collect()))
                        }
                        _ => None,
                    },
                    _ => None,
                };
                at.push(v);
            }
            at[c.output()].take()
        }
    };
    if syntactic.is_some() {
        return syntactic;
    }
    let table = f.to_table(cap).ok()?;
    let coeffs = linear_coefficients(&table)?;
    Some((coeffs[0], coeffs[1..].to_vec()))
}

/// Toggles the coefficients of `f` into `coeffs`; returns the constant.
fn formula_parity(f: &Formula, coeffs: &mut [bool]) -> Option<bool> {
    match f {
        Formula::Var(j) => {
            coeffs[*j] ^= true;
            Some(false)
        }
        Formula::Const(b) => Some(*b),
        Formula::Not(g) => formula_parity(g, coeffs).map(|c| !c),
        Formula::Xor(cs) => cs
            .iter()
            .try_fold(false, |acc, c| formula_parity(c, coeffs).map(|x| acc ^ x)),
        Formula::And(cs) | Formula::Or(cs) if cs.len() == 1 => formula_parity(&cs[0], coeffs),
        _ => None,
    }
}

/// Rank of the fixed-point equations, or `None` if they are inconsistent.
pub fn linear_rank(s: &System, cap: usize) -> Result<Option<usize>, CountError> {
    let n = s.vertex_count();
    let words = n.div_ceil(64) + 1;
    let rhs_word = words - 1;
    let mut rows: Vec<Vec<u64>> = Vec::with_capacity(n);
    for v in 0..n {
        let (a0, coeffs) = vertex_coefficients(s.function(v), cap)
            .ok_or(CountError::NonLinearFunction { vertex: v })?;
        let mut row = vec![0u64; words];
        // a_0 ⊕ Σ a_j x_j ⊕ x_v = 0
        for (&w, &a) in s.scope(v).iter().zip(&coeffs) {
            if a {
                row[w / 64] ^= 1 << (w % 64);
            }
        }
        row[v / 64] ^= 1 << (v % 64);
        if a0 {
            row[rhs_word] = 1;
        }
        rows.push(row);
    }
    let mut rank = 0;
    for col in 0..n {
        let (word, bit) = (col / 64, 1u64 << (col % 64));
        let Some(pivot) = (rank..n).find(|&r| rows[r][word] & bit != 0) else {
            continue;
        };
        rows.swap(rank, pivot);
        let (head, tail) = rows.split_at_mut(rank + 1);
        let prow = &head[rank];
        for row in tail.iter_mut() {
            if row[word] & bit != 0 {
                for (x, y) in row.iter_mut().zip(prow).skip(word) {
                    *x ^= y;
                }
            }
        }
        rank += 1;
    }
    let consistent = rows[rank..].iter().all(|r| r[rhs_word] == 0);
    Ok(consistent.then_some(rank))
}

/// Gaussian elimination: `2^(n - rank)` solutions, or zero.
pub fn count_linear(s: &System, cap: usize) -> Result<Count, CountError> {
    Ok(match linear_rank(s, cap)? {
        Some(rank) => BigUint::one() << (s.vertex_count() - rank),
        None => BigUint::zero(),
    })
}
