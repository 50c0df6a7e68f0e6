//! Star-shaped systems whose centre formula encodes a positive 2CNF.

use super::{PositiveFormula, ReductionError};
use crate::repr::Formula;
use crate::system::{Network, System};

fn nonempty(h: &PositiveFormula) -> Result<(), ReductionError> {
    if h.clauses().is_empty() {
        Err(ReductionError::NoClauses)
    } else {
        Ok(())
    }
}

fn star(leaves: usize, centre: usize) -> Network {
    Network::new(leaves + 1, (0..leaves).map(|i| (i, centre))).expect("star edges are simple")
}

fn triple(op: fn(Formula, Formula, Formula) -> Formula, v: usize) -> Formula {
    op(Formula::Var(v), Formula::Var(v), Formula::Var(v))
}

/// Splits `clauses` at `⌊k/2⌋` and combines the halves with `node`.
fn balanced<L, N>(clauses: &[(usize, usize)], leaf: &L, node: &N) -> Formula
where
    L: Fn(usize, usize) -> Formula,
    N: Fn(Formula, Formula) -> Formula,
{
    if let [(a, b)] = clauses {
        return leaf(*a, *b);
    }
    let (left, right) = clauses.split_at(clauses.len() / 2);
    node(balanced(left, leaf, node), balanced(right, leaf, node))
}

/// Leaves `x_i` (vertices `0..n`) with `S10(x_i, x_i, x_i)` and centre `n` with
/// `A_m`, where `A_1 = S10(x_c, x_11, x_12)` and `A_k = S10(A_(k-1), x_k1, x_k2)`.
///
/// Fixed points: `#sat(h) + 2^n`.
pub fn pos2sat_to_s10_star(h: &PositiveFormula) -> Result<System, ReductionError> {
    nonempty(h)?;
    let n = h.var_count();
    let mut formulas: Vec<Formula> = (0..n).map(|i| triple(Formula::s10, i)).collect();
    let centre = h.clauses().iter().fold(Formula::Var(n), |acc, &(a, b)| {
        Formula::s10(acc, Formula::Var(a), Formula::Var(b))
    });
    formulas.push(centre);
    Ok(System::from_vertex_formulas(star(n, n), formulas).expect("formulas stay in scope"))
}

/// Vertex of variable `i` in the S00 and D2 stars; vertex 0 is the extra
/// leaf `x_0` and vertex `n + 1` the centre.
pub fn star_vertex(i: usize) -> usize {
    i + 1
}

fn extended_star(n: usize) -> Network {
    star(n + 1, n + 1)
}

/// Leaves `x_0, ..., x_n` with `S00(x_i, x_i, x_i)`; the centre computes
/// `S00(x_0, A_(1..m), x_(n+1))` with `A_i = S00(x_i1, x_i2, x_i2)` and
/// `A = S00(x_0, A_left, A_right)` on a `⌊k/2⌋` split.
///
/// Fixed points: `#sat(h) + 2^(n+1)`.
pub fn pos2sat_to_s00_star(h: &PositiveFormula) -> Result<System, ReductionError> {
    nonempty(h)?;
    let n = h.var_count();
    let x0 = || Formula::Var(0);
    let var = |i: usize| Formula::Var(star_vertex(i));
    let mut formulas: Vec<Formula> = (0..=n).map(|i| triple(Formula::s00, i)).collect();
    let a = balanced(
        h.clauses(),
        &|p, q| Formula::s00(var(p), var(q), var(q)),
        &|l, r| Formula::s00(x0(), l, r),
    );
    formulas.push(Formula::s00(x0(), a, Formula::Var(n + 1)));
    Ok(System::from_vertex_formulas(extended_star(n), formulas).expect("formulas stay in scope"))
}

/// Leaves `x_0, ..., x_n` with `maj(x_i, x_i, x_i)`; the centre computes
/// `A_(1..m)` with `A_i = maj(x_i1, x_i2, x_(n+1))` and
/// `A = maj(A_left, A_right, x_0)` on a `⌊k/2⌋` split.
///
/// Fixed points: `2 #sat(h) + 2^(n+1) - 2` when every variable occurs in
/// some clause.
pub fn pos2sat_to_d2_star(h: &PositiveFormula) -> Result<System, ReductionError> {
    nonempty(h)?;
    let n = h.var_count();
    let var = |i: usize| Formula::Var(star_vertex(i));
    let mut formulas: Vec<Formula> = (0..=n).map(|i| triple(Formula::maj, i)).collect();
    formulas.push(balanced(
        h.clauses(),
        &|p, q| Formula::maj(var(p), var(q), Formula::Var(n + 1)),
        &|l, r| Formula::maj(l, r, Formula::Var(0)),
    ));
    Ok(System::from_vertex_formulas(extended_star(n), formulas).expect("formulas stay in scope"))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::count::count_brute;
    use crate::repr::{FunctionRepr, Operator};
    use num_bigint::BigUint;
    use std::collections::BTreeSet;

    fn fp(s: &System) -> BigUint {
        count_brute(s, 26).unwrap()
    }

    fn pos(n: usize, clauses: &[(usize, usize)]) -> PositiveFormula {
        PositiveFormula::new(n, clauses.to_vec()).unwrap()
    }

    #[test]
    fn s10_examples() {
        assert_eq!(
            fp(&pos2sat_to_s10_star(&pos(2, &[(0, 1)])).unwrap()),
            BigUint::from(7u32)
        );
        assert_eq!(
            fp(&pos2sat_to_s10_star(&pos(1, &[(0, 0)])).unwrap()),
            BigUint::from(3u32)
        );
        assert_eq!(
            fp(&pos2sat_to_s10_star(&pos(2, &[(0, 1), (0, 1)])).unwrap()),
            BigUint::from(7u32)
        );
    }

    #[test]
    fn s00_examples() {
        assert_eq!(
            fp(&pos2sat_to_s00_star(&pos(2, &[(0, 1)])).unwrap()),
            BigUint::from(11u32)
        );
        assert_eq!(
            fp(&pos2sat_to_s00_star(&pos(1, &[(0, 0)])).unwrap()),
            BigUint::from(5u32)
        );
    }

    #[test]
    fn d2_examples() {
        assert_eq!(
            fp(&pos2sat_to_d2_star(&pos(2, &[(0, 1)])).unwrap()),
            BigUint::from(12u32)
        );
        assert_eq!(
            fp(&pos2sat_to_d2_star(&pos(1, &[(0, 0)])).unwrap()),
            BigUint::from(4u32)
        );
    }

    #[test]
    fn d2_with_an_absent_variable() {
        // x_3 never occurs: 2 * 6 + 2^4 - 2^(3 - 2 + 1) = 24
        let s = pos2sat_to_d2_star(&pos(3, &[(0, 1)])).unwrap();
        assert_eq!(fp(&s), BigUint::from(24u32));
    }

    #[test]
    fn no_clauses_rejected() {
        let h = pos(2, &[]);
        assert_eq!(
            pos2sat_to_s10_star(&h).unwrap_err(),
            ReductionError::NoClauses
        );
        assert_eq!(
            pos2sat_to_s00_star(&h).unwrap_err(),
            ReductionError::NoClauses
        );
        assert_eq!(
            pos2sat_to_d2_star(&h).unwrap_err(),
            ReductionError::NoClauses
        );
    }

    #[test]
    fn single_basis_operator() {
        let h = pos(3, &[(0, 1), (1, 2), (0, 2)]);
        type Build = fn(&PositiveFormula) -> Result<System, ReductionError>;
        let cases: [(Build, Operator); 3] = [
            (pos2sat_to_s10_star, Operator::S10),
            (pos2sat_to_s00_star, Operator::S00),
            (pos2sat_to_d2_star, Operator::Maj),
        ];
        for (build, op) in cases {
            let s = build(&h).unwrap();
            for f in s.functions() {
                assert_eq!(f.syntactic_basis(), Some(BTreeSet::from([op])));
                assert!(matches!(f, FunctionRepr::Formula { .. }));
            }
        }
    }

    #[test]
    fn balanced_split_shape() {
        // three clauses split as [1] | [2, 3]
        let h = pos(3, &[(0, 1), (1, 2), (0, 2)]);
        let s = pos2sat_to_s00_star(&h).unwrap();
        let FunctionRepr::Formula { formula, .. } = s.function(4) else {
            panic!("centre is a formula");
        };
        assert_eq!(
            formula.to_string(),
            "s00(x1, s00(x1, s00(x2, x3, x3), s00(x1, s00(x3, x4, x4), s00(x2, x4, x4))), x5)"
        );
    }
}
