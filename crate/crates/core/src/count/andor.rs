//! Counting for systems whose functions are all ANDs (or all ORs).
//!
//! After constant propagation the fixed-point equations become
//! `x_i = min_{j ∈ J_i} x_j` on the remaining vertices. Values are constant
//! on each strongly connected component of the dependency digraph, and a
//! labelling of the components is a fixed point iff
//!
//! * a component labelled 1 has every predecessor labelled 1, and
//! * a single-vertex component without a loop labelled 0 has some
//!   predecessor labelled 0.
//!
//! The second condition is handled by inclusion-exclusion: such a
//! component's 0 splits into an unconstrained state with weight +1 and a
//! state forcing every predecessor to 1 with weight -1. What remains is a
//! product of binary constraints, counted over a tree decomposition of the
//! component DAG.

use std::collections::{BTreeSet, HashMap};

use num_bigint::Sign;

use super::bagdp::{solve, BagCsp};
use super::{Caps, Count, CountError};
use crate::graph::{scc_condensation, tree_decomposition, Digraph, Strategy};
use crate::post::{and_witness, or_witness, Witness};
use crate::repr::{Formula, FunctionRepr, Gate};
use crate::system::{Network, System};

/// A local function read as a constant or an AND over vertices.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Local {
    Const(bool),
    /// Vertex ids, ascending and nonempty.
    And(Vec<usize>),
}

/// An AND system, possibly obtained by dualizing an OR system.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AndOrSystem {
    pub dualized: bool,
    pub locals: Vec<Local>,
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum Kind {
    And,
    Or,
}

enum Form {
    Const(bool),
    Set(BTreeSet<usize>),
}

impl Form {
    fn finish(self, kind: Kind) -> Witness {
        match self {
            Form::Const(b) => Witness::Const(b),
            Form::Set(s) if s.is_empty() => Witness::Const(kind == Kind::And),
            Form::Set(s) => Witness::Over(s.into_iter().collect()),
        }
    }
}

/// `Set` means AND (resp. OR) of the set; an empty set is the neutral value.
fn combine(kind: Kind, parts: Vec<Form>) -> Form {
    let absorbing = kind == Kind::Or;
    let mut set = BTreeSet::new();
    for p in parts {
        match p {
            Form::Const(b) if b == absorbing => return Form::Const(b),
            Form::Const(_) => {}
            Form::Set(s) => set.extend(s),
        }
    }
    Form::Set(set)
}

fn formula_form(f: &Formula, kind: Kind) -> Option<Form> {
    match f {
        Formula::Var(j) => Some(Form::Set(BTreeSet::from([*j]))),
        Formula::Const(b) => Some(Form::Const(*b)),
        Formula::And(cs) if kind == Kind::And => {
            let parts = cs
                .iter()
                .map(|c| formula_form(c, kind))
                .collect::<Option<_>>()?;
            Some(combine(kind, parts))
        }
        Formula::Or(cs) if kind == Kind::Or => {
            let parts = cs
                .iter()
                .map(|c| formula_form(c, kind))
                .collect::<Option<_>>()?;
            Some(combine(kind, parts))
        }
        Formula::And(cs) | Formula::Or(cs) | Formula::Xor(cs) if cs.len() == 1 => {
            formula_form(&cs[0], kind)
        }
        _ => None,
    }
}

fn circuit_form(c: &crate::repr::Circuit, kind: Kind) -> Option<Form> {
    let mut at: Vec<Option<Form>> = Vec::with_capacity(c.size());
    let copy = |f: &Option<Form>| match f {
        Some(Form::Const(b)) => Some(Form::Const(*b)),
        Some(Form::Set(s)) => Some(Form::Set(s.clone())),
        None => None,
    };
    for gate in c.gates() {
        let f = match *gate {
            Gate::Input(j) => Some(Form::Set(BTreeSet::from([j]))),
            Gate::Const(b) => Some(Form::Const(b)),
            Gate::And(a, b) if kind == Kind::And => copy(&at[a])
                .zip(copy(&at[b]))
                .map(|(x, y)| combine(kind, vec![x, y])),
            Gate::Or(a, b) if kind == Kind::Or => copy(&at[a])
                .zip(copy(&at[b]))
                .map(|(x, y)| combine(kind, vec![x, y])),
            _ => None,
        };
        at.push(f);
    }
    at.swap_remove(c.output())
}

fn local_witness(f: &FunctionRepr, kind: Kind, cap: usize) -> Option<Witness> {
    let syntactic = match f {
        FunctionRepr::Table(_) => None,
        FunctionRepr::Formula { formula, .. } => formula_form(formula, kind),
        FunctionRepr::Circuit(c) => circuit_form(c, kind),
    };
    if let Some(form) = syntactic {
        return Some(form.finish(kind));
    }
    let table = f.to_table(cap).ok()?;
    match kind {
        Kind::And => and_witness(&table),
        Kind::Or => or_witness(&table),
    }
}

fn read_all(s: &System, kind: Kind, cap: usize) -> Result<Vec<Local>, usize> {
    (0..s.vertex_count())
        .map(|v| {
            let w = local_witness(s.function(v), kind, cap).ok_or(v)?;
            Ok(match w {
                Witness::Const(b) if kind == Kind::Or => Local::Const(!b),
                Witness::Const(b) => Local::Const(b),
                Witness::Over(j) => Local::And(j.into_iter().map(|p| s.scope(v)[p]).collect()),
            })
        })
        .collect()
}

/// Reads every function as an AND or constant, else every function as an
/// OR or constant (returned dualized). Arities up to `cap` are also
/// recognised semantically.
pub fn extract_and_or(s: &System, cap: usize) -> Result<AndOrSystem, CountError> {
    let and_err = match read_all(s, Kind::And, cap) {
        Ok(locals) => {
            return Ok(AndOrSystem {
                dualized: false,
                locals,
            })
        }
        Err(v) => v,
    };
    match read_all(s, Kind::Or, cap) {
        Ok(locals) => Ok(AndOrSystem {
            dualized: true,
            locals,
        }),
        Err(or_err) => Err(CountError::NotAndOr {
            vertex: and_err.max(or_err),
        }),
    }
}

/// Least fixpoint of forced values.
fn propagate(locals: &[Local]) -> Vec<Option<bool>> {
    let n = locals.len();
    let mut forced = vec![None; n];
    let mut users: Vec<Vec<usize>> = vec![Vec::new(); n];
    let mut pending = vec![0usize; n];
    let mut queue = Vec::new();
    for (i, l) in locals.iter().enumerate() {
        match l {
            Local::Const(b) => {
                forced[i] = Some(*b);
                queue.push(i);
            }
            Local::And(j) => {
                pending[i] = j.len();
                for &x in j {
                    users[x].push(i);
                }
            }
        }
    }
    while let Some(x) = queue.pop() {
        let value = forced[x].expect("queued vertices are forced");
        for &i in &users[x] {
            if forced[i].is_some() {
                continue;
            }
            if !value {
                forced[i] = Some(false);
                queue.push(i);
            } else {
                pending[i] -= 1;
                if pending[i] == 0 {
                    forced[i] = Some(true);
                    queue.push(i);
                }
            }
        }
    }
    forced
}

/// Counts an AND system given as locals.
pub fn count_and_system(sys: &AndOrSystem, width_cap: usize) -> Result<Count, CountError> {
    let locals = &sys.locals;
    let forced = propagate(locals);
    let free: Vec<usize> = (0..locals.len()).filter(|&v| forced[v].is_none()).collect();
    let mut index = HashMap::with_capacity(free.len());
    for (k, &v) in free.iter().enumerate() {
        index.insert(v, k);
    }
    let mut arcs = Vec::new();
    for (k, &v) in free.iter().enumerate() {
        let Local::And(j) = &locals[v] else {
            unreachable!("constants are forced")
        };
        for x in j {
            if let Some(&kx) = index.get(x) {
                arcs.push((kx, k));
            }
        }
    }
    let dag = Digraph::new(free.len(), arcs).expect("indices in range");
    let cond = scc_condensation(&dag);
    let c = cond.component_count();
    let skeleton = Network::from_edges_dedup(c, cond.dag_edges().iter().copied())
        .expect("component ids in range");
    let td = tree_decomposition(&skeleton, Strategy::MinFill);
    if td.width() > width_cap {
        return Err(CountError::DecompositionTooWide {
            width: td.width(),
            cap: width_cap,
        });
    }

    const ONE: usize = 0;
    const BLOCKED: usize = 2;
    let domain: Vec<usize> = (0..c)
        .map(|k| if cond.self_witnessed(k) { 2 } else { 3 })
        .collect();
    // arcs inside each bag, as positions within the bag
    let mut succ: Vec<Vec<usize>> = vec![Vec::new(); c];
    for &(a, b) in cond.dag_edges() {
        succ[a].push(b);
    }
    let bag_arcs: Vec<Vec<(usize, usize)>> = td
        .bags()
        .iter()
        .map(|bag| {
            let mut out = Vec::new();
            for (pa, &a) in bag.iter().enumerate() {
                for b in &succ[a] {
                    if let Ok(pb) = bag.binary_search(b) {
                        out.push((pa, pb));
                    }
                }
            }
            out
        })
        .collect();
    let allowed = |bag: usize, _: &[usize], vals: &[usize]| {
        bag_arcs[bag]
            .iter()
            .all(|&(a, b)| vals[a] == ONE || (vals[b] != ONE && vals[b] != BLOCKED))
    };
    let weight = |_: usize, value: usize| if value == BLOCKED { -1 } else { 1 };
    let csp = BagCsp {
        domain: &domain,
        weight: &weight,
        allowed: &allowed,
    };
    let total = solve(&td, &csp);
    let (sign, mag) = total.into_parts();
    assert!(
        sign != Sign::Minus,
        "inclusion-exclusion produced a negative count"
    );
    Ok(mag)
}

/// Exact count for AND/constant or OR/constant systems.
pub fn count_and_or(s: &System, caps: &Caps) -> Result<Count, CountError> {
    let sys = extract_and_or(s, caps.arity)?;
    count_and_system(&sys, caps.width)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::count::count_brute;
    use num_bigint::BigUint;

    fn sys(g: Network, texts: &[&str]) -> System {
        let fs = texts
            .iter()
            .enumerate()
            .map(|(v, t)| FunctionRepr::formula(t, g.degree(v) + 1).unwrap())
            .collect();
        System::new(g, fs).unwrap()
    }

    fn both(s: &System) -> (Count, Count) {
        (
            count_and_or(s, &Caps::default()).unwrap(),
            count_brute(s, 26).unwrap(),
        )
    }

    #[test]
    fn two_cycle() {
        let (a, b) = both(&sys(Network::path(2), &["x2", "x1"]));
        assert_eq!(a, BigUint::from(2u32));
        assert_eq!(a, b);
    }

    #[test]
    fn strict_singleton_needs_a_zero_witness() {
        // f_1 = x_2, f_2 = x_2: the implication reading would allow (0, 1)
        let (a, b) = both(&sys(Network::path(2), &["x2", "x2"]));
        assert_eq!(a, BigUint::from(2u32));
        assert_eq!(a, b);
    }

    #[test]
    fn and_chain() {
        let s = sys(Network::path(3), &["x1", "x1 & x2", "x1 & x2"]);
        let (a, b) = both(&s);
        assert_eq!(a, BigUint::from(4u32));
        assert_eq!(a, b);
    }

    #[test]
    fn constants_propagate() {
        let s = sys(Network::path(3), &["0", "x1 & x2 & x3", "x1 | x2"]);
        assert!(matches!(
            extract_and_or(&s, 20),
            Err(CountError::NotAndOr { .. })
        ));
        let s = sys(Network::path(3), &["0", "x1 & x2 & x3", "x1 & x2"]);
        let (a, b) = both(&s);
        assert_eq!(a, b);
        let s = sys(Network::path(3), &["1", "x1 & x2", "x2"]);
        let (a, b) = both(&s);
        assert_eq!(a, b);
    }

    #[test]
    fn or_systems_are_dualized() {
        let s = sys(Network::path(3), &["x1 | x2", "x1 | x3", "x2 | 0"]);
        let x = extract_and_or(&s, 20).unwrap();
        assert!(x.dualized);
        assert_eq!(x.locals[1], Local::And(vec![0, 2]));
        assert_eq!(x.locals[2], Local::And(vec![2]));
        let (a, b) = both(&s);
        assert_eq!(a, b);
    }

    #[test]
    fn star_with_wide_centre() {
        let leaves = 60;
        let g = Network::star(leaves);
        let centre = (1..=leaves + 1)
            .map(|j| format!("x{j}"))
            .collect::<Vec<_>>()
            .join(" & ");
        let mut texts = vec![centre.as_str()];
        texts.extend(std::iter::repeat_n("x2", leaves));
        let s = sys(g, &texts);
        // free leaves; the centre is pinned to 0 unless every leaf is 1
        let expected = (BigUint::from(1u32) << leaves) + BigUint::from(1u32);
        assert_eq!(count_and_or(&s, &Caps::default()).unwrap(), expected);
    }

    #[test]
    fn semantic_fallback_for_tables() {
        let t = crate::repr::TruthTable::parse("0001", 2).unwrap();
        let s = System::new(
            Network::path(2),
            vec![FunctionRepr::Table(t.clone()), FunctionRepr::Table(t)],
        )
        .unwrap();
        let (a, b) = both(&s);
        assert_eq!(a, b);
    }
}
