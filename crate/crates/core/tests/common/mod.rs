//! Random instance generators and brute-force oracles shared by the
//! integration tests. The oracles work from raw definitions and avoid the
//! library's counting code.

#![allow(dead_code)]

use std::collections::BTreeSet;

use fixpoint_core::repr::Circuit;
use fixpoint_core::{Configuration, Formula, FunctionRepr, Network, System, TruthTable};
use num_bigint::BigUint;
use rand::rngs::StdRng;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};

pub fn rng(seed: u64) -> StdRng {
    StdRng::seed_from_u64(seed)
}

pub fn random_network(rng: &mut StdRng, n: usize, p: f64) -> Network {
    let mut edges = Vec::new();
    for u in 0..n {
        for v in u + 1..n {
            if rng.gen_bool(p) {
                edges.push((u, v));
            }
        }
    }
    Network::new(n, edges).unwrap()
}

/// Shape of the local functions a generator draws.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Flavor {
    Any,
    Xor,
    And,
    Or,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Repr {
    Table,
    Formula,
    Circuit,
    Mixed,
}

fn random_subset(rng: &mut StdRng, arity: usize) -> Vec<usize> {
    let mut set: Vec<usize> = (0..arity).filter(|_| rng.gen_bool(0.5)).collect();
    if set.is_empty() {
        set.push(rng.gen_range(0..arity));
    }
    set
}

fn nest(rng: &mut StdRng, leaves: Vec<Formula>, make: fn(Vec<Formula>) -> Formula) -> Formula {
    // random bracketing of the operands into nested nodes
    if leaves.len() <= 2 || rng.gen_bool(0.5) {
        return if leaves.len() == 1 {
            leaves.into_iter().next().unwrap()
        } else {
            make(leaves)
        };
    }
    let cut = rng.gen_range(1..leaves.len());
    let mut left = leaves;
    let right = left.split_off(cut);
    make(vec![nest(rng, left, make), nest(rng, right, make)])
}

fn random_any(rng: &mut StdRng, arity: usize, depth: usize) -> Formula {
    if depth == 0 || rng.gen_bool(0.3) {
        return if rng.gen_bool(0.08) {
            Formula::Const(rng.gen())
        } else {
            Formula::Var(rng.gen_range(0..arity))
        };
    }
    let child = |rng: &mut StdRng| random_any(rng, arity, depth - 1);
    match rng.gen_range(0..7) {
        0 => Formula::not(child(rng)),
        1 => Formula::And(vec![child(rng), child(rng)]),
        2 => Formula::Or(vec![child(rng), child(rng)]),
        3 => Formula::Xor(vec![child(rng), child(rng)]),
        4 => Formula::maj(child(rng), child(rng), child(rng)),
        5 => Formula::s00(child(rng), child(rng), child(rng)),
        _ => Formula::s10(child(rng), child(rng), child(rng)),
    }
}

/// A random formula of the requested flavour over `arity` arguments.
pub fn random_formula(rng: &mut StdRng, arity: usize, flavor: Flavor) -> Formula {
    match flavor {
        Flavor::Any => random_any(rng, arity, 3),
        Flavor::Xor => {
            let mut parts: Vec<Formula> = random_subset(rng, arity)
                .into_iter()
                .map(Formula::Var)
                .collect();
            if rng.gen_bool(0.3) {
                parts.push(Formula::Const(true));
            }
            parts.shuffle(rng);
            let f = nest(rng, parts, Formula::Xor);
            if rng.gen_bool(0.2) {
                Formula::not(f)
            } else {
                f
            }
        }
        Flavor::And | Flavor::Or => {
            if rng.gen_bool(0.06) {
                return Formula::Const(rng.gen());
            }
            let make: fn(Vec<Formula>) -> Formula = if flavor == Flavor::And {
                Formula::And
            } else {
                Formula::Or
            };
            let mut parts: Vec<Formula> = random_subset(rng, arity)
                .into_iter()
                .map(Formula::Var)
                .collect();
            // a neutral constant now and then
            if rng.gen_bool(0.1) {
                parts.push(Formula::Const(flavor == Flavor::And));
            }
            parts.shuffle(rng);
            nest(rng, parts, make)
        }
    }
}

pub fn random_function(rng: &mut StdRng, arity: usize, flavor: Flavor, repr: Repr) -> FunctionRepr {
    let repr = if repr == Repr::Mixed {
        [Repr::Table, Repr::Formula, Repr::Circuit][rng.gen_range(0..3)]
    } else {
        repr
    };
    if repr == Repr::Table && flavor == Flavor::Any {
        let bits: Vec<bool> = (0..1usize << arity).map(|_| rng.gen()).collect();
        return FunctionRepr::Table(TruthTable::from_bits(&bits).unwrap());
    }
    let formula = random_formula(rng, arity, flavor);
    let f = FunctionRepr::Formula {
        arity,
        formula: formula.clone(),
    };
    match repr {
        Repr::Table => FunctionRepr::Table(f.to_table(20).unwrap()),
        Repr::Circuit => FunctionRepr::Circuit(Circuit::from_formula(&formula, arity).unwrap()),
        _ => f,
    }
}

pub fn random_system(rng: &mut StdRng, n: usize, p: f64, flavor: Flavor, repr: Repr) -> System {
    let g = random_network(rng, n, p);
    let fs = (0..n)
        .map(|v| random_function(rng, g.degree(v) + 1, flavor, repr))
        .collect();
    System::new(g, fs).unwrap()
}

/// Fixed points by direct enumeration of `is_fixed_point`.
pub fn naive_fixed_points(s: &System) -> u64 {
    let n = s.vertex_count();
    (0..1u64 << n)
        .filter(|&m| s.is_fixed_point(&Configuration::from_mask(n, m)))
        .count() as u64
}

/// Fixed points among configurations that agree with `pins`.
pub fn naive_fixed_points_pinned(s: &System, pins: &[(usize, bool)]) -> u64 {
    let n = s.vertex_count();
    (0..1u64 << n)
        .filter(|&m| pins.iter().all(|&(v, b)| (m >> v & 1 == 1) == b))
        .filter(|&m| s.is_fixed_point(&Configuration::from_mask(n, m)))
        .count() as u64
}

pub fn bits(mask: u64, n: usize) -> Vec<bool> {
    (0..n).map(|i| mask >> i & 1 == 1).collect()
}

/// #SAT of `(¬x_a ∨ x_b)` clauses.
pub fn horn_sat(n: usize, clauses: &[(usize, usize)]) -> u64 {
    (0..1u64 << n)
        .filter(|&m| {
            clauses
                .iter()
                .all(|&(a, b)| m >> a & 1 == 0 || m >> b & 1 == 1)
        })
        .count() as u64
}

/// #SAT of `(x_a ∨ x_b)` clauses.
pub fn positive_sat(n: usize, clauses: &[(usize, usize)]) -> u64 {
    (0..1u64 << n)
        .filter(|&m| clauses.iter().all(|&(a, b)| (m >> a | m >> b) & 1 == 1))
        .count() as u64
}

pub fn independent_sets(n: usize, edges: &[(usize, usize)]) -> u64 {
    (0..1u64 << n)
        .filter(|&m| {
            edges
                .iter()
                .all(|&(u, v)| m >> u & 1 == 0 || m >> v & 1 == 0)
        })
        .count() as u64
}

pub fn vertex_covers(n: usize, edges: &[(usize, usize)]) -> u64 {
    (0..1u64 << n)
        .filter(|&m| edges.iter().all(|&(u, v)| (m >> u | m >> v) & 1 == 1))
        .count() as u64
}

pub fn big(x: u64) -> BigUint {
    BigUint::from(x)
}

// ---------------------------------------------------------------------------
// Reference classifier, straight from the definitions.

/// Flags computed from the raw truth table `f` with `f[index(args)]`,
/// the first argument being the most significant bit.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Reference {
    pub r0: bool,
    pub r1: bool,
    pub monotone: bool,
    pub self_dual: bool,
    pub linear: bool,
    pub and_class: bool,
    pub or_class: bool,
    pub n_class: bool,
    pub s0: bool,
    pub s1: bool,
    pub s0_sq: bool,
    pub s1_sq: bool,
}

fn args_of(i: usize, k: usize) -> Vec<bool> {
    (0..k).map(|j| i >> (k - 1 - j) & 1 == 1).collect()
}

fn index_of(args: &[bool]) -> usize {
    args.iter().fold(0, |acc, &b| acc * 2 + b as usize)
}

pub fn reference(f: &[bool]) -> Reference {
    let k = f.len().trailing_zeros() as usize;
    let all: Vec<Vec<bool>> = (0..f.len()).map(|i| args_of(i, k)).collect();
    let at = |x: &[bool]| f[index_of(x)];

    let monotone = all.iter().all(|x| {
        all.iter().all(|y| {
            let below = x.iter().zip(y).all(|(a, b)| !a || *b);
            !below || !at(x) || at(y)
        })
    });
    let self_dual = all.iter().all(|x| {
        let neg: Vec<bool> = x.iter().map(|b| !b).collect();
        at(&neg) == !at(x)
    });
    let linear = (0..1usize << (k + 1)).any(|c| {
        all.iter().all(|x| {
            let mut v = c & 1 == 1;
            for (j, &xj) in x.iter().enumerate() {
                v ^= (c >> (j + 1)) & 1 == 1 && xj;
            }
            v == at(x)
        })
    });
    let constant = f.iter().all(|&b| b == f[0]);
    let subsets: Vec<Vec<usize>> = (1..1usize << k)
        .map(|s| (0..k).filter(|j| s >> j & 1 == 1).collect())
        .collect();
    let and_class = constant
        || subsets
            .iter()
            .any(|j| all.iter().all(|x| at(x) == j.iter().all(|&i| x[i])));
    let or_class = constant
        || subsets
            .iter()
            .any(|j| all.iter().all(|x| at(x) == j.iter().any(|&i| x[i])));
    // depends on at most one argument
    let essential = (0..k)
        .filter(|&j| {
            all.iter().any(|x| {
                let mut y = x.clone();
                y[j] = !y[j];
                at(x) != at(&y)
            })
        })
        .count();
    let n_class = essential <= 1;

    let pre = |b: bool| -> Vec<&Vec<bool>> { all.iter().filter(|x| at(x) == b).collect() };
    let sep_all = |b: bool| (0..k).any(|i| pre(b).iter().all(|x| x[i] == b));
    let sep_pairs = |b: bool| {
        k > 0
            && pre(b).iter().all(|x| {
                pre(b)
                    .iter()
                    .all(|y| (0..k).any(|i| x[i] == b && y[i] == b))
            })
    };
    Reference {
        r0: !f[0],
        r1: f[f.len() - 1],
        monotone,
        self_dual,
        linear,
        and_class,
        or_class,
        n_class,
        s0: sep_all(false),
        s1: sep_all(true),
        s0_sq: sep_pairs(false),
        s1_sq: sep_pairs(true),
    }
}

// ---------------------------------------------------------------------------
// Kuratowski search.

type Adj = Vec<BTreeSet<usize>>;

fn adjacency(g: &Network) -> Adj {
    (0..g.vertex_count())
        .map(|v| g.adjacent(v).iter().copied().collect())
        .collect()
}

/// Deletes vertices of degree at most one and suppresses degree-two
/// vertices until neither applies. Neither step changes whether a K5 or
/// K3,3 subdivision exists.
fn reduce(adj: &mut Adj) {
    loop {
        let mut changed = false;
        for v in 0..adj.len() {
            let d = adj[v].len();
            if d == 1 {
                let w = *adj[v].iter().next().unwrap();
                adj[w].remove(&v);
                adj[v].clear();
                changed = true;
            } else if d == 2 {
                let mut it = adj[v].iter().copied();
                let (a, b) = (it.next().unwrap(), it.next().unwrap());
                adj[a].remove(&v);
                adj[b].remove(&v);
                adj[v].clear();
                adj[a].insert(b);
                adj[b].insert(a);
                changed = true;
            }
        }
        if !changed {
            return;
        }
    }
}

/// Finds internally disjoint paths for `pairs[idx..]`. `used` marks
/// vertices already on some path (branch vertices are never interior).
fn route(
    adj: &Adj,
    pairs: &[(usize, usize)],
    idx: usize,
    used: &mut Vec<bool>,
    branch: &[bool],
    used_edges: &mut BTreeSet<(usize, usize)>,
) -> bool {
    if idx == pairs.len() {
        return true;
    }
    let (s, t) = pairs[idx];
    let mut path = vec![s];
    extend(adj, pairs, idx, t, &mut path, used, branch, used_edges)
}

#[allow(clippy::too_many_arguments)]
fn extend(
    adj: &Adj,
    pairs: &[(usize, usize)],
    idx: usize,
    t: usize,
    path: &mut Vec<usize>,
    used: &mut Vec<bool>,
    branch: &[bool],
    used_edges: &mut BTreeSet<(usize, usize)>,
) -> bool {
    let last = *path.last().unwrap();
    for &w in &adj[last] {
        let e = (last.min(w), last.max(w));
        if used_edges.contains(&e) {
            continue;
        }
        if w == t {
            used_edges.insert(e);
            if route(adj, pairs, idx + 1, used, branch, used_edges) {
                return true;
            }
            used_edges.remove(&e);
            continue;
        }
        if branch[w] || used[w] {
            continue;
        }
        used[w] = true;
        used_edges.insert(e);
        path.push(w);
        if extend(adj, pairs, idx, t, path, used, branch, used_edges) {
            return true;
        }
        path.pop();
        used_edges.remove(&e);
        used[w] = false;
    }
    false
}

fn has_subdivision(adj: &Adj, nodes: &[usize], pairs: &[(usize, usize)]) -> bool {
    let mut branch = vec![false; adj.len()];
    for &v in nodes {
        branch[v] = true;
    }
    let mut used = vec![false; adj.len()];
    route(adj, pairs, 0, &mut used, &branch, &mut BTreeSet::new())
}

fn combinations(items: &[usize], k: usize) -> Vec<Vec<usize>> {
    if k == 0 {
        return vec![vec![]];
    }
    if items.len() < k {
        return vec![];
    }
    let mut out = Vec::new();
    for (i, &x) in items.iter().enumerate() {
        for mut rest in combinations(&items[i + 1..], k - 1) {
            rest.insert(0, x);
            out.push(rest);
        }
    }
    out
}

/// Whether `g` contains a subdivision of K5 or K3,3.
pub fn has_kuratowski_subdivision(g: &Network) -> bool {
    let mut adj = adjacency(g);
    reduce(&mut adj);
    let deg4: Vec<usize> = (0..adj.len()).filter(|&v| adj[v].len() >= 4).collect();
    for five in combinations(&deg4, 5) {
        let pairs: Vec<(usize, usize)> = combinations(&five, 2)
            .iter()
            .map(|p| (p[0], p[1]))
            .collect();
        if has_subdivision(&adj, &five, &pairs) {
            return true;
        }
    }
    let deg3: Vec<usize> = (0..adj.len()).filter(|&v| adj[v].len() >= 3).collect();
    for six in combinations(&deg3, 6) {
        // fix six[0] on the left side to avoid mirrored splits
        for rest in combinations(&six[1..], 2) {
            let left: Vec<usize> = std::iter::once(six[0]).chain(rest).collect();
            let right: Vec<usize> = six.iter().copied().filter(|v| !left.contains(v)).collect();
            let pairs: Vec<(usize, usize)> = left
                .iter()
                .flat_map(|&a| right.iter().map(move |&b| (a, b)))
                .collect();
            if has_subdivision(&adj, &six, &pairs) {
                return true;
            }
        }
    }
    false
}
