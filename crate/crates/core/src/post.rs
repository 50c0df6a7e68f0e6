//! Post-class membership of concrete boolean functions.

use std::fmt;

use thiserror::Error;

use crate::repr::TruthTable;

/// Default arity limit for [`classify`].
pub const CLASSIFY_CAP: usize = 20;

/// Default node budget for finite-level separation checks above level 2.
pub const SEPARATION_BUDGET: u64 = 1 << 24;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ClassifyError {
    #[error("arity {arity} exceeds the classification cap {cap}")]
    ArityCapExceeded { arity: usize, cap: usize },
    #[error("separation check exceeded its budget of {0} subsets")]
    BudgetExceeded(u64),
}

/// The classes reported by [`PostReport::classes`].
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum PostClass {
    R0,
    R1,
    M,
    D,
    L,
    E,
    V,
    N,
    S0,
    S1,
    S0Sq,
    S1Sq,
    D2,
    S00,
    S10,
    E2,
    V2,
}

impl PostClass {
    pub const ALL: [PostClass; 17] = [
        PostClass::R0,
        PostClass::R1,
        PostClass::M,
        PostClass::D,
        PostClass::L,
        PostClass::E,
        PostClass::V,
        PostClass::N,
        PostClass::S0,
        PostClass::S1,
        PostClass::S0Sq,
        PostClass::S1Sq,
        PostClass::D2,
        PostClass::S00,
        PostClass::S10,
        PostClass::E2,
        PostClass::V2,
    ];
}

impl fmt::Display for PostClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            PostClass::R0 => "R0",
            PostClass::R1 => "R1",
            PostClass::M => "M",
            PostClass::D => "D",
            PostClass::L => "L",
            PostClass::E => "E",
            PostClass::V => "V",
            PostClass::N => "N",
            PostClass::S0 => "S0",
            PostClass::S1 => "S1",
            PostClass::S0Sq => "S0^2",
            PostClass::S1Sq => "S1^2",
            PostClass::D2 => "D2",
            PostClass::S00 => "S00",
            PostClass::S10 => "S10",
            PostClass::E2 => "E2",
            PostClass::V2 => "V2",
        })
    }
}

/// How an E or V function is built: a constant, or AND/OR over `J`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Witness {
    Const(bool),
    /// 0-based argument positions, ascending, nonempty.
    Over(Vec<usize>),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PostReport {
    pub arity: usize,
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
    /// `(a_0, a_1, ..., a_k)` when linear.
    pub coefficients: Option<Vec<bool>>,
    pub and_witness: Option<Witness>,
    pub or_witness: Option<Witness>,
}

impl PostReport {
    pub fn d2(&self) -> bool {
        self.self_dual && self.monotone
    }

    pub fn s00(&self) -> bool {
        self.s0 && self.monotone && self.r0
    }

    pub fn s10(&self) -> bool {
        self.s1 && self.monotone && self.r1
    }

    pub fn e2(&self) -> bool {
        self.and_class && self.s10()
    }

    pub fn v2(&self) -> bool {
        self.or_class && self.s00()
    }

    pub fn has(&self, class: PostClass) -> bool {
        match class {
            PostClass::R0 => self.r0,
            PostClass::R1 => self.r1,
            PostClass::M => self.monotone,
            PostClass::D => self.self_dual,
            PostClass::L => self.linear,
            PostClass::E => self.and_class,
            PostClass::V => self.or_class,
            PostClass::N => self.n_class,
            PostClass::S0 => self.s0,
            PostClass::S1 => self.s1,
            PostClass::S0Sq => self.s0_sq,
            PostClass::S1Sq => self.s1_sq,
            PostClass::D2 => self.d2(),
            PostClass::S00 => self.s00(),
            PostClass::S10 => self.s10(),
            PostClass::E2 => self.e2(),
            PostClass::V2 => self.v2(),
        }
    }

    pub fn classes(&self) -> Vec<PostClass> {
        PostClass::ALL
            .into_iter()
            .filter(|&c| self.has(c))
            .collect()
    }
}

pub fn classify(table: &TruthTable) -> Result<PostReport, ClassifyError> {
    classify_with_cap(table, CLASSIFY_CAP)
}

pub fn classify_with_cap(table: &TruthTable, cap: usize) -> Result<PostReport, ClassifyError> {
    let k = table.arity();
    if k > cap {
        return Err(ClassifyError::ArityCapExceeded { arity: k, cap });
    }
    let top = table.len() - 1;
    let coefficients = linear_coefficients(table);
    let and_witness = and_witness(table);
    let or_witness = or_witness(table);
    Ok(PostReport {
        arity: k,
        r0: !table.get(0),
        r1: table.get(top),
        monotone: is_monotone(table),
        self_dual: (0..=top).all(|i| table.get(i) != table.get(top ^ i)),
        linear: coefficients.is_some(),
        and_class: and_witness.is_some(),
        or_class: or_witness.is_some(),
        n_class: is_n(table),
        s0: separating_all(table, false),
        s1: separating_all(table, true),
        s0_sq: separating_pairs(table, false),
        s1_sq: separating_pairs(table, true),
        coefficients,
        and_witness,
        or_witness,
    })
}

fn is_monotone(t: &TruthTable) -> bool {
    let k = t.arity();
    (0..t.len()).all(|i| {
        (0..k).all(|b| {
            let bit = 1 << b;
            i & bit != 0 || !t.get(i) || t.get(i | bit)
        })
    })
}

fn is_n(t: &TruthTable) -> bool {
    let ones = t.count_ones();
    if ones == 0 || ones == t.len() {
        return true;
    }
    let k = t.arity();
    (0..k).any(|j| {
        let p = TruthTable::projection(k, j);
        p == *t || p.complement() == *t
    })
}

/// `(a_0, ..., a_k)` with `f = a_0 ⊕ a_1 x_1 ⊕ ... ⊕ a_k x_k`, if `f` is affine.
pub fn linear_coefficients(t: &TruthTable) -> Option<Vec<bool>> {
    let k = t.arity();
    let a0 = t.get(0);
    let mut coeffs = vec![a0];
    // e_j has argument j set, i.e. bit k-1-j of the index
    coeffs.extend((0..k).map(|j| t.get(1 << (k - 1 - j)) ^ a0));
    let ok = (0..t.len()).all(|i| {
        let parity = (0..k).fold(a0, |acc, j| {
            acc ^ (coeffs[j + 1] && i >> (k - 1 - j) & 1 == 1)
        });
        parity == t.get(i)
    });
    ok.then_some(coeffs)
}

fn bit_of(k: usize, j: usize) -> usize {
    1 << (k - 1 - j)
}

/// Constant or `J` with `f = ⋀_{j∈J} x_j`, if `f` is an AND function.
pub fn and_witness(t: &TruthTable) -> Option<Witness> {
    let k = t.arity();
    let top = t.len() - 1;
    if !t.get(top) {
        return (t.count_ones() == 0).then_some(Witness::Const(false));
    }
    let j: Vec<usize> = (0..k).filter(|&j| !t.get(top ^ bit_of(k, j))).collect();
    if j.is_empty() {
        return (t.count_ones() == t.len()).then_some(Witness::Const(true));
    }
    let need = j.iter().fold(0, |m, &x| m | bit_of(k, x));
    (0..t.len())
        .all(|i| t.get(i) == (i & need == need))
        .then_some(Witness::Over(j))
}

/// Constant or `J` with `f = ⋁_{j∈J} x_j`, if `f` is an OR function.
pub fn or_witness(t: &TruthTable) -> Option<Witness> {
    let k = t.arity();
    if t.get(0) {
        return (t.count_ones() == t.len()).then_some(Witness::Const(true));
    }
    let j: Vec<usize> = (0..k).filter(|&j| t.get(bit_of(k, j))).collect();
    if j.is_empty() {
        return (t.count_ones() == 0).then_some(Witness::Const(false));
    }
    let any = j.iter().fold(0, |m, &x| m | bit_of(k, x));
    (0..t.len())
        .all(|i| t.get(i) == (i & any != 0))
        .then_some(Witness::Over(j))
}

/// Preimage of `b`, recoded so that "coordinate equals b" becomes "bit is 0".
fn recoded_preimage(t: &TruthTable, b: bool) -> Vec<usize> {
    let top = t.len() - 1;
    t.preimage(b).map(|i| if b { top ^ i } else { i }).collect()
}

fn separating_all(t: &TruthTable, b: bool) -> bool {
    let top = t.len() - 1;
    let common = recoded_preimage(t, b)
        .into_iter()
        .fold(top, |acc, i| acc & !i & top);
    common != 0
}

/// Every subset of size at most two shares a b-coordinate.
fn separating_pairs(t: &TruthTable, b: bool) -> bool {
    if t.arity() == 0 {
        return false;
    }
    let top = t.len() - 1;
    let z = recoded_preimage(t, b);
    // superset sums: cnt[s] = #{u in z : u ⊇ s}
    let mut cnt = vec![0u32; t.len()];
    for &u in &z {
        cnt[u] += 1;
    }
    for bit in 0..t.arity() {
        let m = 1 << bit;
        for s in 0..t.len() {
            if s & m == 0 {
                cnt[s] += cnt[s | m];
            }
        }
    }
    // t and u share a zero iff t | u != top iff u does not contain !t
    z.iter().all(|&u| cnt[top ^ u] == 0)
}

/// Whether `t` is b-separating at `level` (`None` means every subset).
///
/// A finite level `k` requires every subset of the preimage with at most
/// `k` members to share a coordinate equal to `b`.
pub fn is_b_separating(
    t: &TruthTable,
    b: bool,
    level: Option<usize>,
    budget: u64,
) -> Result<bool, ClassifyError> {
    let Some(k) = level else {
        return Ok(separating_all(t, b));
    };
    if t.arity() == 0 {
        return Ok(false);
    }
    match k {
        0 => return Ok(true),
        1 => {
            let top = t.len() - 1;
            return Ok(recoded_preimage(t, b).iter().all(|&u| u != top));
        }
        2 => return Ok(separating_pairs(t, b)),
        _ => {}
    }
    let z = recoded_preimage(t, b);
    let top = t.len() - 1;
    let size = k.min(z.len());
    let mut visited = 0u64;
    // depth-first over size-`size` subsets, tracking the shared zero mask
    fn dfs(
        z: &[usize],
        start: usize,
        left: usize,
        common: usize,
        visited: &mut u64,
        budget: u64,
    ) -> Result<bool, ClassifyError> {
        *visited += 1;
        if *visited > budget {
            return Err(ClassifyError::BudgetExceeded(budget));
        }
        if common == 0 {
            return Ok(false);
        }
        if left == 0 {
            return Ok(true);
        }
        for i in start..=z.len() - left {
            if !dfs(z, i + 1, left - 1, common & !z[i], visited, budget)? {
                return Ok(false);
            }
        }
        Ok(true)
    }
    dfs(&z, 0, size, top, &mut visited, budget)
}
