//! Weighted CSP counting over a tree decomposition.
//!
//! Variables have small domains, unary integer weights and constraints
//! checked per bag. Constraints are 0/1 indicators, so checking one in
//! several bags does not change the result. Each variable's weight is
//! applied once, where it is forgotten.

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::graph::TreeDecomposition;

pub(crate) type Allowed<'a> = dyn Fn(usize, &[usize], &[usize]) -> bool + 'a;

pub(crate) struct BagCsp<'a> {
    pub domain: &'a [usize],
    pub weight: &'a dyn Fn(usize, usize) -> i64,
    /// `allowed(bag, vars, values)` for one full assignment of the bag.
    pub allowed: &'a Allowed<'a>,
}

struct Message {
    /// Shared variables, in the order of the parent bag.
    at_parent: Vec<usize>,
    radix: Vec<usize>,
    values: Vec<BigInt>,
}

fn decode(mut idx: usize, radix: &[usize], out: &mut [usize]) {
    for (k, &r) in radix.iter().enumerate().rev() {
        out[k] = idx % r;
        idx /= r;
    }
}

pub(crate) fn solve(td: &TreeDecomposition, csp: &BagCsp<'_>) -> BigInt {
    if td.is_empty() {
        return BigInt::one();
    }
    let children = td.children();
    let mut messages: Vec<Option<Message>> = (0..td.len()).map(|_| None).collect();
    let mut answer = BigInt::zero();

    for b in td.post_order() {
        let vars = td.bag(b);
        let radix: Vec<usize> = vars.iter().map(|&v| csp.domain[v]).collect();
        let size: usize = radix.iter().product();
        let incoming: Vec<Message> = children[b]
            .iter()
            .map(|&c| messages[c].take().expect("child processed first"))
            .collect();

        let parent_vars = td.parent(b).map(|p| td.bag(p));
        let keep: Vec<bool> = vars
            .iter()
            .map(|v| parent_vars.is_some_and(|pv| pv.binary_search(v).is_ok()))
            .collect();
        let out_pos: Vec<usize> = (0..vars.len()).filter(|&k| keep[k]).collect();
        let out_radix: Vec<usize> = out_pos.iter().map(|&k| radix[k]).collect();
        let out_size: usize = out_radix.iter().product();
        let mut out = vec![BigInt::zero(); out_size];

        let mut values = vec![0usize; vars.len()];
        for idx in 0..size {
            decode(idx, &radix, &mut values);
            if !(csp.allowed)(b, vars, &values) {
                continue;
            }
            let mut w: i64 = 1;
            for k in 0..vars.len() {
                if !keep[k] {
                    w *= (csp.weight)(vars[k], values[k]);
                }
            }
            if w == 0 {
                continue;
            }
            let mut acc = BigInt::from(w);
            for m in &incoming {
                let mut j = 0;
                for (&k, &r) in m.at_parent.iter().zip(&m.radix) {
                    j = j * r + values[k];
                }
                let val = &m.values[j];
                if val.is_zero() {
                    acc.set_zero();
                    break;
                }
                acc *= val;
            }
            if acc.is_zero() {
                continue;
            }
            let mut j = 0;
            for (&k, &r) in out_pos.iter().zip(&out_radix) {
                j = j * r + values[k];
            }
            out[j] += acc;
        }

        match td.parent(b) {
            Some(p) => {
                let pv = td.bag(p);
                let at_parent = out_pos
                    .iter()
                    .map(|&k| {
                        pv.binary_search(&vars[k])
                            .expect("kept vars are in the parent")
                    })
                    .collect();
                messages[b] = Some(Message {
                    at_parent,
                    radix: out_radix,
                    values: out,
                });
            }
            None => answer = out.into_iter().sum(),
        }
    }
    answer
}
