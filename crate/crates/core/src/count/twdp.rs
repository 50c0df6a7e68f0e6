use super::bagdp::{solve, BagCsp};
use super::{Caps, Count, CountError};
use crate::graph::{closure_graph, tree_decomposition, Strategy, TreeDecomposition};
use crate::repr::{ReprError, TruthTable};
use crate::system::System;

/// Counts solutions of the constraints `x_v = f_v(scope)` over `td`.
///
/// `td` must be a valid decomposition of the closure graph. Each constraint
/// is checked in the first bag, in post-order, that holds its whole scope.
pub fn count_twdp(
    s: &System,
    td: &TreeDecomposition,
    arity_cap: usize,
) -> Result<Count, CountError> {
    let n = s.vertex_count();
    let tables: Vec<TruthTable> = (0..n)
        .map(|v| {
            s.function(v).to_table(arity_cap).map_err(|e| match e {
                ReprError::ArityCapExceeded { arity, cap } => CountError::ArityCapExceeded {
                    vertex: v,
                    arity,
                    cap,
                },
                other => unreachable!("tabulation only fails on the cap: {other}"),
            })
        })
        .collect::<Result<_, _>>()?;
    // (vertex, positions of its scope inside the bag) per bag
    let mut charged: Vec<Vec<(usize, Vec<usize>)>> = vec![Vec::new(); td.len()];
    let order = td.post_order();
    for v in 0..n {
        let scope = s.scope(v);
        let home = order.iter().copied().find(|&b| {
            let bag = td.bag(b);
            scope.iter().all(|w| bag.binary_search(w).is_ok())
        });
        let Some(b) = home else {
            return Err(CountError::ScopeNotCovered { vertex: v });
        };
        let bag = td.bag(b);
        let at = scope
            .iter()
            .map(|w| bag.binary_search(w).unwrap())
            .collect();
        charged[b].push((v, at));
    }
    td.validate(&closure_graph(s))?;

    let domain = vec![2; n];
    let allowed = |b: usize, vars: &[usize], vals: &[usize]| {
        charged[b].iter().all(|(v, at)| {
            let idx = at.iter().fold(0, |acc, &p| acc << 1 | vals[p]);
            let me = vars.binary_search(v).unwrap();
            tables[*v].get(idx) == (vals[me] == 1)
        })
    };
    let csp = BagCsp {
        domain: &domain,
        weight: &|_, _| 1,
        allowed: &allowed,
    };
    let total = solve(td, &csp);
    Ok(total
        .to_biguint()
        .expect("unit weights give a natural number"))
}

/// Builds a min-fill decomposition of the closure graph and counts over it.
pub fn count_twdp_auto(s: &System, caps: &Caps) -> Result<Count, CountError> {
    if let Some(v) = (0..s.vertex_count()).find(|&v| s.function(v).arity() > caps.arity) {
        return Err(CountError::ArityCapExceeded {
            vertex: v,
            arity: s.function(v).arity(),
            cap: caps.arity,
        });
    }
    let td = tree_decomposition(&closure_graph(s), Strategy::MinFill);
    if td.width() > caps.width {
        return Err(CountError::DecompositionTooWide {
            width: td.width(),
            cap: caps.width,
        });
    }
    count_twdp(s, &td, caps.arity)
}
