use num_bigint::BigUint;
use rayon::prelude::*;

use super::{Count, CountError};
use crate::repr::TruthTable;
use crate::system::System;

/// Above this arity the function is evaluated directly instead of tabulated.
const TABULATE_UP_TO: usize = 16;

/// Below this many vertices the enumeration stays on one thread.
const PARALLEL_FROM: usize = 16;

struct Check<'a> {
    vertex: usize,
    scope: &'a [usize],
    table: Option<TruthTable>,
    system: &'a System,
}

impl Check<'_> {
    fn holds(&self, mask: u64) -> bool {
        let value = match &self.table {
            Some(t) => {
                let idx = self
                    .scope
                    .iter()
                    .fold(0usize, |acc, &w| acc << 1 | (mask >> w & 1) as usize);
                t.get(idx)
            }
            None => self
                .system
                .function(self.vertex)
                .eval_with(|j| mask >> self.scope[j] & 1 == 1),
        };
        value == (mask >> self.vertex & 1 == 1)
    }
}

/// Enumerates all `2^n` configurations.
pub fn count_brute(s: &System, cap: usize) -> Result<Count, CountError> {
    let n = s.vertex_count();
    if n > cap || n > 62 {
        return Err(CountError::BruteCapExceeded { n, cap });
    }
    let checks: Vec<Check<'_>> = (0..n)
        .map(|v| {
            let f = s.function(v);
            let table = (f.arity() <= TABULATE_UP_TO)
                .then(|| f.to_table(TABULATE_UP_TO).expect("arity within cap"));
            Check {
                vertex: v,
                scope: s.scope(v),
                table,
                system: s,
            }
        })
        .collect();
    let fixed = |mask: u64| checks.iter().all(|c| c.holds(mask));
    let total: u64 = if n < PARALLEL_FROM {
        (0..1u64 << n).filter(|&m| fixed(m)).count() as u64
    } else {
        let low = 12;
        (0..1u64 << (n - low))
            .into_par_iter()
            .map(|hi| {
                let base = hi << low;
                (0..1u64 << low).filter(|&lo| fixed(base | lo)).count() as u64
            })
            .sum()
    };
    Ok(BigUint::from(total))
}
