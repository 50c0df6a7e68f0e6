use super::{HornFormula, ReductionError};
use crate::repr::Formula;
use crate::system::{Network, System};

/// A network with a fixed two-colouring; `side[v]` is false on the first part.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BipartiteGraph {
    network: Network,
    side: Vec<bool>,
}

impl BipartiteGraph {
    pub fn new(network: Network, side: Vec<bool>) -> Result<Self, ReductionError> {
        if side.len() != network.vertex_count() {
            return Err(ReductionError::NotBipartite);
        }
        if network.edges().any(|(u, v)| side[u] == side[v]) {
            return Err(ReductionError::NotBipartite);
        }
        Ok(BipartiteGraph { network, side })
    }

    /// Colours each component from its lowest vertex, which goes to the first part.
    pub fn from_network(network: Network) -> Result<Self, ReductionError> {
        let n = network.vertex_count();
        let mut side: Vec<Option<bool>> = vec![None; n];
        for s in 0..n {
            if side[s].is_some() {
                continue;
            }
            side[s] = Some(false);
            let mut stack = vec![s];
            while let Some(v) = stack.pop() {
                let here = side[v].expect("coloured before push");
                for &w in network.adjacent(v) {
                    match side[w] {
                        None => {
                            side[w] = Some(!here);
                            stack.push(w);
                        }
                        Some(c) if c == here => return Err(ReductionError::NotBipartite),
                        Some(_) => {}
                    }
                }
            }
        }
        let side = side
            .into_iter()
            .map(|c| c.expect("every vertex coloured"))
            .collect();
        Ok(BipartiteGraph { network, side })
    }

    pub fn network(&self) -> &Network {
        &self.network
    }

    pub fn side(&self, v: usize) -> bool {
        self.side[v]
    }

    /// Edges as `(first-part vertex, second-part vertex)`.
    pub fn oriented_edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.network
            .edges()
            .map(|(u, v)| if self.side[u] { (v, u) } else { (u, v) })
    }
}

fn clause_network(h: &HornFormula) -> Network {
    Network::from_edges_dedup(
        h.var_count(),
        h.clauses().iter().copied().filter(|(a, b)| a != b),
    )
    .expect("variables are in range")
}

fn horn_system(h: &HornFormula, and: bool) -> System {
    let n = h.var_count();
    let mut operands: Vec<Vec<usize>> = (0..n).map(|v| vec![v]).collect();
    for &(neg, pos) in h.clauses() {
        if neg == pos {
            continue;
        }
        // AND at the positive end over the negative variables, OR the other way round
        let (at, other) = if and { (pos, neg) } else { (neg, pos) };
        if !operands[at].contains(&other) {
            operands[at].push(other);
        }
    }
    let formulas = operands
        .into_iter()
        .map(|mut vs| {
            vs.sort_unstable();
            let vars: Vec<Formula> = vs.into_iter().map(Formula::Var).collect();
            match (vars.len(), and) {
                (1, _) => vars.into_iter().next().expect("nonempty"),
                (_, true) => Formula::And(vars),
                (_, false) => Formula::Or(vars),
            }
        })
        .collect();
    System::from_vertex_formulas(clause_network(h), formulas).expect("operands are neighbours")
}

/// `f_i = x_i ∧ ⋀ { x_j : (¬x_j ∨ x_i) ∈ H }` on the clause graph.
///
/// The fixed points are the complements of the satisfying assignments of
/// `H`, so the two counts agree.
pub fn horn_to_and_system(h: &HornFormula) -> System {
    horn_system(h, true)
}

/// `f_i = x_i ∨ ⋁ { x_j : (¬x_i ∨ x_j) ∈ H }` on the clause graph.
pub fn horn_to_or_system(h: &HornFormula) -> System {
    horn_system(h, false)
}

/// One clause `(x_u ∨ ¬x_v)` per edge, `u` in the first part.
///
/// Satisfying assignments correspond to independent sets `I` via
/// `x_u = [u ∉ I]` on the first part and `x_v = [v ∈ I]` on the second.
pub fn bipartite_to_horn(g: &BipartiteGraph) -> HornFormula {
    let clauses = g.oriented_edges().map(|(u, v)| (v, u)).collect();
    HornFormula::new(g.network.vertex_count(), clauses).expect("vertices are in range")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::count::count_brute;
    use crate::repr::FunctionRepr;
    use num_bigint::BigUint;

    fn fp(s: &System) -> BigUint {
        count_brute(s, 26).unwrap()
    }

    #[test]
    fn horn_examples() {
        let h = HornFormula::new(2, vec![(0, 1)]).unwrap();
        let s = horn_to_and_system(&h);
        assert_eq!(s.function(0), &FunctionRepr::formula("x1", 2).unwrap());
        assert_eq!(s.function(1), &FunctionRepr::formula("x1 & x2", 2).unwrap());
        assert_eq!(fp(&s), BigUint::from(3u32));
        let s = horn_to_or_system(&h);
        assert_eq!(s.function(0), &FunctionRepr::formula("x1 | x2", 2).unwrap());
        assert_eq!(fp(&s), BigUint::from(3u32));

        let empty = HornFormula::new(3, vec![]).unwrap();
        assert_eq!(fp(&horn_to_and_system(&empty)), BigUint::from(8u32));
        assert_eq!(fp(&horn_to_or_system(&empty)), BigUint::from(8u32));

        let both = HornFormula::new(2, vec![(0, 1), (1, 0)]).unwrap();
        assert_eq!(fp(&horn_to_and_system(&both)), BigUint::from(2u32));
        assert_eq!(fp(&horn_to_or_system(&both)), BigUint::from(2u32));
    }

    #[test]
    fn tautologies_and_repeats_are_harmless() {
        let h = HornFormula::new(2, vec![(0, 0), (0, 1), (0, 1)]).unwrap();
        let s = horn_to_and_system(&h);
        assert_eq!(s.network().edge_count(), 1);
        assert_eq!(fp(&s), BigUint::from(3u32));
    }

    #[test]
    fn bipartite_examples() {
        let edge = BipartiteGraph::from_network(Network::path(2)).unwrap();
        let h = bipartite_to_horn(&edge);
        assert_eq!(h.clauses(), &[(1, 0)]);
        let p3 = BipartiteGraph::from_network(Network::path(3)).unwrap();
        assert!(p3.side(1) && !p3.side(0));
        assert_eq!(
            fp(&horn_to_and_system(&bipartite_to_horn(&p3))),
            BigUint::from(5u32)
        );
        let empty = BipartiteGraph::from_network(Network::edgeless(4)).unwrap();
        assert!(bipartite_to_horn(&empty).clauses().is_empty());
        assert_eq!(
            BipartiteGraph::from_network(Network::cycle(3)),
            Err(ReductionError::NotBipartite)
        );
        assert_eq!(
            BipartiteGraph::new(Network::path(2), vec![true, true]),
            Err(ReductionError::NotBipartite)
        );
    }
}
