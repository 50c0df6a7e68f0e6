//! Network-side analysis: condensations, planarity, decompositions.

mod digraph;
mod planar;
mod treedec;

pub use digraph::{scc_condensation, Condensation, Digraph};
pub use planar::{is_planar, planar_embedding, Embedding, EmbeddingError};
pub use treedec::{tree_decomposition, DecompositionError, Strategy, TreeDecomposition};

use std::collections::BTreeSet;

use crate::system::{Network, System};

/// The network with every closed neighbourhood completed to a clique.
pub fn closure_graph(s: &System) -> Network {
    let n = s.vertex_count();
    let mut edges = BTreeSet::new();
    for v in 0..n {
        let scope = s.scope(v);
        for (i, &a) in scope.iter().enumerate() {
            for &b in &scope[i + 1..] {
                edges.insert((a, b));
            }
        }
    }
    Network::new(n, edges).expect("scopes are in range")
}

/// True when one vertex touches every edge; an edgeless graph qualifies.
pub fn has_vertex_cover_one(g: &Network) -> bool {
    let Some((u, v)) = g.edges().next() else {
        return true;
    };
    let m = g.edge_count();
    g.degree(u) == m || g.degree(v) == m
}

pub fn connected_components(g: &Network) -> Vec<Vec<usize>> {
    let n = g.vertex_count();
    let mut seen = vec![false; n];
    let mut out = Vec::new();
    for s in 0..n {
        if seen[s] {
            continue;
        }
        seen[s] = true;
        let mut comp = vec![s];
        let mut stack = vec![s];
        while let Some(v) = stack.pop() {
            for &w in g.adjacent(v) {
                if !seen[w] {
                    seen[w] = true;
                    comp.push(w);
                    stack.push(w);
                }
            }
        }
        comp.sort_unstable();
        out.push(comp);
    }
    out
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GraphReport {
    pub vertices: usize,
    pub edges: usize,
    pub max_degree: usize,
    pub planar: bool,
    pub vertex_cover_one: bool,
    /// Min-fill decomposition width; an upper bound on treewidth.
    pub width: usize,
    pub components: usize,
}

pub fn graph_report(g: &Network) -> GraphReport {
    GraphReport {
        vertices: g.vertex_count(),
        edges: g.edge_count(),
        max_degree: g.max_degree(),
        planar: is_planar(g),
        vertex_cover_one: has_vertex_cover_one(g),
        width: tree_decomposition(g, Strategy::MinFill).width(),
        components: connected_components(g).len(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::repr::FunctionRepr;

    fn identity_system(g: Network) -> System {
        let fs = (0..g.vertex_count())
            .map(|v| {
                let scope = g.closed_neighborhood(v);
                let pos = scope.iter().position(|&w| w == v).unwrap();
                FunctionRepr::formula(&format!("x{}", pos + 1), scope.len()).unwrap()
            })
            .collect();
        System::new(g, fs).unwrap()
    }

    #[test]
    fn closure_examples() {
        let c = closure_graph(&identity_system(Network::path(3)));
        assert!(c.has_edge(0, 2) && c.edge_count() == 3);
        assert_eq!(
            closure_graph(&identity_system(Network::edgeless(3))).edge_count(),
            0
        );
        assert_eq!(
            closure_graph(&identity_system(Network::star(3))),
            Network::complete(4)
        );
    }

    #[test]
    fn vertex_cover_one() {
        assert!(has_vertex_cover_one(&Network::star(5)));
        assert!(!has_vertex_cover_one(&Network::complete(3)));
        assert!(!has_vertex_cover_one(
            &Network::new(4, [(0, 1), (2, 3)]).unwrap()
        ));
        assert!(has_vertex_cover_one(&Network::edgeless(3)));
        assert!(has_vertex_cover_one(&Network::new(3, [(2, 1)]).unwrap()));
    }

    #[test]
    fn reports() {
        let r = graph_report(&Network::star(4));
        assert_eq!(
            (r.max_degree, r.planar, r.vertex_cover_one),
            (4, true, true)
        );
        let r = graph_report(&Network::complete(5));
        assert_eq!((r.planar, r.vertex_cover_one, r.width), (false, false, 4));
        let r = graph_report(&Network::cycle(4));
        assert_eq!(
            (r.max_degree, r.planar, r.vertex_cover_one, r.width),
            (2, true, false, 2)
        );
        assert_eq!(graph_report(&Network::edgeless(3)).components, 3);
    }
}
