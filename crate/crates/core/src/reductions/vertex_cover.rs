use std::collections::BTreeSet;

use num_bigint::BigUint;
use num_traits::One;

use super::{Amplifier, BipartiteGraph, ReductionError};
use crate::graph::{planar_embedding, Embedding};
use crate::repr::Formula;
use crate::system::{Network, System};

/// The majority system with its amplifiers attached.
#[derive(Clone, Debug)]
pub struct VcGadget {
    pub system: System,
    /// `2^(m+2)` for `m` vertices of the input graph.
    pub modulus: BigUint,
    /// `(edge vertex, shared vertex, edge vertex)` per attached amplifier.
    pub triples: Vec<(usize, usize, usize)>,
    /// Vertices of the input graph followed by one vertex per edge.
    pub base_vertices: usize,
}

/// The input graph with every edge subdivided.
///
/// Vertex `m + k` stands for the `k`-th edge of `g` in ascending order.
pub fn subdivision(g: &Network) -> Network {
    let m = g.vertex_count();
    let edges: Vec<(usize, usize)> = g.edges().collect();
    let sub = edges
        .iter()
        .enumerate()
        .flat_map(|(k, &(i, j))| [(i, m + k), (j, m + k)]);
    Network::new(m + edges.len(), sub).expect("subdivision is simple")
}

/// Triples `{i,j}, j, {j,k}` met consecutively on some face walk of the subdivision.
///
/// Keys are `(smaller edge vertex, j, larger edge vertex)`, deduplicated.
pub fn face_triples(embedding: &Embedding, m: usize) -> Vec<(usize, usize, usize)> {
    let mut out = BTreeSet::new();
    for face in embedding.faces() {
        let len = face.len();
        for t in 0..len {
            let (e1, j) = face[t];
            let (j2, e2) = face[(t + 1) % len];
            debug_assert_eq!(j, j2);
            if j < m && e1 != e2 {
                out.insert((e1.min(e2), j, e1.max(e2)));
            }
        }
    }
    out.into_iter().collect()
}

/// Whether `g` is planar with maximum degree at most four.
pub fn in_planar_degree_four_regime(g: &Network) -> bool {
    g.max_degree() <= 4 && crate::graph::is_planar(g)
}

/// Builds the majority system on the subdivision of `g` and attaches an
/// `(m+1)`-amplifier per face triple, anchoring `a_0` and `c_0` on the two
/// edge vertices.
///
/// `embedding` is a rotation system of [`subdivision`]; one is computed
/// when absent. Twice the number of vertex covers of `g` is congruent to the
/// fixed-point count modulo `2^(m+2)`.
pub fn vc_to_d2_system(
    g: &BipartiteGraph,
    embedding: Option<&Embedding>,
) -> Result<VcGadget, ReductionError> {
    let base = g.network();
    let m = base.vertex_count();
    let sub = subdivision(base);
    let embedding = match embedding {
        Some(e) => {
            let rotation = (0..e.vertex_count())
                .map(|v| e.rotation(v).to_vec())
                .collect();
            let checked = Embedding::from_rotation(&sub, rotation)?;
            if !checked.satisfies_euler() {
                return Err(ReductionError::NotPlanar);
            }
            checked
        }
        None => planar_embedding(&sub).ok_or(ReductionError::NotPlanar)?,
    };
    let triples = face_triples(&embedding, m);

    let amp = Amplifier::new(m + 1);
    let fresh = amp.vertex_count() - 2;
    let total = sub.vertex_count() + triples.len() * fresh;
    let mut edges: Vec<(usize, usize)> = sub.edges().collect();
    let mut formulas: Vec<Formula> = Vec::with_capacity(total);
    for v in 0..m {
        formulas.push(Formula::maj(
            Formula::Var(v),
            Formula::Var(v),
            Formula::Var(v),
        ));
    }
    for (k, (i, j)) in base.edges().enumerate() {
        let e = m + k;
        formulas.push(Formula::maj(
            Formula::Var(e),
            Formula::Var(i),
            Formula::Var(j),
        ));
    }
    let local = amp.vertex_formulas();
    for (t, &(e1, _, e2)) in triples.iter().enumerate() {
        let offset = sub.vertex_count() + t * fresh;
        let place = |v: usize| {
            if v == amp.a(0) {
                e1
            } else if v == amp.c(0) {
                e2
            } else {
                // local ids skip a_0 = 0 and c_0
                let shifted = if v > amp.c(0) { v - 2 } else { v - 1 };
                offset + shifted
            }
        };
        edges.extend(amp.edges().into_iter().map(|(u, v)| (place(u), place(v))));
        for (v, f) in &local {
            if *v != amp.a(0) && *v != amp.c(0) {
                formulas.push(f.map_vars(&place));
            }
        }
    }
    let network = Network::new(total, edges).expect("amplifiers attach without repeated edges");
    let system = System::from_vertex_formulas(network, formulas).expect("formulas stay in scope");
    Ok(VcGadget {
        system,
        modulus: BigUint::one() << (m + 2),
        triples,
        base_vertices: sub.vertex_count(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::count::count_brute;

    #[test]
    fn single_edge_has_no_amplifier() {
        let g = BipartiteGraph::from_network(Network::path(2)).unwrap();
        let gadget = vc_to_d2_system(&g, None).unwrap();
        assert!(gadget.triples.is_empty());
        assert_eq!(gadget.system.vertex_count(), 3);
        assert_eq!(gadget.modulus, BigUint::from(16u32));
        assert_eq!(
            count_brute(&gadget.system, 26).unwrap(),
            BigUint::from(6u32)
        );
    }

    #[test]
    fn path_of_two_edges() {
        let g = BipartiteGraph::from_network(Network::path(3)).unwrap();
        let gadget = vc_to_d2_system(&g, None).unwrap();
        // both sides of the single face meet the middle vertex between the two edges
        assert_eq!(gadget.triples, vec![(3, 1, 4)]);
        assert_eq!(gadget.system.vertex_count(), 5 + 13);
        let fp = count_brute(&gadget.system, 26).unwrap();
        // the path on three vertices has five vertex covers
        assert_eq!(fp % &gadget.modulus, BigUint::from(10u32));
    }

    #[test]
    fn explicit_embedding_is_checked() {
        let g = BipartiteGraph::from_network(Network::path(3)).unwrap();
        let sub = subdivision(g.network());
        let e = planar_embedding(&sub).unwrap();
        assert!(vc_to_d2_system(&g, Some(&e)).is_ok());
        let wrong = planar_embedding(&Network::path(5)).unwrap();
        assert!(matches!(
            vc_to_d2_system(&g, Some(&wrong)),
            Err(ReductionError::Embedding(_))
        ));
    }

    #[test]
    fn regime_check() {
        assert!(in_planar_degree_four_regime(&Network::star(4)));
        assert!(!in_planar_degree_four_regime(&Network::star(5)));
        assert!(!in_planar_degree_four_regime(&Network::complete_bipartite(
            3, 3
        )));
    }
}
