use std::collections::BTreeSet;

use crate::system::SystemError;

/// Directed graph on `0..n`; loops allowed, parallel edges collapsed.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Digraph {
    succ: Vec<Vec<usize>>,
    edges: BTreeSet<(usize, usize)>,
}

impl Digraph {
    pub fn new<I>(n: usize, edges: I) -> Result<Self, SystemError>
    where
        I: IntoIterator<Item = (usize, usize)>,
    {
        let mut set = BTreeSet::new();
        for (u, v) in edges {
            if u >= n || v >= n {
                return Err(SystemError::VertexOutOfRange {
                    vertex: u.max(v),
                    n,
                });
            }
            set.insert((u, v));
        }
        let mut succ = vec![Vec::new(); n];
        for &(u, v) in &set {
            succ[u].push(v);
        }
        Ok(Digraph { succ, edges: set })
    }

    pub fn vertex_count(&self) -> usize {
        self.succ.len()
    }

    pub fn edges(&self) -> &BTreeSet<(usize, usize)> {
        &self.edges
    }

    pub fn successors(&self, v: usize) -> &[usize] {
        &self.succ[v]
    }
}

/// Strongly connected components with the DAG between them.
///
/// Components are numbered so that every DAG edge goes from a lower to a
/// higher index.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Condensation {
    component_of: Vec<usize>,
    members: Vec<Vec<usize>>,
    self_witnessed: Vec<bool>,
    dag_edges: BTreeSet<(usize, usize)>,
    internal: Vec<(usize, usize)>,
    crossing: Vec<(usize, usize)>,
}

impl Condensation {
    pub fn component_count(&self) -> usize {
        self.members.len()
    }

    pub fn component_of(&self, v: usize) -> usize {
        self.component_of[v]
    }

    /// Members of component `c`, ascending.
    pub fn members(&self, c: usize) -> &[usize] {
        &self.members[c]
    }

    /// True when the component has two or more members or a loop.
    pub fn self_witnessed(&self, c: usize) -> bool {
        self.self_witnessed[c]
    }

    pub fn dag_edges(&self) -> &BTreeSet<(usize, usize)> {
        &self.dag_edges
    }

    /// Original edges with both ends in one component.
    pub fn internal_edges(&self) -> &[(usize, usize)] {
        &self.internal
    }

    /// Original edges between distinct components.
    pub fn crossing_edges(&self) -> &[(usize, usize)] {
        &self.crossing
    }

    /// The original edge set.
    pub fn expand(&self) -> BTreeSet<(usize, usize)> {
        self.internal
            .iter()
            .chain(&self.crossing)
            .copied()
            .collect()
    }
}

/// Tarjan's algorithm, iterative.
pub fn scc_condensation(d: &Digraph) -> Condensation {
    const UNSEEN: usize = usize::MAX;
    let n = d.vertex_count();
    let mut index = vec![UNSEEN; n];
    let mut low = vec![0; n];
    let mut on_stack = vec![false; n];
    let mut stack = Vec::new();
    let mut comp = vec![UNSEEN; n];
    let mut found: Vec<Vec<usize>> = Vec::new();
    let mut next = 0;
    let mut call: Vec<(usize, usize)> = Vec::new();

    for root in 0..n {
        if index[root] != UNSEEN {
            continue;
        }
        call.push((root, 0));
        while let Some(&mut (v, ref mut pos)) = call.last_mut() {
            if *pos == 0 && index[v] == UNSEEN {
                index[v] = next;
                low[v] = next;
                next += 1;
                stack.push(v);
                on_stack[v] = true;
            }
            if let Some(&w) = d.succ[v].get(*pos) {
                *pos += 1;
                if index[w] == UNSEEN {
                    call.push((w, 0));
                } else if on_stack[w] {
                    low[v] = low[v].min(index[w]);
                }
                continue;
            }
            call.pop();
            if let Some(&(parent, _)) = call.last() {
                low[parent] = low[parent].min(low[v]);
            }
            if low[v] == index[v] {
                let mut members = Vec::new();
                loop {
                    let w = stack.pop().expect("tarjan stack");
                    on_stack[w] = false;
                    comp[w] = found.len();
                    members.push(w);
                    if w == v {
                        break;
                    }
                }
                members.sort_unstable();
                found.push(members);
            }
        }
    }

    // Tarjan emits sinks first; reverse for a topological numbering.
    let count = found.len();
    found.reverse();
    for c in &mut comp {
        *c = count - 1 - *c;
    }
    let mut self_witnessed: Vec<bool> = found.iter().map(|m| m.len() >= 2).collect();
    let mut dag_edges = BTreeSet::new();
    let mut internal = Vec::new();
    let mut crossing = Vec::new();
    for &(u, v) in d.edges() {
        let (cu, cv) = (comp[u], comp[v]);
        if cu == cv {
            internal.push((u, v));
            if u == v {
                self_witnessed[cu] = true;
            }
        } else {
            crossing.push((u, v));
            dag_edges.insert((cu, cv));
        }
    }
    Condensation {
        component_of: comp,
        members: found,
        self_witnessed,
        dag_edges,
        internal,
        crossing,
    }
}
