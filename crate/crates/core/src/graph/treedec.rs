use std::collections::BTreeSet;

use thiserror::Error;

use crate::system::Network;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Default)]
pub enum Strategy {
    #[default]
    MinFill,
    MinDegree,
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum DecompositionError {
    #[error("parent links do not form a single tree")]
    NotATree,
    #[error("vertex {0} is in no bag")]
    VertexUncovered(usize),
    #[error("edge {{{0}, {1}}} is in no bag")]
    EdgeUncovered(usize, usize),
    #[error("bags containing vertex {0} are not connected")]
    Disconnected(usize),
    #[error("bag {bag} names vertex {vertex} outside the graph")]
    UnknownVertex { bag: usize, vertex: usize },
}

/// Bags with parent links; exactly one bag has no parent.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TreeDecomposition {
    bags: Vec<Vec<usize>>,
    parent: Vec<Option<usize>>,
}

impl TreeDecomposition {
    pub fn new(bags: Vec<Vec<usize>>, parent: Vec<Option<usize>>) -> Self {
        assert_eq!(bags.len(), parent.len());
        let bags = bags
            .into_iter()
            .map(|mut b| {
                b.sort_unstable();
                b.dedup();
                b
            })
            .collect();
        TreeDecomposition { bags, parent }
    }

    pub fn bags(&self) -> &[Vec<usize>] {
        &self.bags
    }

    pub fn bag(&self, i: usize) -> &[usize] {
        &self.bags[i]
    }

    pub fn parent(&self, i: usize) -> Option<usize> {
        self.parent[i]
    }

    pub fn len(&self) -> usize {
        self.bags.len()
    }

    pub fn is_empty(&self) -> bool {
        self.bags.is_empty()
    }

    pub fn root(&self) -> Option<usize> {
        self.parent.iter().position(Option::is_none)
    }

    pub fn children(&self) -> Vec<Vec<usize>> {
        let mut ch = vec![Vec::new(); self.bags.len()];
        for (i, p) in self.parent.iter().enumerate() {
            if let Some(p) = *p {
                ch[p].push(i);
            }
        }
        ch
    }

    /// Maximum bag size minus one; zero when there are no bags.
    pub fn width(&self) -> usize {
        self.bags
            .iter()
            .map(Vec::len)
            .max()
            .unwrap_or(1)
            .saturating_sub(1)
    }

    /// Bags in an order where every child precedes its parent.
    pub fn post_order(&self) -> Vec<usize> {
        let children = self.children();
        let mut out = Vec::with_capacity(self.bags.len());
        let Some(root) = self.root() else {
            return out;
        };
        let mut stack = vec![(root, false)];
        while let Some((b, expanded)) = stack.pop() {
            if expanded {
                out.push(b);
                continue;
            }
            stack.push((b, true));
            for &c in children[b].iter().rev() {
                stack.push((c, false));
            }
        }
        out
    }

    /// Checks the tree shape and the three decomposition conditions.
    pub fn validate(&self, g: &Network) -> Result<(), DecompositionError> {
        let n = g.vertex_count();
        let m = self.bags.len();
        if m == 0 {
            return match n {
                0 => Ok(()),
                _ => Err(DecompositionError::VertexUncovered(0)),
            };
        }
        let roots = self.parent.iter().filter(|p| p.is_none()).count();
        if roots != 1 || self.parent.iter().flatten().any(|&p| p >= m) {
            return Err(DecompositionError::NotATree);
        }
        if self.post_order().len() != m {
            return Err(DecompositionError::NotATree);
        }
        let mut holders: Vec<Vec<usize>> = vec![Vec::new(); n];
        for (b, bag) in self.bags.iter().enumerate() {
            for &v in bag {
                if v >= n {
                    return Err(DecompositionError::UnknownVertex { bag: b, vertex: v });
                }
                holders[v].push(b);
            }
        }
        for (v, hs) in holders.iter().enumerate() {
            if hs.is_empty() {
                return Err(DecompositionError::VertexUncovered(v));
            }
            // a connected subtree has exactly one bag whose parent lacks v
            let tops = hs
                .iter()
                .filter(|&&b| match self.parent[b] {
                    Some(p) => self.bags[p].binary_search(&v).is_err(),
                    None => true,
                })
                .count();
            if tops != 1 {
                return Err(DecompositionError::Disconnected(v));
            }
        }
        for (u, v) in g.edges() {
            let covered = holders[u]
                .iter()
                .any(|&b| self.bags[b].binary_search(&v).is_ok());
            if !covered {
                return Err(DecompositionError::EdgeUncovered(u, v));
            }
        }
        Ok(())
    }
}

/// Decomposition from a greedy elimination order; ties go to the lowest index.
pub fn tree_decomposition(g: &Network, strategy: Strategy) -> TreeDecomposition {
    let n = g.vertex_count();
    let mut adj: Vec<BTreeSet<usize>> = (0..n)
        .map(|v| g.adjacent(v).iter().copied().collect())
        .collect();
    let mut alive = vec![true; n];
    let mut score = vec![0usize; n];
    let mut dirty = vec![true; n];
    let mut step_of = vec![usize::MAX; n];
    let mut bags = Vec::with_capacity(n);

    for step in 0..n {
        let mut best: Option<(usize, usize)> = None;
        for v in 0..n {
            if !alive[v] {
                continue;
            }
            if dirty[v] {
                score[v] = match strategy {
                    Strategy::MinDegree => adj[v].len(),
                    Strategy::MinFill => fill_in(&adj, v),
                };
                dirty[v] = false;
            }
            if best.is_none_or(|(s, _)| score[v] < s) {
                best = Some((score[v], v));
                if score[v] == 0 && strategy == Strategy::MinFill {
                    break;
                }
            }
        }
        let (_, v) = best.expect("a live vertex remains");
        let nbrs: Vec<usize> = adj[v].iter().copied().collect();
        for (i, &a) in nbrs.iter().enumerate() {
            adj[a].remove(&v);
            for &b in &nbrs[i + 1..] {
                adj[a].insert(b);
                adj[b].insert(a);
            }
        }
        for &a in &nbrs {
            dirty[a] = true;
            if strategy == Strategy::MinFill {
                for &b in &adj[a] {
                    dirty[b] = true;
                }
            }
        }
        adj[v].clear();
        alive[v] = false;
        step_of[v] = step;
        let mut bag = nbrs;
        bag.push(v);
        bags.push(bag);
    }

    // parent: the bag of the earliest-eliminated remaining neighbour
    let mut parent: Vec<Option<usize>> = bags
        .iter()
        .enumerate()
        .map(|(i, bag)| bag.iter().map(|&w| step_of[w]).filter(|&s| s > i).min())
        .collect();
    if let Some(last) = bags.len().checked_sub(1) {
        for (i, p) in parent.iter_mut().enumerate() {
            if p.is_none() && i != last {
                *p = Some(last);
            }
        }
    }
    TreeDecomposition::new(bags, parent)
}

fn fill_in(adj: &[BTreeSet<usize>], v: usize) -> usize {
    let nbrs: Vec<usize> = adj[v].iter().copied().collect();
    let mut missing = 0;
    for (i, &a) in nbrs.iter().enumerate() {
        for &b in &nbrs[i + 1..] {
            if !adj[a].contains(&b) {
                missing += 1;
            }
        }
    }
    missing
}
