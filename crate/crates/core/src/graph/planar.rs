//! Left-right planarity test producing a combinatorial embedding.

use std::collections::HashMap;

use thiserror::Error;

use crate::system::Network;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum EmbeddingError {
    #[error("rotation has {got} vertices, network has {expected}")]
    VertexCount { expected: usize, got: usize },
    #[error("rotation of vertex {0} is not a permutation of its neighbours")]
    NotAPermutation(usize),
    #[error("rotation system is not planar")]
    NotPlanar,
}

/// Clockwise neighbour order around every vertex.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Embedding {
    rotation: Vec<Vec<usize>>,
    position: Vec<HashMap<usize, usize>>,
}

impl Embedding {
    /// Accepts a rotation system after checking it matches the network.
    pub fn from_rotation(g: &Network, rotation: Vec<Vec<usize>>) -> Result<Self, EmbeddingError> {
        if rotation.len() != g.vertex_count() {
            return Err(EmbeddingError::VertexCount {
                expected: g.vertex_count(),
                got: rotation.len(),
            });
        }
        for (v, list) in rotation.iter().enumerate() {
            let mut sorted = list.clone();
            sorted.sort_unstable();
            if sorted != g.adjacent(v) {
                return Err(EmbeddingError::NotAPermutation(v));
            }
        }
        Ok(Embedding::build(rotation))
    }

    fn build(rotation: Vec<Vec<usize>>) -> Self {
        let position = rotation
            .iter()
            .map(|list| list.iter().enumerate().map(|(i, &w)| (w, i)).collect())
            .collect();
        Embedding { rotation, position }
    }

    pub fn rotation(&self, v: usize) -> &[usize] {
        &self.rotation[v]
    }

    pub fn vertex_count(&self) -> usize {
        self.rotation.len()
    }

    /// Neighbour following `w` clockwise around `v`.
    pub fn cw(&self, v: usize, w: usize) -> usize {
        let list = &self.rotation[v];
        list[(self.position[v][&w] + 1) % list.len()]
    }

    /// Neighbour preceding `w` clockwise around `v`.
    pub fn ccw(&self, v: usize, w: usize) -> usize {
        let list = &self.rotation[v];
        list[(self.position[v][&w] + list.len() - 1) % list.len()]
    }

    /// The half-edge after `v → w` on its face.
    pub fn next_on_face(&self, v: usize, w: usize) -> (usize, usize) {
        (w, self.ccw(w, v))
    }

    /// Every face as its cyclic sequence of half-edges.
    pub fn faces(&self) -> Vec<Vec<(usize, usize)>> {
        let mut seen: Vec<Vec<bool>> = self.rotation.iter().map(|l| vec![false; l.len()]).collect();
        let mut faces = Vec::new();
        for v in 0..self.rotation.len() {
            for i in 0..self.rotation[v].len() {
                if seen[v][i] {
                    continue;
                }
                let start = (v, self.rotation[v][i]);
                let mut face = Vec::new();
                let mut h = start;
                loop {
                    seen[h.0][self.position[h.0][&h.1]] = true;
                    face.push(h);
                    h = self.next_on_face(h.0, h.1);
                    if h == start {
                        break;
                    }
                }
                faces.push(face);
            }
        }
        faces
    }

    /// Checks `V - E + F = 2` on every connected component.
    pub fn satisfies_euler(&self) -> bool {
        let n = self.rotation.len();
        let comp = components(&self.rotation);
        let count = comp.iter().copied().max().map_or(0, |m| m + 1);
        let mut v = vec![0i64; count];
        let mut e2 = vec![0i64; count];
        let mut f = vec![0i64; count];
        for x in 0..n {
            v[comp[x]] += 1;
            e2[comp[x]] += self.rotation[x].len() as i64;
        }
        for face in self.faces() {
            f[comp[face[0].0]] += 1;
        }
        (0..count).all(|c| {
            let faces = if e2[c] == 0 { 1 } else { f[c] };
            v[c] - e2[c] / 2 + faces == 2
        })
    }
}

fn components(adj: &[Vec<usize>]) -> Vec<usize> {
    let n = adj.len();
    let mut comp = vec![usize::MAX; n];
    let mut next = 0;
    for s in 0..n {
        if comp[s] != usize::MAX {
            continue;
        }
        comp[s] = next;
        let mut stack = vec![s];
        while let Some(v) = stack.pop() {
            for &w in &adj[v] {
                if comp[w] == usize::MAX {
                    comp[w] = next;
                    stack.push(w);
                }
            }
        }
        next += 1;
    }
    comp
}

pub fn is_planar(g: &Network) -> bool {
    planar_embedding(g).is_some()
}

/// A planar embedding, or `None` when the network is not planar.
pub fn planar_embedding(g: &Network) -> Option<Embedding> {
    let n = g.vertex_count();
    if n > 2 && g.edge_count() > 3 * n - 6 {
        return None;
    }
    let mut lr = Lr::new(g);
    for v in 0..n {
        if lr.height[v] == NONE {
            lr.height[v] = 0;
            lr.roots.push(v);
            lr.orient(v);
        }
    }
    for v in 0..n {
        let mut out = std::mem::take(&mut lr.out[v]);
        out.sort_by_key(|&e| lr.nesting[e]);
        lr.out[v] = out;
    }
    for i in 0..lr.roots.len() {
        if !lr.test(lr.roots[i]) {
            return None;
        }
    }
    for e in 0..lr.src.len() {
        let s = lr.sign(e);
        lr.nesting[e] *= s as i64;
    }
    let mut half = HalfEdges::new(n);
    for v in 0..n {
        let mut out = std::mem::take(&mut lr.out[v]);
        out.sort_by_key(|&e| lr.nesting[e]);
        let mut prev = None;
        for &e in &out {
            let w = lr.dst[e];
            half.add_cw(v, w, prev);
            prev = Some(w);
        }
        lr.out[v] = out;
    }
    for i in 0..lr.roots.len() {
        lr.embed(lr.roots[i], &mut half);
    }
    Some(Embedding::build(half.rotations()))
}

const NONE: usize = usize::MAX;

#[derive(Clone, Copy, Debug, Default)]
struct Interval {
    low: Option<usize>,
    high: Option<usize>,
}

impl Interval {
    fn single(e: usize) -> Self {
        Interval {
            low: Some(e),
            high: Some(e),
        }
    }

    fn empty(&self) -> bool {
        self.low.is_none() && self.high.is_none()
    }
}

#[derive(Clone, Copy, Debug)]
struct Pair {
    id: usize,
    left: Interval,
    right: Interval,
}

impl Pair {
    fn swap(&mut self) {
        std::mem::swap(&mut self.left, &mut self.right);
    }
}

struct Lr<'a> {
    g: &'a Network,
    roots: Vec<usize>,
    height: Vec<usize>,
    src: Vec<usize>,
    dst: Vec<usize>,
    id: HashMap<(usize, usize), usize>,
    out: Vec<Vec<usize>>,
    parent_edge: Vec<Option<usize>>,
    lowpt: Vec<usize>,
    lowpt2: Vec<usize>,
    nesting: Vec<i64>,
    reference: Vec<Option<usize>>,
    side: Vec<i8>,
    lowpt_edge: Vec<Option<usize>>,
    stack_bottom: Vec<Option<usize>>,
    stack: Vec<Pair>,
    pair_ids: usize,
    left_ref: Vec<usize>,
    right_ref: Vec<usize>,
}

impl<'a> Lr<'a> {
    fn new(g: &'a Network) -> Self {
        let n = g.vertex_count();
        Lr {
            g,
            roots: Vec::new(),
            height: vec![NONE; n],
            src: Vec::new(),
            dst: Vec::new(),
            id: HashMap::new(),
            out: vec![Vec::new(); n],
            parent_edge: vec![None; n],
            lowpt: Vec::new(),
            lowpt2: Vec::new(),
            nesting: Vec::new(),
            reference: Vec::new(),
            side: Vec::new(),
            lowpt_edge: Vec::new(),
            stack_bottom: Vec::new(),
            stack: Vec::new(),
            pair_ids: 0,
            left_ref: vec![NONE; n],
            right_ref: vec![NONE; n],
        }
    }

    fn new_edge(&mut self, v: usize, w: usize) -> usize {
        let e = self.src.len();
        self.src.push(v);
        self.dst.push(w);
        self.id.insert((v, w), e);
        self.out[v].push(e);
        self.lowpt.push(0);
        self.lowpt2.push(0);
        self.nesting.push(0);
        self.reference.push(None);
        self.side.push(1);
        self.lowpt_edge.push(None);
        self.stack_bottom.push(None);
        e
    }

    fn orient(&mut self, root: usize) {
        let g = self.g;
        let n = g.vertex_count();
        let mut ind = vec![0usize; n];
        let mut resumed = HashMap::new();
        let mut dfs = vec![root];
        while let Some(v) = dfs.pop() {
            let parent = self.parent_edge[v];
            let adj = g.adjacent(v);
            while ind[v] < adj.len() {
                let w = adj[ind[v]];
                let vw = match self.id.get(&(v, w)) {
                    Some(&e) if resumed.get(&e) == Some(&true) => e,
                    _ => {
                        if self.id.contains_key(&(v, w)) || self.id.contains_key(&(w, v)) {
                            ind[v] += 1;
                            continue;
                        }
                        let e = self.new_edge(v, w);
                        self.lowpt[e] = self.height[v];
                        self.lowpt2[e] = self.height[v];
                        if self.height[w] == NONE {
                            self.parent_edge[w] = Some(e);
                            self.height[w] = self.height[v] + 1;
                            dfs.push(v);
                            dfs.push(w);
                            resumed.insert(e, true);
                            break;
                        }
                        self.lowpt[e] = self.height[w];
                        e
                    }
                };
                self.nesting[vw] = 2 * self.lowpt[vw] as i64;
                if self.lowpt2[vw] < self.height[v] {
                    self.nesting[vw] += 1;
                }
                if let Some(e) = parent {
                    if self.lowpt[vw] < self.lowpt[e] {
                        self.lowpt2[e] = self.lowpt[e].min(self.lowpt2[vw]);
                        self.lowpt[e] = self.lowpt[vw];
                    } else if self.lowpt[vw] > self.lowpt[e] {
                        self.lowpt2[e] = self.lowpt2[e].min(self.lowpt[vw]);
                    } else {
                        self.lowpt2[e] = self.lowpt2[e].min(self.lowpt2[vw]);
                    }
                }
                ind[v] += 1;
            }
        }
    }

    fn top_id(&self) -> Option<usize> {
        self.stack.last().map(|p| p.id)
    }

    fn fresh_pair(&mut self, left: Interval, right: Interval) -> Pair {
        self.pair_ids += 1;
        Pair {
            id: self.pair_ids,
            left,
            right,
        }
    }

    fn conflicting(&self, i: &Interval, b: usize) -> bool {
        !i.empty() && i.high.is_some_and(|h| self.lowpt[h] > self.lowpt[b])
    }

    fn lowest(&self, p: &Pair) -> usize {
        if p.left.empty() {
            return self.lowpt[p.right.low.expect("nonempty pair")];
        }
        if p.right.empty() {
            return self.lowpt[p.left.low.expect("nonempty pair")];
        }
        self.lowpt[p.left.low.unwrap()].min(self.lowpt[p.right.low.unwrap()])
    }

    fn test(&mut self, root: usize) -> bool {
        let n = self.g.vertex_count();
        let mut ind = vec![0usize; n];
        let mut resumed = vec![false; self.src.len()];
        let mut dfs = vec![root];
        while let Some(v) = dfs.pop() {
            let parent = self.parent_edge[v];
            let mut descended = false;
            while ind[v] < self.out[v].len() {
                let ei = self.out[v][ind[v]];
                let w = self.dst[ei];
                if !resumed[ei] {
                    self.stack_bottom[ei] = self.top_id();
                    if self.parent_edge[w] == Some(ei) {
                        dfs.push(v);
                        dfs.push(w);
                        resumed[ei] = true;
                        descended = true;
                        break;
                    }
                    self.lowpt_edge[ei] = Some(ei);
                    let pair = self.fresh_pair(Interval::default(), Interval::single(ei));
                    self.stack.push(pair);
                }
                if self.lowpt[ei] < self.height[v] {
                    if ei == self.out[v][0] {
                        let e = parent.expect("a return edge implies a parent");
                        self.lowpt_edge[e] = self.lowpt_edge[ei];
                    } else if !self.add_constraints(ei, parent.expect("non-root")) {
                        return false;
                    }
                }
                ind[v] += 1;
            }
            if !descended {
                if let Some(e) = parent {
                    self.remove_back_edges(e);
                }
            }
        }
        true
    }

    fn add_constraints(&mut self, ei: usize, e: usize) -> bool {
        let mut p = self.fresh_pair(Interval::default(), Interval::default());
        while let Some(mut q) = self.stack.pop() {
            if !q.left.empty() {
                q.swap();
            }
            if !q.left.empty() {
                return false;
            }
            let qlow = q.right.low.expect("nonempty pair");
            if self.lowpt[qlow] > self.lowpt[e] {
                if p.right.empty() {
                    p.right = q.right;
                } else {
                    self.reference[p.right.low.unwrap()] = q.right.high;
                }
                p.right.low = q.right.low;
            } else {
                self.reference[qlow] = self.lowpt_edge[e];
            }
            if self.top_id() == self.stack_bottom[ei] {
                break;
            }
        }
        while let Some(top) = self.stack.last() {
            if !(self.conflicting(&top.left, ei) || self.conflicting(&top.right, ei)) {
                break;
            }
            let mut q = self.stack.pop().unwrap();
            if self.conflicting(&q.right, ei) {
                q.swap();
            }
            if self.conflicting(&q.right, ei) {
                return false;
            }
            if let Some(low) = p.right.low {
                self.reference[low] = q.right.high;
            }
            if q.right.low.is_some() {
                p.right.low = q.right.low;
            }
            if p.left.empty() {
                p.left = q.left;
            } else {
                self.reference[p.left.low.unwrap()] = q.left.high;
            }
            p.left.low = q.left.low;
        }
        if !(p.left.empty() && p.right.empty()) {
            self.stack.push(p);
        }
        true
    }

    fn remove_back_edges(&mut self, e: usize) {
        let u = self.src[e];
        while let Some(top) = self.stack.last() {
            if self.lowest(top) != self.height[u] {
                break;
            }
            let p = self.stack.pop().unwrap();
            if let Some(low) = p.left.low {
                self.side[low] = -1;
            }
        }
        if let Some(mut p) = self.stack.pop() {
            while let Some(h) = p.left.high.filter(|&h| self.dst[h] == u) {
                p.left.high = self.reference[h];
            }
            if p.left.high.is_none() {
                if let Some(low) = p.left.low {
                    self.reference[low] = p.right.low;
                    self.side[low] = -1;
                    p.left.low = None;
                }
            }
            while let Some(h) = p.right.high.filter(|&h| self.dst[h] == u) {
                p.right.high = self.reference[h];
            }
            if p.right.high.is_none() {
                if let Some(low) = p.right.low {
                    self.reference[low] = p.left.low;
                    self.side[low] = -1;
                    p.right.low = None;
                }
            }
            self.stack.push(p);
        }
        if self.lowpt[e] < self.height[u] {
            let top = self.stack.last().expect("return edges leave a pair");
            let (hl, hr) = (top.left.high, top.right.high);
            self.reference[e] = match (hl, hr) {
                (Some(l), None) => Some(l),
                (Some(l), Some(r)) if self.lowpt[l] > self.lowpt[r] => Some(l),
                _ => hr,
            };
        }
    }

    fn sign(&mut self, e: usize) -> i8 {
        let mut old = HashMap::new();
        let mut stack = vec![e];
        while let Some(x) = stack.pop() {
            if let Some(r) = self.reference[x] {
                stack.push(x);
                stack.push(r);
                old.insert(x, r);
                self.reference[x] = None;
            } else if let Some(&r) = old.get(&x) {
                self.side[x] *= self.side[r];
            }
        }
        self.side[e]
    }

    fn embed(&mut self, root: usize, half: &mut HalfEdges) {
        let n = self.g.vertex_count();
        let mut ind = vec![0usize; n];
        let mut dfs = vec![root];
        while let Some(v) = dfs.pop() {
            while ind[v] < self.out[v].len() {
                let ei = self.out[v][ind[v]];
                ind[v] += 1;
                let w = self.dst[ei];
                if self.parent_edge[w] == Some(ei) {
                    half.add_first(w, v);
                    self.left_ref[v] = w;
                    self.right_ref[v] = w;
                    dfs.push(v);
                    dfs.push(w);
                    break;
                }
                if self.side[ei] == 1 {
                    half.add_cw(w, v, Some(self.right_ref[w]));
                } else {
                    half.add_ccw(w, v, Some(self.left_ref[w]));
                    self.left_ref[w] = v;
                }
            }
        }
    }
}

/// Doubly linked cyclic neighbour lists.
struct HalfEdges {
    links: Vec<HashMap<usize, (usize, usize)>>,
    first: Vec<Option<usize>>,
}

impl HalfEdges {
    fn new(n: usize) -> Self {
        HalfEdges {
            links: vec![HashMap::new(); n],
            first: vec![None; n],
        }
    }

    /// Inserts `end` directly clockwise after `reference` around `start`.
    fn add_cw(&mut self, start: usize, end: usize, reference: Option<usize>) {
        let links = &mut self.links[start];
        let Some(r) = reference else {
            links.insert(end, (end, end));
            self.first[start] = Some(end);
            return;
        };
        let cw_r = links[&r].0;
        links.get_mut(&r).unwrap().0 = end;
        links.insert(end, (cw_r, r));
        links.get_mut(&cw_r).unwrap().1 = end;
    }

    /// Inserts `end` directly counter-clockwise before `reference`.
    fn add_ccw(&mut self, start: usize, end: usize, reference: Option<usize>) {
        let Some(r) = reference else {
            self.add_cw(start, end, None);
            return;
        };
        let ccw_r = self.links[start][&r].1;
        self.add_cw(start, end, Some(ccw_r));
        if self.first[start] == Some(r) {
            self.first[start] = Some(end);
        }
    }

    fn add_first(&mut self, start: usize, end: usize) {
        let reference = self.first[start];
        self.add_ccw(start, end, reference);
    }

    fn rotations(&self) -> Vec<Vec<usize>> {
        (0..self.links.len())
            .map(|v| {
                let mut out = Vec::with_capacity(self.links[v].len());
                if let Some(f) = self.first[v] {
                    let mut w = f;
                    loop {
                        out.push(w);
                        w = self.links[v][&w].0;
                        if w == f {
                            break;
                        }
                    }
                }
                out
            })
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn check(g: &Network) -> Option<Embedding> {
        let e = planar_embedding(g)?;
        for v in 0..g.vertex_count() {
            let mut r = e.rotation(v).to_vec();
            r.sort_unstable();
            assert_eq!(r, g.adjacent(v));
        }
        assert!(e.satisfies_euler());
        Some(e)
    }

    #[test]
    fn kuratowski_graphs() {
        assert!(check(&Network::complete(5)).is_none());
        assert!(check(&Network::complete_bipartite(3, 3)).is_none());
        assert!(check(&Network::complete(4)).is_some());
        assert!(check(&Network::complete_bipartite(2, 5)).is_some());
    }

    #[test]
    fn small_graphs() {
        assert!(check(&Network::edgeless(0)).is_some());
        assert!(check(&Network::edgeless(3)).is_some());
        assert!(check(&Network::path(5)).is_some());
        assert!(check(&Network::cycle(7)).is_some());
        assert!(check(&Network::star(6)).is_some());
    }

    #[test]
    fn petersen_is_not_planar() {
        let outer = (0..5).map(|i| (i, (i + 1) % 5));
        let spokes = (0..5).map(|i| (i, i + 5));
        let inner = (0..5).map(|i| (5 + i, 5 + (i + 2) % 5));
        let g = Network::new(10, outer.chain(spokes).chain(inner)).unwrap();
        assert!(!is_planar(&g));
    }

    #[test]
    fn subdivided_k33_is_not_planar() {
        // K3,3 with every edge subdivided once; sparse enough to pass the edge bound
        let mut edges = Vec::new();
        let mut next = 6;
        for a in 0..3 {
            for b in 3..6 {
                edges.push((a, next));
                edges.push((next, b));
                next += 1;
            }
        }
        assert!(!is_planar(&Network::new(next, edges).unwrap()));
    }

    #[test]
    fn grid_and_wheel() {
        let mut edges = Vec::new();
        for r in 0..5 {
            for c in 0..5 {
                let v = r * 5 + c;
                if c + 1 < 5 {
                    edges.push((v, v + 1));
                }
                if r + 1 < 5 {
                    edges.push((v, v + 5));
                }
            }
        }
        let grid = Network::new(25, edges).unwrap();
        let e = check(&grid).unwrap();
        assert_eq!(e.faces().len(), 17);
        let wheel = Network::new(
            9,
            (1..9).map(|i| (0, i)).chain((1..9).map(|i| (i, i % 8 + 1))),
        )
        .unwrap();
        assert_eq!(check(&wheel).unwrap().faces().len(), 9);
    }

    #[test]
    fn maximal_planar_passes() {
        // octahedron: 6 vertices, 12 edges = 3n - 6
        let g = Network::new(
            6,
            [
                (0, 1),
                (0, 2),
                (0, 3),
                (0, 4),
                (5, 1),
                (5, 2),
                (5, 3),
                (5, 4),
                (1, 2),
                (2, 3),
                (3, 4),
                (4, 1),
            ],
        )
        .unwrap();
        assert_eq!(check(&g).unwrap().faces().len(), 8);
    }

    #[test]
    fn rotation_validation() {
        let g = Network::cycle(3);
        assert!(Embedding::from_rotation(&g, vec![vec![1, 2], vec![0, 2], vec![0, 1]]).is_ok());
        assert_eq!(
            Embedding::from_rotation(&g, vec![vec![1], vec![0, 2], vec![0, 1]]),
            Err(EmbeddingError::NotAPermutation(0))
        );
    }

    #[test]
    fn non_planar_rotation_fails_euler() {
        // K4 has 16 rotation systems; some are planar, some live on a torus
        let g = Network::complete(4);
        let mut verdicts = Vec::new();
        for mask in 0..16 {
            let rot = (0..4)
                .map(|v| {
                    let mut r = g.adjacent(v).to_vec();
                    if mask >> v & 1 == 1 {
                        r.swap(1, 2);
                    }
                    r
                })
                .collect();
            verdicts.push(Embedding::from_rotation(&g, rot).unwrap().satisfies_euler());
        }
        assert!(verdicts.contains(&true) && verdicts.contains(&false));
    }
}
