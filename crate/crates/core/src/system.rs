//! Networks, systems, configurations and their transition semantics.

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use thiserror::Error;

use crate::repr::{Formula, FunctionRepr};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SystemError {
    #[error("vertex {vertex} out of range for a network with {n} vertices")]
    VertexOutOfRange { vertex: usize, n: usize },
    #[error("loop on vertex {0}")]
    Loop(usize),
    #[error("duplicate edge {{{0}, {1}}}")]
    DuplicateEdge(usize, usize),
    #[error("expected {expected} functions, got {got}")]
    FunctionCount { expected: usize, got: usize },
    #[error("function of vertex {vertex} has arity {got}, expected {expected}")]
    ArityMismatch {
        vertex: usize,
        expected: usize,
        got: usize,
    },
    #[error("formula of vertex {vertex} references vertex {var} outside its closed neighbourhood")]
    VariableOutsideScope { vertex: usize, var: usize },
    #[error("configuration has length {got}, expected {expected}")]
    ConfigurationLength { expected: usize, got: usize },
    #[error("invalid configuration character {0:?}")]
    ConfigurationChar(char),
}

/// Undirected simple graph on vertices `0..n`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Network {
    adj: Vec<Vec<usize>>,
    edge_count: usize,
}

impl Network {
    pub fn new<I>(n: usize, edges: I) -> Result<Self, SystemError>
    where
        I: IntoIterator<Item = (usize, usize)>,
    {
        let mut adj = vec![Vec::new(); n];
        let mut seen = BTreeSet::new();
        for (u, v) in edges {
            for w in [u, v] {
                if w >= n {
                    return Err(SystemError::VertexOutOfRange { vertex: w, n });
                }
            }
            if u == v {
                return Err(SystemError::Loop(u));
            }
            let key = (u.min(v), u.max(v));
            if !seen.insert(key) {
                return Err(SystemError::DuplicateEdge(key.0, key.1));
            }
            adj[u].push(v);
            adj[v].push(u);
        }
        for list in &mut adj {
            list.sort_unstable();
        }
        Ok(Network {
            adj,
            edge_count: seen.len(),
        })
    }

    /// Like [`Network::new`] but silently drops loops and repeated edges.
    pub fn from_edges_dedup<I>(n: usize, edges: I) -> Result<Self, SystemError>
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
            if u != v {
                set.insert((u.min(v), u.max(v)));
            }
        }
        Network::new(n, set)
    }

    pub fn edgeless(n: usize) -> Self {
        Network {
            adj: vec![Vec::new(); n],
            edge_count: 0,
        }
    }

    pub fn path(n: usize) -> Self {
        Network::new(n, (1..n).map(|i| (i - 1, i))).expect("path edges are valid")
    }

    pub fn cycle(n: usize) -> Self {
        assert!(n >= 3, "a cycle needs at least three vertices");
        Network::new(n, (0..n).map(|i| (i, (i + 1) % n))).expect("cycle edges are valid")
    }

    pub fn complete(n: usize) -> Self {
        let edges = (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v)));
        Network::new(n, edges).expect("clique edges are valid")
    }

    /// Star with centre `0` and leaves `1..=leaves`.
    pub fn star(leaves: usize) -> Self {
        Network::new(leaves + 1, (1..=leaves).map(|v| (0, v))).expect("star edges are valid")
    }

    pub fn complete_bipartite(a: usize, b: usize) -> Self {
        let edges = (0..a).flat_map(|u| (0..b).map(move |v| (u, a + v)));
        Network::new(a + b, edges).expect("bipartite edges are valid")
    }

    pub fn vertex_count(&self) -> usize {
        self.adj.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edge_count
    }

    /// Edges as `(u, v)` with `u < v`, in lexicographic order.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.adj
            .iter()
            .enumerate()
            .flat_map(|(u, list)| list.iter().filter(move |&&v| u < v).map(move |&v| (u, v)))
    }

    pub fn adjacent(&self, v: usize) -> &[usize] {
        &self.adj[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].len()
    }

    pub fn max_degree(&self) -> usize {
        self.adj.iter().map(Vec::len).max().unwrap_or(0)
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        u < self.adj.len() && self.adj[u].binary_search(&v).is_ok()
    }

    /// `{v} ∪ N(v)` in ascending order; this is the argument order of `f_v`.
    pub fn closed_neighborhood(&self, v: usize) -> Vec<usize> {
        let list = &self.adj[v];
        let at = list.partition_point(|&w| w < v);
        let mut out = Vec::with_capacity(list.len() + 1);
        out.extend_from_slice(&list[..at]);
        out.push(v);
        out.extend_from_slice(&list[at..]);
        out
    }

    /// Vertices outside `set` adjacent to some member of `set`.
    pub fn neighbors(&self, set: &[usize]) -> Result<BTreeSet<usize>, SystemError> {
        let n = self.vertex_count();
        let mut inside = vec![false; n];
        for &v in set {
            if v >= n {
                return Err(SystemError::VertexOutOfRange { vertex: v, n });
            }
            inside[v] = true;
        }
        let mut out = BTreeSet::new();
        for &v in set {
            out.extend(self.adj[v].iter().copied().filter(|&w| !inside[w]));
        }
        Ok(out)
    }

    /// Relabels vertex `v` as `perm[v]`.
    pub fn permuted(&self, perm: &[usize]) -> Network {
        Network::new(
            self.vertex_count(),
            self.edges().map(|(u, v)| (perm[u], perm[v])),
        )
        .expect("a permutation preserves simplicity")
    }
}

/// A boolean state per vertex. Values are never mutated in place.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Configuration(Vec<bool>);

impl Configuration {
    pub fn new(bits: Vec<bool>) -> Self {
        Configuration(bits)
    }

    pub fn zeros(n: usize) -> Self {
        Configuration(vec![false; n])
    }

    pub fn ones(n: usize) -> Self {
        Configuration(vec![true; n])
    }

    /// Bit `i` of the configuration is bit `i` of `mask`.
    pub fn from_mask(n: usize, mask: u64) -> Self {
        Configuration((0..n).map(|i| mask >> i & 1 == 1).collect())
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn get(&self, i: usize) -> bool {
        self.0[i]
    }

    pub fn bits(&self) -> &[bool] {
        &self.0
    }

    pub fn with(&self, i: usize, value: bool) -> Self {
        let mut bits = self.0.clone();
        bits[i] = value;
        Configuration(bits)
    }

    pub fn ones_count(&self) -> usize {
        self.0.iter().filter(|&&b| b).count()
    }
}

impl fmt::Display for Configuration {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for &b in &self.0 {
            f.write_str(if b { "1" } else { "0" })?;
        }
        Ok(())
    }
}

impl fmt::Debug for Configuration {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Configuration({self})")
    }
}

impl FromStr for Configuration {
    type Err = SystemError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        s.chars()
            .map(|c| match c {
                '0' => Ok(false),
                '1' => Ok(true),
                other => Err(SystemError::ConfigurationChar(other)),
            })
            .collect::<Result<Vec<_>, _>>()
            .map(Configuration)
    }
}

/// A finite sequence of vertex sets updated simultaneously, one per step.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct UpdateSchedule {
    steps: Vec<Vec<usize>>,
}

impl UpdateSchedule {
    pub fn new(n: usize, steps: Vec<Vec<usize>>) -> Result<Self, SystemError> {
        let mut steps = steps;
        for step in &mut steps {
            if let Some(&v) = step.iter().find(|&&v| v >= n) {
                return Err(SystemError::VertexOutOfRange { vertex: v, n });
            }
            step.sort_unstable();
            step.dedup();
        }
        Ok(UpdateSchedule { steps })
    }

    /// One step updating every vertex.
    pub fn synchronous(n: usize) -> Self {
        UpdateSchedule {
            steps: vec![(0..n).collect()],
        }
    }

    /// `n` steps updating one vertex each, in ascending order.
    pub fn sequential(n: usize) -> Self {
        UpdateSchedule {
            steps: (0..n).map(|v| vec![v]).collect(),
        }
    }

    pub fn empty() -> Self {
        UpdateSchedule { steps: Vec::new() }
    }

    pub fn steps(&self) -> &[Vec<usize>] {
        &self.steps
    }

    pub fn len(&self) -> usize {
        self.steps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.steps.is_empty()
    }

    pub fn then(&self, other: &UpdateSchedule) -> UpdateSchedule {
        let mut steps = self.steps.clone();
        steps.extend(other.steps.iter().cloned());
        UpdateSchedule { steps }
    }
}

/// A network with one local function per vertex.
///
/// The function of vertex `i` reads its arguments in the order of
/// [`Network::closed_neighborhood`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct System {
    network: Network,
    functions: Vec<FunctionRepr>,
    scopes: Vec<Vec<usize>>,
}

impl System {
    pub fn new(network: Network, functions: Vec<FunctionRepr>) -> Result<Self, SystemError> {
        let n = network.vertex_count();
        if functions.len() != n {
            return Err(SystemError::FunctionCount {
                expected: n,
                got: functions.len(),
            });
        }
        let scopes: Vec<Vec<usize>> = (0..n).map(|v| network.closed_neighborhood(v)).collect();
        for (v, (f, scope)) in functions.iter().zip(&scopes).enumerate() {
            if f.arity() != scope.len() {
                return Err(SystemError::ArityMismatch {
                    vertex: v,
                    expected: scope.len(),
                    got: f.arity(),
                });
            }
        }
        Ok(System {
            network,
            functions,
            scopes,
        })
    }

    /// Builds a system from formulas whose `Var` indices name vertices
    /// rather than argument positions.
    pub fn from_vertex_formulas(
        network: Network,
        formulas: Vec<Formula>,
    ) -> Result<Self, SystemError> {
        let n = network.vertex_count();
        if formulas.len() != n {
            return Err(SystemError::FunctionCount {
                expected: n,
                got: formulas.len(),
            });
        }
        let mut functions = Vec::with_capacity(n);
        for (v, formula) in formulas.into_iter().enumerate() {
            let scope = network.closed_neighborhood(v);
            let mut position = std::collections::HashMap::with_capacity(scope.len());
            for (k, &w) in scope.iter().enumerate() {
                position.insert(w, k);
            }
            if let Some(var) = formula
                .vars()
                .into_iter()
                .find(|w| !position.contains_key(w))
            {
                return Err(SystemError::VariableOutsideScope { vertex: v, var });
            }
            let remapped = formula.map_vars(&|w| position[&w]);
            functions.push(FunctionRepr::Formula {
                arity: scope.len(),
                formula: remapped,
            });
        }
        System::new(network, functions)
    }

    pub fn network(&self) -> &Network {
        &self.network
    }

    pub fn functions(&self) -> &[FunctionRepr] {
        &self.functions
    }

    pub fn function(&self, v: usize) -> &FunctionRepr {
        &self.functions[v]
    }

    /// Argument order of `f_v`.
    pub fn scope(&self, v: usize) -> &[usize] {
        &self.scopes[v]
    }

    pub fn vertex_count(&self) -> usize {
        self.network.vertex_count()
    }

    pub fn into_parts(self) -> (Network, Vec<FunctionRepr>) {
        (self.network, self.functions)
    }

    /// Value of `f_v` on the configuration.
    pub fn local_value(&self, v: usize, config: &Configuration) -> bool {
        let scope = &self.scopes[v];
        self.functions[v].eval_with(|k| config.get(scope[k]))
    }

    fn check_len(&self, config: &Configuration) -> Result<(), SystemError> {
        if config.len() != self.vertex_count() {
            return Err(SystemError::ConfigurationLength {
                expected: self.vertex_count(),
                got: config.len(),
            });
        }
        Ok(())
    }

    fn check_set(&self, set: &[usize]) -> Result<(), SystemError> {
        let n = self.vertex_count();
        match set.iter().find(|&&v| v >= n) {
            Some(&v) => Err(SystemError::VertexOutOfRange { vertex: v, n }),
            None => Ok(()),
        }
    }

    /// Updates the vertices of `set` simultaneously; others keep their value.
    pub fn global_transition(
        &self,
        set: &[usize],
        config: &Configuration,
    ) -> Result<Configuration, SystemError> {
        self.check_len(config)?;
        self.check_set(set)?;
        let mut next = config.0.clone();
        for &v in set {
            next[v] = self.local_value(v, config);
        }
        Ok(Configuration(next))
    }

    /// Applies the schedule's steps from first to last.
    pub fn global_map(
        &self,
        schedule: &UpdateSchedule,
        config: &Configuration,
    ) -> Result<Configuration, SystemError> {
        self.check_len(config)?;
        let mut current = config.clone();
        for step in schedule.steps() {
            current = self.global_transition(step, &current)?;
        }
        Ok(current)
    }

    /// # Panics
    /// If the configuration length differs from the vertex count.
    pub fn is_fixed_point(&self, config: &Configuration) -> bool {
        assert_eq!(config.len(), self.vertex_count(), "configuration length");
        (0..self.vertex_count()).all(|v| self.local_value(v, config) == config.get(v))
    }

    pub fn is_local_fixed_point(
        &self,
        set: &[usize],
        config: &Configuration,
    ) -> Result<bool, SystemError> {
        self.check_len(config)?;
        self.check_set(set)?;
        Ok(set
            .iter()
            .all(|&v| self.local_value(v, config) == config.get(v)))
    }

    /// Dualizes every local function.
    pub fn dualized(&self) -> System {
        System {
            network: self.network.clone(),
            functions: self.functions.iter().map(FunctionRepr::dualize).collect(),
            scopes: self.scopes.clone(),
        }
    }

    /// Replaces each function with `map(v, f)`; arities must be preserved.
    pub fn map_functions<F>(&self, mut map: F) -> Result<System, SystemError>
    where
        F: FnMut(usize, &FunctionRepr) -> FunctionRepr,
    {
        let functions = self
            .functions
            .iter()
            .enumerate()
            .map(|(v, f)| map(v, f))
            .collect();
        System::new(self.network.clone(), functions)
    }

    /// Relabels vertex `v` as `perm[v]`, tabulating every function.
    ///
    /// Tables are used because the argument order changes with the labels.
    pub fn permuted(&self, perm: &[usize]) -> System {
        let n = self.vertex_count();
        let network = self.network.permuted(perm);
        let mut inverse = vec![0; n];
        for (v, &p) in perm.iter().enumerate() {
            inverse[p] = v;
        }
        let functions = (0..n)
            .map(|p| {
                let v = inverse[p];
                let new_scope = network.closed_neighborhood(p);
                let old_scope = &self.scopes[v];
                // position of each old argument inside the new scope
                let at: Vec<usize> = old_scope
                    .iter()
                    .map(|&w| {
                        new_scope
                            .binary_search(&perm[w])
                            .expect("scope maps onto scope")
                    })
                    .collect();
                let k = new_scope.len();
                let f = &self.functions[v];
                FunctionRepr::Table(crate::repr::TruthTable::from_fn(k, |idx| {
                    f.eval_with(|j| idx >> (k - 1 - at[j]) & 1 == 1)
                }))
            })
            .collect();
        System::new(network, functions).expect("permutation preserves arities")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::repr::{parse_formula, TruthTable};

    fn formula_system(network: Network, texts: &[&str]) -> System {
        let functions = texts
            .iter()
            .enumerate()
            .map(|(v, t)| {
                let arity = network.degree(v) + 1;
                FunctionRepr::Formula {
                    arity,
                    formula: parse_formula(t, arity).unwrap(),
                }
            })
            .collect();
        System::new(network, functions).unwrap()
    }

    fn swap2() -> System {
        // arguments of both vertices are (x_0, x_1)
        formula_system(Network::path(2), &["x2", "x1"])
    }

    fn cfg(s: &str) -> Configuration {
        s.parse().unwrap()
    }

    #[test]
    fn neighbors_exclude_the_set() {
        let p = Network::path(3);
        assert_eq!(p.neighbors(&[1]).unwrap(), BTreeSet::from([0, 2]));
        assert_eq!(p.neighbors(&[0, 1]).unwrap(), BTreeSet::from([2]));
        assert!(Network::edgeless(2).neighbors(&[0]).unwrap().is_empty());
        assert_eq!(
            p.neighbors(&[3]),
            Err(SystemError::VertexOutOfRange { vertex: 3, n: 3 })
        );
    }

    #[test]
    fn network_rejects_bad_edges() {
        assert_eq!(Network::new(2, [(0, 0)]), Err(SystemError::Loop(0)));
        assert_eq!(
            Network::new(2, [(0, 1), (1, 0)]),
            Err(SystemError::DuplicateEdge(0, 1))
        );
        assert!(Network::new(2, [(0, 2)]).is_err());
        let g = Network::from_edges_dedup(3, [(0, 1), (1, 0), (2, 2)]).unwrap();
        assert_eq!(g.edge_count(), 1);
    }

    #[test]
    fn closed_neighborhood_is_sorted() {
        let g = Network::new(4, [(2, 0), (2, 3), (1, 2)]).unwrap();
        assert_eq!(g.closed_neighborhood(2), vec![0, 1, 2, 3]);
        assert_eq!(g.closed_neighborhood(3), vec![2, 3]);
    }

    #[test]
    fn transitions() {
        let s = swap2();
        assert_eq!(s.global_transition(&[], &cfg("01")).unwrap(), cfg("01"));
        assert_eq!(s.global_transition(&[0, 1], &cfg("01")).unwrap(), cfg("10"));
        let neg = formula_system(Network::edgeless(1), &["!x1"]);
        assert_eq!(neg.global_transition(&[0], &cfg("0")).unwrap(), cfg("1"));
    }

    #[test]
    fn global_map_composes_left_to_right() {
        let s = swap2();
        let sched = UpdateSchedule::new(2, vec![vec![0], vec![1]]).unwrap();
        assert_eq!(s.global_map(&sched, &cfg("01")).unwrap(), cfg("11"));
        assert_eq!(
            s.global_map(&UpdateSchedule::empty(), &cfg("01")).unwrap(),
            cfg("01")
        );
    }

    #[test]
    fn fixed_points() {
        let s = swap2();
        assert!(s.is_fixed_point(&cfg("11")));
        assert!(!s.is_fixed_point(&cfg("10")));
        assert!(s.is_local_fixed_point(&[], &cfg("10")).unwrap());
        let neg = formula_system(Network::edgeless(1), &["!x1"]);
        assert!(!neg.is_fixed_point(&cfg("0")));
        let id = formula_system(Network::path(3), &["x1", "x2", "x2"]);
        for mask in 0..8 {
            assert!(id.is_fixed_point(&Configuration::from_mask(3, mask)));
        }
    }

    #[test]
    fn arity_is_checked() {
        let f = FunctionRepr::Table(TruthTable::constant(1, false));
        let err = System::new(Network::path(2), vec![f.clone(), f]).unwrap_err();
        assert_eq!(
            err,
            SystemError::ArityMismatch {
                vertex: 0,
                expected: 2,
                got: 1
            }
        );
    }

    #[test]
    fn vertex_formulas_are_remapped() {
        // vertex 2 on path 0-1-2 has scope (1, 2); formula over vertex ids
        let g = Network::path(3);
        let fs = vec![
            Formula::Var(0),
            Formula::Var(1),
            Formula::And(vec![Formula::Var(1), Formula::Var(2)]),
        ];
        let s = System::from_vertex_formulas(g.clone(), fs).unwrap();
        assert!(s.is_fixed_point(&cfg("011")));
        assert!(!s.is_fixed_point(&cfg("001")));
        let bad = vec![Formula::Var(2), Formula::Var(1), Formula::Var(2)];
        assert_eq!(
            System::from_vertex_formulas(g, bad).unwrap_err(),
            SystemError::VariableOutsideScope { vertex: 0, var: 2 }
        );
    }

    #[test]
    fn configuration_round_trip() {
        let c = cfg("0110");
        assert_eq!(c.to_string(), "0110");
        assert_eq!(Configuration::from_mask(4, 0b0110), c);
        assert!("01a".parse::<Configuration>().is_err());
    }

    #[test]
    fn permuted_preserves_fixed_points() {
        let s = formula_system(Network::path(3), &["x2", "x1 & x3", "x1 | x2"]);
        let perm = [2, 0, 1];
        let p = s.permuted(&perm);
        for mask in 0..8u64 {
            let c = Configuration::from_mask(3, mask);
            let mut moved = vec![false; 3];
            for v in 0..3 {
                moved[perm[v]] = c.get(v);
            }
            assert_eq!(
                s.is_fixed_point(&c),
                p.is_fixed_point(&Configuration::new(moved))
            );
        }
    }
}
