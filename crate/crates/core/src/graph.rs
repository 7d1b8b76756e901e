//! Undirected simple graphs with an optional nonprobe set, and the matrices
//! derived from them.

use std::collections::HashMap;

use crate::error::{Error, Result};
use crate::matrix::{Entry, LabeledMatrix, LineId};

/// Largest vertex count handled by the bitmask searches.
pub const MAX_SEARCH_VERTICES: usize = 64;

/// An undirected simple graph. Vertex indices follow first appearance in the
/// input. The optional nonprobe set is always independent.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Graph {
    names: Vec<String>,
    index: HashMap<String, usize>,
    adj: Vec<Vec<bool>>,
    nonprobes: Option<Vec<bool>>,
}

/// Builds a graph from named edges, indexing vertices by first appearance.
pub fn build_graph<S: AsRef<str>>(edges: &[(S, S)], nonprobes: Option<&[S]>) -> Result<Graph> {
    Graph::build::<S>(&[], edges, nonprobes)
}

impl Graph {
    /// `vertices` fixes the first indices (and allows isolated vertices);
    /// edge endpoints and nonprobe names not yet seen are appended in order.
    pub fn build<S: AsRef<str>>(
        vertices: &[S],
        edges: &[(S, S)],
        nonprobes: Option<&[S]>,
    ) -> Result<Graph> {
        let mut g = Graph::empty();
        for v in vertices {
            let v = v.as_ref();
            if g.index.contains_key(v) {
                return Err(Error::DuplicateVertex(v.to_string()));
            }
            g.intern(v)?;
        }
        for (a, b) in edges {
            let (a, b) = (a.as_ref(), b.as_ref());
            if a == b {
                return Err(Error::SelfLoop(a.to_string()));
            }
            let u = g.intern(a)?;
            let v = g.intern(b)?;
            if g.adj[u][v] {
                return Err(Error::DuplicateEdge(a.to_string(), b.to_string()));
            }
            g.adj[u][v] = true;
            g.adj[v][u] = true;
        }
        if let Some(np) = nonprobes {
            let mut idx = Vec::with_capacity(np.len());
            for v in np {
                idx.push(g.intern(v.as_ref())?);
            }
            return g.with_nonprobes(&idx);
        }
        Ok(g)
    }

    fn empty() -> Graph {
        Graph { names: Vec::new(), index: HashMap::new(), adj: Vec::new(), nonprobes: None }
    }

    fn intern(&mut self, name: &str) -> Result<usize> {
        if let Some(&i) = self.index.get(name) {
            return Ok(i);
        }
        if name.is_empty() {
            return Err(Error::EmptyName);
        }
        if name.starts_with('~') {
            return Err(Error::ReservedName(name.to_string()));
        }
        let i = self.names.len();
        self.names.push(name.to_string());
        self.index.insert(name.to_string(), i);
        for row in &mut self.adj {
            row.push(false);
        }
        self.adj.push(vec![false; i + 1]);
        if let Some(np) = &mut self.nonprobes {
            np.push(false);
        }
        Ok(i)
    }

    /// Graph on vertices named `0..n` with the given index edges.
    pub fn from_index_edges(n: usize, edges: &[(usize, usize)]) -> Result<Graph> {
        let names: Vec<String> = (0..n).map(|i| i.to_string()).collect();
        let mut g = Graph::empty();
        for v in &names {
            g.intern(v)?;
        }
        for &(u, v) in edges {
            if u == v {
                return Err(Error::SelfLoop(names[u].clone()));
            }
            if u >= n || v >= n {
                return Err(Error::MissingVertex(u.max(v).to_string()));
            }
            if g.adj[u][v] {
                return Err(Error::DuplicateEdge(names[u].clone(), names[v].clone()));
            }
            g.adj[u][v] = true;
            g.adj[v][u] = true;
        }
        Ok(g)
    }

    /// Same graph with the nonprobe set replaced.
    pub fn with_nonprobes(&self, nonprobes: &[usize]) -> Result<Graph> {
        let mut mask = vec![false; self.n()];
        for &v in nonprobes {
            if v >= self.n() {
                return Err(Error::MissingVertex(v.to_string()));
            }
            mask[v] = true;
        }
        for (u, v) in self.edges() {
            if mask[u] && mask[v] {
                return Err(Error::NonprobesNotIndependent(
                    self.names[u].clone(),
                    self.names[v].clone(),
                ));
            }
        }
        let mut g = self.clone();
        g.nonprobes = Some(mask);
        Ok(g)
    }

    pub fn without_nonprobes(&self) -> Graph {
        let mut g = self.clone();
        g.nonprobes = None;
        g
    }

    pub fn n(&self) -> usize {
        self.names.len()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn name(&self, v: usize) -> &str {
        &self.names[v]
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.index.get(name).copied()
    }

    #[inline]
    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.adj[u][v]
    }

    /// Edges `(u, v)` with `u < v`, sorted.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        let n = self.n();
        (0..n)
            .flat_map(|u| (u + 1..n).map(move |v| (u, v)))
            .filter(|&(u, v)| self.adj[u][v])
            .collect()
    }

    pub fn edge_count(&self) -> usize {
        self.edges().len()
    }

    pub fn neighbors(&self, v: usize) -> impl Iterator<Item = usize> + '_ {
        self.adj[v].iter().enumerate().filter(|(_, &b)| b).map(|(u, _)| u)
    }

    pub fn has_nonprobes(&self) -> bool {
        self.nonprobes.is_some()
    }

    /// Nonprobe indices in increasing order, if a nonprobe set was given.
    pub fn nonprobes(&self) -> Option<Vec<usize>> {
        self.nonprobes
            .as_ref()
            .map(|m| m.iter().enumerate().filter(|(_, &b)| b).map(|(i, _)| i).collect())
    }

    pub fn require_nonprobes(&self) -> Result<Vec<usize>> {
        self.nonprobes().ok_or(Error::MissingNonprobes)
    }

    pub fn is_nonprobe(&self, v: usize) -> bool {
        self.nonprobes.as_ref().is_some_and(|m| m[v])
    }

    /// Probe indices; every vertex when no nonprobe set is present.
    pub fn probes(&self) -> Vec<usize> {
        (0..self.n()).filter(|&v| !self.is_nonprobe(v)).collect()
    }

    /// Induced subgraph on `keep` (in the given order). Nonprobes are kept.
    pub fn induced(&self, keep: &[usize]) -> Graph {
        let mut g = Graph::empty();
        for &v in keep {
            g.intern(&self.names[v]).expect("names already valid");
        }
        for (a, &u) in keep.iter().enumerate() {
            for (b, &v) in keep.iter().enumerate() {
                g.adj[a][b] = self.adj[u][v];
            }
        }
        if let Some(np) = &self.nonprobes {
            g.nonprobes = Some(keep.iter().map(|&v| np[v]).collect());
        }
        g
    }

    /// Same vertex set with extra edges added (existing edges are ignored).
    pub fn with_extra_edges(&self, extra: &[(usize, usize)]) -> Graph {
        let mut g = self.clone();
        for &(u, v) in extra {
            if u != v {
                g.adj[u][v] = true;
                g.adj[v][u] = true;
            }
        }
        g
    }

    /// Checks the nonprobe set is still independent after edits.
    pub fn validate(&self) -> Result<()> {
        if let Some(np) = self.nonprobes() {
            self.without_nonprobes().with_nonprobes(&np)?;
        }
        Ok(())
    }

    /// Adjacency rows as bitmasks, for the exact searches.
    pub fn adjacency_masks(&self) -> Result<Vec<u64>> {
        if self.n() > MAX_SEARCH_VERTICES {
            return Err(Error::TooLarge { size: self.n(), limit: MAX_SEARCH_VERTICES });
        }
        Ok(self
            .adj
            .iter()
            .map(|row| row.iter().enumerate().filter(|(_, &b)| b).fold(0u64, |m, (j, _)| m | 1 << j))
            .collect())
    }

    pub fn nonprobe_mask(&self) -> u64 {
        (0..self.n().min(64)).filter(|&v| self.is_nonprobe(v)).fold(0, |m, v| m | 1 << v)
    }

    pub fn line_ids(&self) -> Vec<LineId> {
        self.names.iter().map(|s| LineId::Vertex(s.clone())).collect()
    }
}

/// Adjacency matrix with every diagonal entry set to `1`.
pub fn augmented_adjacency(g: &Graph) -> LabeledMatrix {
    let n = g.n();
    let ids = g.line_ids();
    let mut m = LabeledMatrix::filled(ids.clone(), ids, Entry::Zero);
    for i in 0..n {
        for j in 0..n {
            if i == j || g.has_edge(i, j) {
                m.set(i, j, Entry::One);
            }
        }
    }
    m
}

/// Biadjacency matrix of the bigraph with probes as rows and all vertices
/// as columns: the probe rows of the augmented adjacency matrix.
pub fn probe_bigraph(g: &Graph) -> Result<LabeledMatrix> {
    g.require_nonprobes()?;
    let probes = g.probes();
    let all: Vec<usize> = (0..g.n()).collect();
    Ok(augmented_adjacency(g).submatrix(&probes, &all))
}

/// The `n x n` symmetric bigraph matrix. With `augment_probes_only` the
/// diagonal is `1` exactly at probes (loops only at probe vertices).
pub fn symmetric_bigraph_b1(g: &Graph, augment_probes_only: bool) -> Result<LabeledMatrix> {
    let mut m = augmented_adjacency(g);
    if augment_probes_only {
        for v in g.require_nonprobes()? {
            m.set(v, v, Entry::Zero);
        }
    }
    Ok(m)
}

#[cfg(test)]
mod tests {
    use super::*;

    pub(crate) fn example_graph(nonprobes: &[&str]) -> Graph {
        let edges = [("a", "b"), ("b", "c"), ("b", "d"), ("c", "d"), ("c", "e"), ("d", "f")];
        Graph::build(&["a", "b", "c", "d", "e", "f"], &edges, Some(nonprobes)).unwrap()
    }

    #[test]
    fn builds_example_with_independent_nonprobes() {
        let g = example_graph(&["e", "f"]);
        assert_eq!(g.n(), 6);
        assert_eq!(g.nonprobes(), Some(vec![4, 5]));
        assert_eq!(g.probes(), vec![0, 1, 2, 3]);
    }

    #[test]
    fn single_vertex_graph() {
        let g = Graph::build(&["a"], &[], None::<&[&str]>).unwrap();
        assert_eq!(g.n(), 1);
        assert!(g.edges().is_empty());
        assert_eq!(augmented_adjacency(&g), LabeledMatrix::filled(g.line_ids(), g.line_ids(), Entry::One));
    }

    #[test]
    fn rejects_dependent_nonprobes_and_loops() {
        let err = build_graph(&[("a", "b")], Some(&["a", "b"][..])).unwrap_err();
        assert_eq!(err, Error::NonprobesNotIndependent("a".into(), "b".into()));
        assert_eq!(build_graph(&[("a", "a")], None).unwrap_err(), Error::SelfLoop("a".into()));
        assert!(build_graph(&[("a", "b"), ("b", "a")], None).is_err());
    }

    #[test]
    fn index_by_first_appearance() {
        let g = build_graph(&[("q", "p"), ("p", "z")], None).unwrap();
        assert_eq!(g.names(), &["q", "p", "z"]);
    }

    #[test]
    fn c4_augmented_adjacency() {
        let g = build_graph(&[("a", "b"), ("b", "c"), ("c", "d"), ("d", "a")], None).unwrap();
        let m = augmented_adjacency(&g);
        assert_eq!(m.get(0, 2), Entry::Zero);
        assert_eq!(m.get(1, 3), Entry::Zero);
        let ones = m.entries().filter(|(_, _, e)| *e == Entry::One).count();
        assert_eq!(ones, 4 + 8);
        assert!(m.is_symmetric());
    }

    #[test]
    fn example_augmented_matches_edge_set() {
        let g = example_graph(&["e", "f"]);
        let m = augmented_adjacency(&g);
        let expect = ["110000", "111100", "011110", "011101", "001010", "000101"];
        assert_eq!(m, LabeledMatrix::from_rows(&expect).unwrap().with_ids(g.line_ids(), g.line_ids()).unwrap());
    }

    #[test]
    fn probe_bigraph_rows_are_probes() {
        let g = example_graph(&["e", "f"]);
        let b = probe_bigraph(&g).unwrap();
        assert_eq!((b.nrows(), b.ncols()), (4, 6));
        // One-pattern of the printed R-C matrix of the example.
        let printed = ["11RRRR", "1111RR", "C1111R", "C111C1"];
        for (i, row) in printed.iter().enumerate() {
            for (j, ch) in row.chars().enumerate() {
                assert_eq!(b.get(i, j) == Entry::One, ch == '1', "({i},{j})");
            }
        }
        let g = g.with_nonprobes(&[]).unwrap();
        assert_eq!(probe_bigraph(&g).unwrap(), augmented_adjacency(&g));
        let lone = Graph::build(&["a", "b"], &[], Some(&["a", "b"][..])).unwrap();
        assert_eq!(probe_bigraph(&lone).unwrap().nrows(), 0);
        assert_eq!(probe_bigraph(&g.without_nonprobes()).unwrap_err(), Error::MissingNonprobes);
    }

    #[test]
    fn b1_with_probe_loops_only() {
        let g = example_graph(&["e", "f"]);
        let m = symmetric_bigraph_b1(&g, true).unwrap();
        let diag: Vec<Entry> = (0..6).map(|i| m.get(i, i)).collect();
        use Entry::*;
        assert_eq!(diag, vec![One, One, One, One, Zero, Zero]);
        assert_eq!(symmetric_bigraph_b1(&g, false).unwrap(), augmented_adjacency(&g));
        let e = Graph::build(&["a", "b", "c"], &[], Some(&["a", "b", "c"][..])).unwrap();
        assert!(symmetric_bigraph_b1(&e, true).unwrap().all_in(&[Zero]));
    }
}
