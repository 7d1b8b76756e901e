//! Ferrers bigraphs, couple graphs and Ferrers-dimension certificates.

use std::collections::VecDeque;

use serde::{Deserialize, Serialize};

use crate::certificate::{Certificate, CertificateKind, Evidence, IntervalAssignment, Verdict, Witness, ZeroPos};
use crate::error::{Error, Result};
use crate::graph::{augmented_adjacency, symmetric_bigraph_b1, Graph};
use crate::interval::{is_interval_graph, lookup_all};
use crate::matrix::{Entry, LabeledMatrix, LineId};
use crate::probe::verify_probe_rep;

/// Ferrers bigraphs whose entrywise AND is `target`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FerrersFactorization {
    pub factors: Vec<LabeledMatrix>,
    pub target: LabeledMatrix,
    /// Per factor, the rows in an order of nondecreasing neighborhoods.
    pub chains: Vec<Vec<LineId>>,
}

impl FerrersFactorization {
    fn new(factors: Vec<LabeledMatrix>, target: LabeledMatrix) -> Result<Self> {
        let chains = factors.iter().map(chain_order).collect::<Result<Vec<_>>>()?;
        Ok(FerrersFactorization { factors, target, chains })
    }

    /// Every factor is Ferrers and their intersection equals the target.
    pub fn verify(&self) -> Result<bool> {
        for f in &self.factors {
            if !is_ferrers(f)? || f.rows() != self.target.rows() || f.cols() != self.target.cols() {
                return Ok(false);
            }
        }
        Ok(self.target.entries().all(|(i, j, e)| {
            let all_one = self.factors.iter().all(|f| f.get(i, j) == Entry::One);
            all_one == (e == Entry::One)
        }))
    }

    /// `true` iff every position is `1` in at least one of the first `k`
    /// factors.
    pub fn union_is_complete(&self, k: usize) -> bool {
        self.target
            .entries()
            .all(|(i, j, _)| self.factors.iter().take(k).any(|f| f.get(i, j) == Entry::One))
    }
}

fn row_sets(m: &LabeledMatrix) -> Vec<Vec<bool>> {
    (0..m.nrows()).map(|i| m.row(i).iter().map(|&e| e == Entry::One).collect()).collect()
}

fn subset(a: &[bool], b: &[bool]) -> bool {
    a.iter().zip(b).all(|(&x, &y)| !x || y)
}

fn chain_order(m: &LabeledMatrix) -> Result<Vec<LineId>> {
    let sets = row_sets(m);
    let mut idx: Vec<usize> = (0..m.nrows()).collect();
    idx.sort_by_key(|&i| (sets[i].iter().filter(|&&b| b).count(), i));
    if idx.windows(2).any(|w| !subset(&sets[w[0]], &sets[w[1]])) {
        return Err(Error::Precondition("factor is not Ferrers".into()));
    }
    Ok(idx.into_iter().map(|i| m.rows()[i].clone()).collect())
}

/// Neighborhood-chain definition.
fn ferrers_by_chain(m: &LabeledMatrix) -> bool {
    let sets = row_sets(m);
    let mut idx: Vec<usize> = (0..m.nrows()).collect();
    idx.sort_by_key(|&i| sets[i].iter().filter(|&&b| b).count());
    idx.windows(2).all(|w| subset(&sets[w[0]], &sets[w[1]]))
}

/// No 2x2 permutation submatrix.
fn ferrers_by_couples(m: &LabeledMatrix) -> bool {
    let (nr, nc) = (m.nrows(), m.ncols());
    let one = |i, j| m.get(i, j) == Entry::One;
    for i in 0..nr {
        for k in i + 1..nr {
            for j in 0..nc {
                for l in 0..nc {
                    if j != l && one(i, j) && !one(i, l) && !one(k, j) && one(k, l) {
                        return false;
                    }
                }
            }
        }
    }
    true
}

/// Ferrers test. Both classical definitions are evaluated and must agree.
pub fn is_ferrers(m01: &LabeledMatrix) -> Result<bool> {
    m01.require_binary()?;
    let by_chain = ferrers_by_chain(m01);
    let by_couples = ferrers_by_couples(m01);
    assert_eq!(by_chain, by_couples, "Ferrers definitions disagree on\n{m01}");
    Ok(by_chain)
}

/// Graph on the zero positions of a matrix; two zeros are adjacent when they
/// form a couple (a 2x2 permutation submatrix with two ones).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CoupleGraph {
    /// Zero positions, row-major.
    pub positions: Vec<(usize, usize)>,
    pub adj: Vec<Vec<usize>>,
}

impl CoupleGraph {
    pub fn edge_count(&self) -> usize {
        self.adj.iter().map(Vec::len).sum::<usize>() / 2
    }

    pub fn is_isolated(&self, v: usize) -> bool {
        self.adj[v].is_empty()
    }

    /// Proper 2-coloring (`false` on the first vertex of each component), or
    /// an odd cycle as a vertex list.
    pub fn two_coloring(&self) -> std::result::Result<Vec<bool>, Vec<usize>> {
        let n = self.positions.len();
        let mut color: Vec<Option<bool>> = vec![None; n];
        let mut parent = vec![usize::MAX; n];
        let mut depth = vec![0usize; n];
        for s in 0..n {
            if color[s].is_some() {
                continue;
            }
            color[s] = Some(false);
            let mut queue = VecDeque::from([s]);
            while let Some(u) = queue.pop_front() {
                let cu = color[u].expect("queued vertices are colored");
                for &v in &self.adj[u] {
                    match color[v] {
                        None => {
                            color[v] = Some(!cu);
                            parent[v] = u;
                            depth[v] = depth[u] + 1;
                            queue.push_back(v);
                        }
                        Some(cv) if cv == cu => return Err(odd_cycle(u, v, &parent, &depth)),
                        Some(_) => {}
                    }
                }
            }
        }
        Ok(color.into_iter().map(|c| c.expect("all colored")).collect())
    }

    /// Connected components, each a sorted vertex list, ordered by their
    /// first vertex.
    pub fn components(&self) -> Vec<Vec<usize>> {
        let n = self.positions.len();
        let mut comp = vec![usize::MAX; n];
        let mut out: Vec<Vec<usize>> = Vec::new();
        for s in 0..n {
            if comp[s] != usize::MAX {
                continue;
            }
            let id = out.len();
            comp[s] = id;
            let mut members = vec![s];
            let mut stack = vec![s];
            while let Some(u) = stack.pop() {
                for &v in &self.adj[u] {
                    if comp[v] == usize::MAX {
                        comp[v] = id;
                        members.push(v);
                        stack.push(v);
                    }
                }
            }
            members.sort_unstable();
            out.push(members);
        }
        out
    }
}

fn odd_cycle(u: usize, v: usize, parent: &[usize], depth: &[usize]) -> Vec<usize> {
    let (mut a, mut b) = (u, v);
    let mut left = vec![a];
    let mut right = vec![b];
    while depth[a] > depth[b] {
        a = parent[a];
        left.push(a);
    }
    while depth[b] > depth[a] {
        b = parent[b];
        right.push(b);
    }
    while a != b {
        a = parent[a];
        b = parent[b];
        left.push(a);
        right.push(b);
    }
    right.pop();
    left.extend(right.into_iter().rev());
    left
}

pub fn couple_graph(m01: &LabeledMatrix) -> Result<CoupleGraph> {
    m01.require_binary()?;
    Ok(couple_graph_where(m01, |_, _| true))
}

/// Couple graph restricted to the zeros accepted by `keep`.
pub(crate) fn couple_graph_where(m: &LabeledMatrix, keep: impl Fn(usize, usize) -> bool) -> CoupleGraph {
    let one = |i, j| m.get(i, j) == Entry::One;
    let positions: Vec<(usize, usize)> =
        m.entries().filter(|&(i, j, e)| e != Entry::One && keep(i, j)).map(|(i, j, _)| (i, j)).collect();
    let mut adj = vec![Vec::new(); positions.len()];
    for a in 0..positions.len() {
        let (i, j) = positions[a];
        for b in a + 1..positions.len() {
            let (k, l) = positions[b];
            if i != k && j != l && one(i, l) && one(k, j) {
                adj[a].push(b);
                adj[b].push(a);
            }
        }
    }
    CoupleGraph { positions, adj }
}

pub(crate) fn cycle_witness(m: &LabeledMatrix, cg: &CoupleGraph, cycle: &[usize]) -> Witness {
    Witness::OddCycle {
        positions: cycle
            .iter()
            .map(|&v| {
                let (i, j) = cg.positions[v];
                ZeroPos { row: m.rows()[i].clone(), col: m.cols()[j].clone() }
            })
            .collect(),
    }
}

/// Ferrers dimension at most 2 iff the couple graph is bipartite. A yes
/// certificate carries the two factors.
pub fn ferrers_dim_le_2(m01: &LabeledMatrix) -> Result<Certificate> {
    let cg = couple_graph(m01)?;
    match cg.two_coloring() {
        Ok(coloring) => {
            let factors = decompose_two_ferrers(m01, &coloring)?;
            Ok(Certificate::yes(CertificateKind::FerrersDim, Evidence { factors: Some(factors), ..Default::default() }))
        }
        Err(cycle) => Ok(Certificate::no(CertificateKind::FerrersDim, cycle_witness(m01, &cg, &cycle))),
    }
}

/// Splits a matrix with a properly 2-colored couple graph into two Ferrers
/// factors.
///
/// Zeros colored `false` are the zeros of the first factor, zeros colored
/// `true` those of the second; isolated zeros go to both. Components are
/// flipped as needed, searching flip vectors in lexicographic order over
/// components (ordered by first zero) and keeping the first that makes both
/// factors Ferrers.
pub fn decompose_two_ferrers(m01: &LabeledMatrix, coloring: &[bool]) -> Result<FerrersFactorization> {
    let cg = couple_graph(m01)?;
    if coloring.len() != cg.positions.len() {
        return Err(Error::Precondition("coloring does not match the zero positions".into()));
    }
    for (u, nbrs) in cg.adj.iter().enumerate() {
        if nbrs.iter().any(|&v| coloring[v] == coloring[u]) {
            return Err(Error::Precondition("coloring is not proper".into()));
        }
    }
    let (nr, nc) = (m01.nrows(), m01.ncols());
    if nr > 64 || nc > 64 {
        return Err(Error::TooLarge { size: nr.max(nc), limit: 64 });
    }
    let ones: Vec<u64> = (0..nr).map(|i| m01.row_mask(i, Entry::One)).collect();
    let components: Vec<Vec<usize>> = cg.components().into_iter().filter(|c| c.len() > 1).collect();
    let mut state = FlipState { zero: [vec![0; nr], vec![0; nr]], one: [ones.clone(), ones] };
    for (v, &(i, j)) in cg.positions.iter().enumerate() {
        if cg.is_isolated(v) {
            state.zero[0][i] |= 1 << j;
            state.zero[1][i] |= 1 << j;
        }
    }
    let flips = flip_search(&cg, coloring, &components, 0, &mut state)
        .ok_or_else(|| Error::Internal("no component flips give two Ferrers factors".into()))?;
    let mut f1 = m01.clone();
    let mut f2 = m01.clone();
    for (i, j, _) in m01.entries() {
        let bit = 1u64 << j;
        f1.set(i, j, if state_one(&flips, 0, i, bit) { Entry::One } else { Entry::Zero });
        f2.set(i, j, if state_one(&flips, 1, i, bit) { Entry::One } else { Entry::Zero });
    }
    let fact = FerrersFactorization::new(vec![f1, f2], m01.clone())?;
    if !fact.verify()? {
        return Err(Error::Internal("two-factor decomposition failed verification".into()));
    }
    Ok(fact)
}

#[derive(Clone)]
struct FlipState {
    zero: [Vec<u64>; 2],
    one: [Vec<u64>; 2],
}

fn state_one(s: &FlipState, f: usize, i: usize, bit: u64) -> bool {
    s.one[f][i] & bit != 0
}

fn ferrers_possible(zero: &[u64], one: &[u64]) -> bool {
    let n = zero.len();
    (0..n).all(|i| (i + 1..n).all(|k| zero[i] & one[k] == 0 || zero[k] & one[i] == 0))
}

fn flip_search(
    cg: &CoupleGraph,
    coloring: &[bool],
    components: &[Vec<usize>],
    next: usize,
    state: &mut FlipState,
) -> Option<FlipState> {
    if next == components.len() {
        return Some(state.clone());
    }
    for flip in [false, true] {
        let saved = state.clone();
        for &v in &components[next] {
            let (i, j) = cg.positions[v];
            // color false -> zero of the first factor, one of the second
            let f = usize::from(coloring[v] ^ flip);
            state.zero[f][i] |= 1 << j;
            state.one[1 - f][i] |= 1 << j;
        }
        if ferrers_possible(&state.zero[0], &state.one[0]) && ferrers_possible(&state.zero[1], &state.one[1]) {
            if let Some(found) = flip_search(cg, coloring, components, next + 1, state) {
                return Some(found);
            }
        }
        *state = saved;
    }
    None
}

/// Ferrers dimension of the augmented adjacency matrix is at most 2 exactly
/// for interval graphs. The certificate's `cross_check` holds the verdict of
/// the quasi-linear recognizer.
pub fn interval_iff_dim2(g: &Graph) -> Result<Certificate> {
    let mut cert = ferrers_dim_le_2(&augmented_adjacency(g))?;
    cert.evidence.cross_check = Some(is_interval_graph(g)?.verdict);
    Ok(cert)
}

/// Three Ferrers factors of the loops-at-probes matrix of a probe interval
/// graph: two from the interval completion of `probe_rep` and the block
/// factor that is `0` exactly on nonprobe x nonprobe.
pub fn probe_dim3_decomposition(g: &Graph, probe_rep: &IntervalAssignment) -> Result<FerrersFactorization> {
    if !verify_probe_rep(g, probe_rep)? {
        return Err(Error::Precondition("probe representation fails verification".into()));
    }
    let nonprobes = g.require_nonprobes()?;
    let ivs = lookup_all(g, probe_rep)?;
    let mut fill = Vec::new();
    for (a, &u) in nonprobes.iter().enumerate() {
        for &v in &nonprobes[a + 1..] {
            if ivs[u].intersects(ivs[v]) {
                fill.push((u, v));
            }
        }
    }
    let completed = g.without_nonprobes().with_extra_edges(&fill);
    let cert = ferrers_dim_le_2(&augmented_adjacency(&completed))?;
    if !cert.is_yes() {
        return Err(Error::Internal("interval completion has Ferrers dimension above 2".into()));
    }
    let two = cert.evidence.factors.expect("yes certificate has factors");
    let ids = g.line_ids();
    let mut f3 = LabeledMatrix::filled(ids.clone(), ids, Entry::One);
    for &u in &nonprobes {
        for &v in &nonprobes {
            f3.set(u, v, Entry::Zero);
        }
    }
    let target = symmetric_bigraph_b1(g, true)?;
    let mut factors = two.factors;
    factors.push(f3);
    let fact = FerrersFactorization::new(factors, target)?;
    if !fact.verify()? {
        return Err(Error::Internal("three-factor decomposition failed verification".into()));
    }
    Ok(fact)
}

/// Convenience: verdict of the dim-2 test on the augmented adjacency matrix.
pub fn augmented_dim2_verdict(g: &Graph) -> Result<Verdict> {
    let cg = couple_graph(&augmented_adjacency(g))?;
    Ok(Verdict::from_bool(cg.two_coloring().is_ok()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::build_graph;

    fn m(rows: &[&str]) -> LabeledMatrix {
        LabeledMatrix::from_rows(rows).unwrap()
    }

    #[test]
    fn ferrers_basics() {
        assert!(is_ferrers(&m(&["111", "111"])).unwrap());
        assert!(!is_ferrers(&m(&["10", "01"])).unwrap());
        assert!(is_ferrers(&m(&["100", "110", "111"])).unwrap());
    }

    #[test]
    fn couple_graph_small_cases() {
        let cg = couple_graph(&m(&["10", "01"])).unwrap();
        assert_eq!(cg.positions, vec![(0, 1), (1, 0)]);
        assert_eq!(cg.edge_count(), 1);
        assert_eq!(couple_graph(&m(&["11", "11"])).unwrap().positions.len(), 0);
    }

    #[test]
    fn identity_dim2_factors_are_forced() {
        let id = m(&["10", "01"]);
        let cert = ferrers_dim_le_2(&id).unwrap();
        assert!(cert.is_yes());
        let f = cert.evidence.factors.unwrap();
        assert_eq!(f.factors[0], m(&["10", "11"]));
        assert_eq!(f.factors[1], m(&["11", "01"]));
        let ones = m(&["11", "11"]);
        let f = ferrers_dim_le_2(&ones).unwrap().evidence.factors.unwrap();
        assert_eq!(f.factors, vec![ones.clone(), ones]);
    }

    #[test]
    fn c4_dim2_fails_with_odd_cycle() {
        let g = build_graph(&[("a", "b"), ("b", "c"), ("c", "d"), ("d", "a")], None).unwrap();
        let a = augmented_adjacency(&g);
        let cert = ferrers_dim_le_2(&a).unwrap();
        assert!(!cert.is_yes());
        let Some(Witness::OddCycle { positions }) = cert.witness else { panic!("expected odd cycle") };
        assert_eq!(positions.len() % 2, 1);
        let pos = |z: &ZeroPos| (a.row_position(&z.row).unwrap(), a.col_position(&z.col).unwrap());
        for k in 0..positions.len() {
            let (i, j) = pos(&positions[k]);
            let (p, q) = pos(&positions[(k + 1) % positions.len()]);
            assert_eq!(a.get(i, j), Entry::Zero);
            assert!(i != p && j != q && a.get(i, q) == Entry::One && a.get(p, j) == Entry::One);
        }
    }

    #[test]
    fn path_p4_factors_cover_everything() {
        let g = build_graph(&[("a", "b"), ("b", "c"), ("c", "d")], None).unwrap();
        let cert = interval_iff_dim2(&g).unwrap();
        assert!(cert.is_yes());
        assert_eq!(cert.evidence.cross_check, Some(Verdict::Yes));
        let f = cert.evidence.factors.unwrap();
        assert!(f.verify().unwrap());
        assert!(f.union_is_complete(2));
    }

    #[test]
    fn k1_is_dim2() {
        let g = Graph::build(&["a"], &[], None).unwrap();
        assert!(interval_iff_dim2(&g).unwrap().is_yes());
    }

    #[test]
    fn improper_coloring_is_rejected() {
        assert!(decompose_two_ferrers(&m(&["10", "01"]), &[false, false]).is_err());
    }
}
