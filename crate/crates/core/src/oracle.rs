//! Brute-force ground truth at desk scale. Nothing here calls into the
//! recognizers; every check works directly from the definitions.

use std::sync::OnceLock;

use itertools::Itertools;

use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::matrix::{Entry, LabeledMatrix};

pub const MAX_ENUMERATE: usize = 7;
pub const MAX_INTERVAL_ORACLE: usize = 8;
pub const MAX_PROBE_ORACLE: usize = 6;
pub const MAX_ENDPOINT_ORACLE: usize = 5;

fn too_large(size: usize, limit: usize) -> Result<()> {
    if size > limit {
        Err(Error::TooLarge { size, limit })
    } else {
        Ok(())
    }
}

/// Vertex pairs `(i, j)`, `i < j`, in lexicographic order. Bit `k` of a graph
/// code is the `k`-th pair.
pub fn vertex_pairs(n: usize) -> Vec<(usize, usize)> {
    (0..n).tuple_combinations().collect()
}

/// The graph on vertices `0..n` with edge code `code`.
pub fn graph_from_code(n: usize, code: u64) -> Graph {
    let edges: Vec<(usize, usize)> =
        vertex_pairs(n).into_iter().enumerate().filter(|(k, _)| code >> k & 1 == 1).map(|(_, e)| e).collect();
    Graph::from_index_edges(n, &edges).expect("generated edges are simple")
}

/// All labeled graphs on `n` vertices, by increasing edge code.
pub fn enumerate_graphs(n: usize) -> Result<impl Iterator<Item = Graph>> {
    too_large(n, MAX_ENUMERATE)?;
    let count = 1u64 << vertex_pairs(n).len();
    Ok((0..count).map(move |code| graph_from_code(n, code)))
}

fn adjacency(g: &Graph) -> Vec<Vec<bool>> {
    (0..g.n()).map(|u| (0..g.n()).map(|v| u != v && g.has_edge(u, v)).collect()).collect()
}

/// Some order of `verts` in which every vertex's later neighbors come right
/// after it.
fn some_order_is_quasi_linear(adj: &[Vec<bool>], verts: &[usize]) -> bool {
    let k = verts.len();
    verts.iter().copied().permutations(k).any(|o| {
        (0..k).all(|i| {
            let mut gap = false;
            for &w in &o[i + 1..] {
                if adj[o[i]][w] {
                    if gap {
                        return false;
                    }
                } else {
                    gap = true;
                }
            }
            true
        })
    })
}

/// Tries all `n!` symmetric orders of the augmented adjacency matrix.
pub fn interval_oracle(g: &Graph) -> Result<bool> {
    too_large(g.n(), MAX_INTERVAL_ORACLE)?;
    let verts: Vec<usize> = (0..g.n()).collect();
    Ok(some_order_is_quasi_linear(&adjacency(g), &verts))
}

/// Tries every assignment of intervals with integer endpoints in `[1, 2n]`.
pub fn interval_oracle_by_endpoints(g: &Graph) -> Result<bool> {
    too_large(g.n(), MAX_ENDPOINT_ORACLE)?;
    let n = g.n();
    let adj = adjacency(g);
    let choices: Vec<(i64, i64)> = (1..=2 * n as i64).flat_map(|l| (l..=2 * n as i64).map(move |r| (l, r))).collect();
    fn place(v: usize, adj: &[Vec<bool>], choices: &[(i64, i64)], chosen: &mut Vec<(i64, i64)>) -> bool {
        if v == adj.len() {
            return true;
        }
        for &(l, r) in choices {
            let fits = chosen.iter().enumerate().all(|(u, &(a, b))| adj[u][v] == (a <= r && l <= b));
            if fits {
                chosen.push((l, r));
                if place(v + 1, adj, choices, chosen) {
                    return true;
                }
                chosen.pop();
            }
        }
        false
    }
    Ok(place(0, &adj, &choices, &mut Vec::with_capacity(n)))
}

fn code_of(adj: &[Vec<bool>]) -> u64 {
    vertex_pairs(adj.len()).iter().enumerate().filter(|(_, &(u, v))| adj[u][v]).fold(0, |m, (k, _)| m | 1 << k)
}

/// `interval_oracle` verdicts for every graph on `n` vertices, indexed by
/// edge code.
fn interval_table(n: usize) -> &'static [bool] {
    static TABLES: [OnceLock<Vec<bool>>; MAX_PROBE_ORACLE + 1] = [const { OnceLock::new() }; MAX_PROBE_ORACLE + 1];
    TABLES[n].get_or_init(|| {
        let count = 1u64 << vertex_pairs(n).len();
        let verts: Vec<usize> = (0..n).collect();
        (0..count).map(|code| some_order_is_quasi_linear(&adjacency(&graph_from_code(n, code)), &verts)).collect()
    })
}

fn nonprobe_pairs(g: &Graph) -> Result<Vec<(usize, usize)>> {
    let np = g.require_nonprobes()?;
    Ok(np.iter().copied().tuple_combinations().collect())
}

/// Some set of nonprobe pairs, added as edges, gives an interval graph.
pub fn probe_oracle(g: &Graph) -> Result<bool> {
    too_large(g.n(), MAX_PROBE_ORACLE)?;
    let pairs = nonprobe_pairs(g)?;
    let table = interval_table(g.n());
    let base = code_of(&adjacency(g));
    let pair_bits: Vec<u64> = pairs
        .iter()
        .map(|&(u, v)| {
            let k = vertex_pairs(g.n()).iter().position(|&p| p == (u, v)).expect("pair exists");
            1u64 << k
        })
        .collect();
    Ok((0u64..1 << pairs.len()).any(|f| {
        let fill = pair_bits.iter().enumerate().filter(|(k, _)| f >> k & 1 == 1).fold(0, |m, (_, &b)| m | b);
        table[(base | fill) as usize]
    }))
}

/// Same as [`probe_oracle`] without the lookup table.
pub fn probe_oracle_plain(g: &Graph) -> Result<bool> {
    too_large(g.n(), MAX_PROBE_ORACLE)?;
    let pairs = nonprobe_pairs(g)?;
    let verts: Vec<usize> = (0..g.n()).collect();
    let base = adjacency(g);
    Ok((0u64..1 << pairs.len()).any(|f| {
        let mut adj = base.clone();
        for (k, &(u, v)) in pairs.iter().enumerate() {
            if f >> k & 1 == 1 {
                adj[u][v] = true;
                adj[v][u] = true;
            }
        }
        some_order_is_quasi_linear(&adj, &verts)
    }))
}

/// In these orders, some labeling of the zeros has every `R` followed only by
/// `R`s in its row and every `C` only by `C`s in its column.
///
/// Rows are taken top-down. Columns that already hold a `C` force `C` in
/// every later row; the rest of the row takes the longest `R` suffix that
/// avoids `1`s and those columns, and the zeros in front of it become `C`.
/// Longer suffixes never hurt later rows, so this choice is safe.
fn labelable_in_order(ones: &[Vec<bool>], rows: &[usize], cols: &[usize]) -> bool {
    let mut c_cols = vec![false; cols.len()];
    for &i in rows {
        let blocked = (0..cols.len()).filter(|&p| ones[i][cols[p]] || c_cols[p]).max();
        let start = blocked.map_or(0, |p| p + 1);
        for p in 0..cols.len() {
            if c_cols[p] && ones[i][cols[p]] {
                return false;
            }
            if p < start && !ones[i][cols[p]] {
                c_cols[p] = true;
            }
        }
    }
    true
}

/// Tries all row orders and all column orders.
pub fn bigraph_oracle(m01: &LabeledMatrix) -> Result<bool> {
    m01.require_binary()?;
    let (nr, nc) = (m01.nrows(), m01.ncols());
    too_large(nr.min(nc), 4)?;
    too_large(nr.max(nc), 5)?;
    let ones: Vec<Vec<bool>> = (0..nr).map(|i| (0..nc).map(|j| m01.get(i, j) == Entry::One).collect()).collect();
    let col_orders: Vec<Vec<usize>> = (0..nc).permutations(nc).collect();
    Ok((0..nr).permutations(nr).any(|rows| col_orders.iter().any(|cols| labelable_in_order(&ones, &rows, cols))))
}

/// Some independent set (possibly empty) whose removal leaves an interval
/// graph.
pub fn interval_split_check(g: &Graph) -> Result<bool> {
    let n = g.n();
    too_large(n, MAX_INTERVAL_ORACLE)?;
    let adj = adjacency(g);
    Ok((0u32..1 << n).any(|removed| {
        let out: Vec<usize> = (0..n).filter(|&v| removed >> v & 1 == 1).collect();
        let independent = out.iter().tuple_combinations().all(|(&u, &v)| !adj[u][v]);
        if !independent {
            return false;
        }
        let keep: Vec<usize> = (0..n).filter(|&v| removed >> v & 1 == 0).collect();
        some_order_is_quasi_linear(&adj, &keep)
    }))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::build_graph;

    fn k222() -> Graph {
        let parts = [0, 0, 1, 1, 2, 2];
        let edges: Vec<(usize, usize)> = (0..6).tuple_combinations().filter(|&(u, v)| parts[u] != parts[v]).collect();
        Graph::from_index_edges(6, &edges).unwrap()
    }

    #[test]
    fn enumeration_counts() {
        assert_eq!(enumerate_graphs(1).unwrap().count(), 1);
        assert_eq!(enumerate_graphs(3).unwrap().count(), 8);
        assert_eq!(enumerate_graphs(4).unwrap().count(), 64);
        assert!(enumerate_graphs(8).is_err());
    }

    #[test]
    fn interval_oracle_examples() {
        let c4 = build_graph(&[("a", "b"), ("b", "c"), ("c", "d"), ("d", "a")], None).unwrap();
        let p4 = build_graph(&[("a", "b"), ("b", "c"), ("c", "d")], None).unwrap();
        let k4 = Graph::from_index_edges(4, &vertex_pairs(4)).unwrap();
        assert!(!interval_oracle(&c4).unwrap());
        assert!(interval_oracle(&p4).unwrap());
        assert!(interval_oracle(&k4).unwrap());
        assert!(!interval_oracle_by_endpoints(&c4).unwrap());
        assert!(interval_oracle_by_endpoints(&p4).unwrap());
    }

    #[test]
    fn probe_oracle_examples() {
        let c4 = build_graph(&[("a", "b"), ("b", "c"), ("c", "d"), ("d", "a")], Some(&["b", "d"][..])).unwrap();
        assert!(probe_oracle(&c4).unwrap());
        assert!(probe_oracle_plain(&c4).unwrap());
        let edges = [("a", "b"), ("b", "c"), ("b", "d"), ("c", "d"), ("c", "e"), ("d", "f")];
        let ex = Graph::build(&["a", "b", "c", "d", "e", "f"], &edges, Some(&["e", "f"][..])).unwrap();
        assert!(!probe_oracle(&ex).unwrap());
        assert!(!probe_oracle_plain(&ex).unwrap());
        let ex2 = Graph::build(&["a", "b", "c", "d", "e", "f"], &edges, Some(&["b", "e", "f"][..])).unwrap();
        assert!(probe_oracle(&ex2).unwrap());
    }

    #[test]
    fn bigraph_oracle_examples() {
        let a = LabeledMatrix::from_rows(&["11100", "10010", "00010"]).unwrap();
        assert!(bigraph_oracle(&a).unwrap());
        assert!(bigraph_oracle(&LabeledMatrix::from_rows(&["10", "01"]).unwrap()).unwrap());
        assert!(!bigraph_oracle(&LabeledMatrix::from_rows(&["011", "101", "110"]).unwrap()).unwrap());
    }

    #[test]
    fn labelable_matches_definition_on_tiny_cases() {
        let ones = |rows: &[&str]| rows.iter().map(|r| r.chars().map(|c| c == '1').collect()).collect::<Vec<Vec<bool>>>();
        // a zero between a 1 on its right and a 1 below cannot be labeled
        assert!(!labelable_in_order(&ones(&["01", "10"]), &[0, 1], &[0, 1]));
        assert!(labelable_in_order(&ones(&["10", "01"]), &[0, 1], &[0, 1]));
    }

    #[test]
    fn split_check_examples() {
        assert!(!interval_split_check(&k222()).unwrap());
        let c5: Vec<(usize, usize)> = (0..5).map(|i| (i, (i + 1) % 5)).map(|(u, v)| (u.min(v), u.max(v))).collect();
        assert!(interval_split_check(&Graph::from_index_edges(5, &c5).unwrap()).unwrap());
        let p3 = build_graph(&[("a", "b"), ("b", "c")], None).unwrap();
        assert!(interval_split_check(&p3).unwrap());
    }
}
