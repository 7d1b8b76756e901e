//! Interval-graph recognition through the quasi-linear ones property of the
//! augmented adjacency matrix.
//!
//! A symmetric order of the augmented matrix is quasi-linear when, in every
//! row, the ones right of the diagonal form one block starting at the
//! diagonal (and, by symmetry, likewise below the diagonal in every column).
//! Such an order exists exactly for interval graphs.

use crate::certificate::{Certificate, CertificateKind, Evidence, Interval, IntervalAssignment, Witness};
use crate::error::{Error, Result};
use crate::graph::{augmented_adjacency, Graph, MAX_SEARCH_VERTICES};
use crate::matrix::{check_permutation, Entry, LabeledMatrix};

/// Validates a square symmetric matrix with unit diagonal and returns its
/// `One` pattern as bitmasks (diagonal excluded).
pub(crate) fn symmetric_masks(m: &LabeledMatrix) -> Result<Vec<u64>> {
    if !m.is_square() {
        return Err(Error::NotSquare(m.nrows(), m.ncols()));
    }
    if let Some((i, j)) = m.first_asymmetry() {
        return Err(Error::NotSymmetric(i, j));
    }
    let n = m.nrows();
    if n > MAX_SEARCH_VERTICES {
        return Err(Error::TooLarge { size: n, limit: MAX_SEARCH_VERTICES });
    }
    if let Some(i) = (0..n).find(|&i| m.get(i, i) != Entry::One) {
        return Err(Error::DiagonalNotOne(i));
    }
    Ok((0..n).map(|i| m.row_mask(i, Entry::One) & !(1u64 << i)).collect())
}

/// `true` iff the matrix, symmetrically permuted by `order`, has consecutive
/// ones right of and below the diagonal.
pub fn is_quasi_linear(m: &LabeledMatrix, order: &[usize]) -> Result<bool> {
    symmetric_masks(m)?;
    let p = m.symmetric_permuted(order)?;
    let n = p.nrows();
    for i in 0..n {
        let mut gap = false;
        for j in i + 1..n {
            match p.get(i, j) {
                Entry::One if gap => return Ok(false),
                Entry::One => {}
                _ => gap = true,
            }
        }
        let mut gap = false;
        for k in i + 1..n {
            match p.get(k, i) {
                Entry::One if gap => return Ok(false),
                Entry::One => {}
                _ => gap = true,
            }
        }
    }
    Ok(true)
}

/// Lexicographically least vertex order in which, for positions `i < j < k`,
/// `adj(i, k)` implies `adj(i, j)` unless the pair `(i, j)` is marked free.
///
/// With no free pairs this is the quasi-linear search; free pairs are the `X`
/// cells of the quasi-x-linear property. A prefix is abandoned as soon as a
/// placed vertex has passed a plain zero and still has an unplaced neighbor.
pub(crate) fn search_order(adj: &[u64], free: &[u64]) -> Option<Vec<usize>> {
    let n = adj.len();
    debug_assert!(n <= MAX_SEARCH_VERTICES);
    let all = if n == 64 { u64::MAX } else { (1u64 << n) - 1 };
    let mut order = Vec::with_capacity(n);
    if extend(adj, free, all, 0, 0, &mut order) {
        Some(order)
    } else {
        None
    }
}

fn extend(adj: &[u64], free: &[u64], all: u64, placed: u64, closed: u64, order: &mut Vec<usize>) -> bool {
    if placed == all {
        return true;
    }
    let mut candidates = all & !placed;
    while candidates != 0 {
        let v = candidates.trailing_zeros() as usize;
        candidates &= candidates - 1;
        let bit = 1u64 << v;
        if adj[v] & closed != 0 {
            continue;
        }
        let newly = placed & !adj[v] & !free[v] & !closed;
        let unplaced = all & !placed & !bit;
        let mut ok = true;
        let mut it = newly;
        while it != 0 {
            let i = it.trailing_zeros() as usize;
            it &= it - 1;
            if adj[i] & unplaced != 0 {
                ok = false;
                break;
            }
        }
        if !ok {
            continue;
        }
        order.push(v);
        if extend(adj, free, all, placed | bit, closed | newly, order) {
            return true;
        }
        order.pop();
    }
    false
}

/// Searches for a quasi-linear symmetric order of `m`.
pub fn find_quasi_linear_order(m: &LabeledMatrix) -> Result<Certificate> {
    let adj = symmetric_masks(m)?;
    let free = vec![0u64; adj.len()];
    Ok(match search_order(&adj, &free) {
        Some(order) => Certificate::yes(
            CertificateKind::Interval,
            Evidence {
                order: Some(order.iter().map(|&i| m.rows()[i].to_string()).collect()),
                ..Default::default()
            },
        ),
        None => Certificate::no(CertificateKind::Interval, Witness::Exhausted),
    })
}

/// The vertex at (1-based) position `i` gets `[i, r]` where `r` is the last
/// position holding a one in its row.
pub fn intervals_from_quasi_linear(m: &LabeledMatrix, order: &[usize]) -> Result<IntervalAssignment> {
    if !is_quasi_linear(m, order)? {
        return Err(Error::Precondition("order is not quasi-linear".into()));
    }
    Ok(intervals_along(m, order))
}

pub(crate) fn intervals_along(m: &LabeledMatrix, order: &[usize]) -> IntervalAssignment {
    let n = order.len();
    (0..n)
        .map(|pos| {
            let v = order[pos];
            let last = (pos..n).rev().find(|&q| m.get(v, order[q]) == Entry::One).unwrap_or(pos);
            let iv = Interval::new(pos as i64 + 1, last as i64 + 1).expect("last >= pos");
            (m.rows()[v].to_string(), iv)
        })
        .collect()
}

/// `true` iff adjacency coincides with interval intersection for every pair.
pub fn verify_interval_rep(g: &Graph, ia: &IntervalAssignment) -> Result<bool> {
    let ivs = lookup_all(g, ia)?;
    let n = g.n();
    for u in 0..n {
        for v in u + 1..n {
            if g.has_edge(u, v) != ivs[u].intersects(ivs[v]) {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

pub(crate) fn lookup_all(g: &Graph, ia: &IntervalAssignment) -> Result<Vec<Interval>> {
    g.names()
        .iter()
        .map(|v| ia.get(v).ok_or_else(|| Error::MissingVertex(v.clone())))
        .collect()
}

/// Full pipeline: order search, interval extraction and verification.
pub fn is_interval_graph(g: &Graph) -> Result<Certificate> {
    let m = augmented_adjacency(g);
    let mut cert = find_quasi_linear_order(&m)?;
    if let Some(names) = &cert.evidence.order {
        let order: Vec<usize> = names.iter().map(|v| g.index_of(v).expect("own vertex")).collect();
        check_permutation(&order, g.n())?;
        let ia = intervals_from_quasi_linear(&m, &order)?;
        if !verify_interval_rep(g, &ia)? {
            return Err(Error::Internal("quasi-linear intervals do not realize the graph".into()));
        }
        cert.evidence.intervals = Some(ia);
    }
    Ok(cert)
}
