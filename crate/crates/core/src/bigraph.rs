//! Interval bigraphs: R-C partitions, diagonalization and interval
//! representations read off a diagonalized matrix.

use serde::{Deserialize, Serialize};

use crate::certificate::{BigraphIntervals, Certificate, CertificateKind, Evidence, Interval, Witness};
use crate::error::{Error, Result};
use crate::matrix::{Entry, LabeledMatrix, LineId};
use crate::rc_search::{Labeling, LabelingProblem};

/// How a diagonalized form was produced.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum DiagonalizationMethod {
    /// Pairs an original row with an original column on the diagonal whenever
    /// both may sit there; inserts a line only when forced.
    Reduced,
    /// Never pairs: one inserted line per original line, giving a square
    /// matrix of order `rows + cols`.
    Easy,
}

const MAX_LINES: usize = 64;

/// `true` iff every `R` has only `R`s to its right and every `C` only `C`s
/// below it, in the stored order.
pub fn check_rc_valid(m: &LabeledMatrix) -> Result<bool> {
    for (i, j, e) in m.entries() {
        match e {
            Entry::Zero => return Err(Error::UnresolvedZero(i, j)),
            Entry::X => return Err(Error::UnexpectedSymbol { row: i, col: j, symbol: 'X' }),
            _ => {}
        }
    }
    Ok(rc_valid_unchecked(m))
}

fn rc_valid_unchecked(m: &LabeledMatrix) -> bool {
    for i in 0..m.nrows() {
        let mut seen_r = false;
        for j in 0..m.ncols() {
            match m.get(i, j) {
                Entry::R => seen_r = true,
                _ if seen_r => return false,
                _ => {}
            }
        }
    }
    for j in 0..m.ncols() {
        let mut seen_c = false;
        for i in 0..m.nrows() {
            match m.get(i, j) {
                Entry::C => seen_c = true,
                _ if seen_c => return false,
                _ => {}
            }
        }
    }
    true
}

/// Labels the zeros of `m01` under the given orders with the labels every
/// R-C partition in those orders must use, and the remaining free zeros `R`.
///
/// A zero is forced to `C` when a `1` or a `C` lies to its right or a `C`
/// lies above it; it is forced to `R` when a `1` or an `R` lies below it or
/// an `R` lies to its left. Forcing is iterated to a fixpoint. A zero forced
/// both ways is reported as [`Error::LabelConflict`] at its position in the
/// permuted matrix; in that case the orders admit no R-C partition.
pub fn forced_labeling(m01: &LabeledMatrix, row_order: &[usize], col_order: &[usize]) -> Result<LabeledMatrix> {
    m01.require_binary()?;
    let mut m = m01.permuted(row_order, col_order)?;
    let (nr, nc) = (m.nrows(), m.ncols());
    loop {
        let mut changed = false;
        for i in 0..nr {
            for j in 0..nc {
                let e = m.get(i, j);
                if e == Entry::One {
                    continue;
                }
                let must_c = (j + 1..nc).any(|k| matches!(m.get(i, k), Entry::One | Entry::C))
                    || (0..i).any(|k| m.get(k, j) == Entry::C);
                let must_r = (i + 1..nr).any(|k| matches!(m.get(k, j), Entry::One | Entry::R))
                    || (0..j).any(|k| m.get(i, k) == Entry::R);
                let label = match (must_r, must_c) {
                    (true, true) => return Err(Error::LabelConflict(i, j)),
                    (true, false) => Entry::R,
                    (false, true) => Entry::C,
                    (false, false) => continue,
                };
                if e != label {
                    if e != Entry::Zero {
                        return Err(Error::LabelConflict(i, j));
                    }
                    m.set(i, j, label);
                    changed = true;
                }
            }
        }
        if !changed {
            break;
        }
    }
    for i in 0..nr {
        for j in 0..nc {
            if m.get(i, j) == Entry::Zero {
                m.set(i, j, Entry::R);
            }
        }
    }
    if !rc_valid_unchecked(&m) {
        return Err(Error::Internal("forced labeling produced an invalid R-C partition".into()));
    }
    Ok(m)
}

pub(crate) fn problem_for(m01: &LabeledMatrix) -> Result<LabelingProblem> {
    m01.require_binary()?;
    if m01.nrows() > MAX_LINES || m01.ncols() > MAX_LINES {
        return Err(Error::TooLarge { size: m01.nrows().max(m01.ncols()), limit: MAX_LINES });
    }
    let ones: Vec<u64> = (0..m01.nrows()).map(|i| m01.row_mask(i, Entry::One)).collect();
    let vars = (0..m01.nrows()).map(|i| m01.row_mask(i, Entry::Zero)).collect();
    Ok(LabelingProblem::new(m01.ncols(), ones, vars, (0..m01.nrows()).collect()))
}

/// Applies a solved labeling to `m` (rows `0..m.nrows()` of the problem) and
/// reorders it into R-C form.
pub(crate) fn apply_labeling(
    m: &LabeledMatrix,
    problem: &LabelingProblem,
    labeling: &Labeling,
) -> Result<(LabeledMatrix, Vec<usize>, Vec<usize>)> {
    let (row_order, col_order) = problem.orders(labeling);
    let mut labeled = m.clone();
    for i in 0..m.nrows() {
        for j in 0..m.ncols() {
            if let Some(e) = labeling.label(i, j) {
                labeled.set(i, j, e);
            }
        }
    }
    let labeled = labeled.permuted(&row_order, &col_order)?;
    if !check_rc_valid(&labeled)? {
        return Err(Error::Internal("derived orders do not give an R-C partition".into()));
    }
    Ok((labeled, row_order, col_order))
}

/// Searches for row and column orders and a zero labeling forming an R-C
/// partition.
pub fn find_rc_partition(m01: &LabeledMatrix) -> Result<Certificate> {
    let problem = problem_for(m01)?;
    let Some(labeling) = problem.solve() else {
        return Ok(Certificate::no(CertificateKind::IntervalBigraph, Witness::Exhausted));
    };
    let (labeled, row_order, col_order) = apply_labeling(m01, &problem, &labeling)?;
    Ok(Certificate::yes(
        CertificateKind::IntervalBigraph,
        Evidence {
            row_order: Some(row_order.iter().map(|&i| m01.rows()[i].clone()).collect()),
            col_order: Some(col_order.iter().map(|&j| m01.cols()[j].clone()).collect()),
            labeling: Some(labeled),
            ..Default::default()
        },
    ))
}

/// Diagonalizes with the reduced method, falling back to the easy method if
/// the reduced result fails validation.
pub fn diagonalize(m: &LabeledMatrix) -> Result<LabeledMatrix> {
    diagonalize_recorded(m).map(|(d, _)| d)
}

pub fn diagonalize_recorded(m: &LabeledMatrix) -> Result<(LabeledMatrix, DiagonalizationMethod)> {
    match diagonalize_with(m, DiagonalizationMethod::Reduced) {
        Ok(d) => Ok((d, DiagonalizationMethod::Reduced)),
        Err(Error::Internal(_)) => {
            diagonalize_with(m, DiagonalizationMethod::Easy).map(|d| (d, DiagonalizationMethod::Easy))
        }
        Err(e) => Err(e),
    }
}

/// Pads an R-C partition to a square matrix with `1` on the diagonal, every
/// `R` right of the diagonal and every `C` below it.
///
/// Original rows and columns keep their relative order. A row may take the
/// next diagonal slot once every column where it has a `C` is placed; a
/// column once every row with an `R` in it is placed. Inserted lines start as
/// `X` (with a diagonal `1`); an `X` right of an `R` becomes `R`, an `X`
/// below a `C` becomes `C`, and every other `X` becomes `1`.
pub fn diagonalize_with(m: &LabeledMatrix, method: DiagonalizationMethod) -> Result<LabeledMatrix> {
    if !check_rc_valid(m)? {
        return Err(Error::Precondition("matrix is not an R-C partition".into()));
    }
    let (nr, nc) = (m.nrows(), m.ncols());
    let mut next_row_id = next_synthetic(m.rows());
    let mut next_col_id = next_synthetic(m.cols());
    // Each diagonal slot holds an original row and/or an original column.
    let mut slots: Vec<(Option<usize>, Option<usize>)> = Vec::with_capacity(nr + nc);
    let (mut i, mut j) = (0, 0);
    while i < nr || j < nc {
        let row_ready = i < nr && (j..nc).all(|k| m.get(i, k) != Entry::C);
        let col_ready = j < nc && (i..nr).all(|k| m.get(k, j) != Entry::R);
        match (row_ready, col_ready) {
            (true, true) if method == DiagonalizationMethod::Reduced => {
                debug_assert_eq!(m.get(i, j), Entry::One);
                slots.push((Some(i), Some(j)));
                i += 1;
                j += 1;
            }
            (_, true) => {
                slots.push((None, Some(j)));
                j += 1;
            }
            (true, false) => {
                slots.push((Some(i), None));
                i += 1;
            }
            (false, false) => {
                return Err(Error::Precondition(format!("no line can take diagonal slot {}", slots.len() + 1)));
            }
        }
    }
    let size = slots.len();
    let mut row_ids = Vec::with_capacity(size);
    let mut col_ids = Vec::with_capacity(size);
    for &(r, c) in &slots {
        row_ids.push(match r {
            Some(r) => m.rows()[r].clone(),
            None => {
                next_row_id += 1;
                LineId::Synthetic(next_row_id - 1)
            }
        });
        col_ids.push(match c {
            Some(c) => m.cols()[c].clone(),
            None => {
                next_col_id += 1;
                LineId::Synthetic(next_col_id - 1)
            }
        });
    }
    let mut d = LabeledMatrix::filled(row_ids, col_ids, Entry::X);
    for (a, &(r, _)) in slots.iter().enumerate() {
        for (b, &(_, c)) in slots.iter().enumerate() {
            match (r, c) {
                (Some(r), Some(c)) => d.set(a, b, m.get(r, c)),
                _ if a == b => d.set(a, b, Entry::One),
                _ => {}
            }
        }
    }
    let snapshot = d.clone();
    for a in 0..size {
        for b in 0..size {
            if snapshot.get(a, b) != Entry::X {
                continue;
            }
            let after_r = (0..b).any(|k| snapshot.get(a, k) == Entry::R);
            let below_c = (0..a).any(|k| snapshot.get(k, b) == Entry::C);
            let fill = match (after_r, below_c) {
                (true, true) => return Err(Error::Internal(format!("X at ({a}, {b}) is both right of R and below C"))),
                (true, false) => Entry::R,
                (false, true) => Entry::C,
                (false, false) => Entry::One,
            };
            d.set(a, b, fill);
        }
    }
    if !is_diagonalized(&d) {
        return Err(Error::Internal("padding is not a diagonalized form".into()));
    }
    Ok(d)
}

fn next_synthetic(ids: &[LineId]) -> u32 {
    ids.iter()
        .filter_map(|id| match id {
            LineId::Synthetic(k) => Some(*k),
            LineId::Vertex(_) => None,
        })
        .max()
        .map_or(1, |k| k + 1)
}

/// Square, unit diagonal, `R` only right of and `C` only below the diagonal,
/// and a valid R-C partition.
pub fn is_diagonalized(d: &LabeledMatrix) -> bool {
    if !d.is_square() || !d.all_in(&[Entry::One, Entry::R, Entry::C]) {
        return false;
    }
    let placed = d.entries().all(|(i, j, e)| match e {
        Entry::R => j > i,
        Entry::C => i > j,
        _ => i != j || e == Entry::One,
    });
    placed && rc_valid_unchecked(d)
}

/// Row `i` gets `[i, r]` with `r` the last `1` on or after the diagonal in
/// that row; column `j` gets `[j, s]` with `s` the last `1` on or below the
/// diagonal in that column (1-based positions).
pub fn algorithm_interval_rep(m_diag: &LabeledMatrix) -> Result<BigraphIntervals> {
    if !is_diagonalized(m_diag) {
        return Err(Error::Precondition("matrix is not in diagonalized form".into()));
    }
    let n = m_diag.nrows();
    let mut rows = Vec::with_capacity(n);
    let mut cols = Vec::with_capacity(n);
    for i in 0..n {
        let last = (i..n).rev().find(|&j| m_diag.get(i, j) == Entry::One).expect("diagonal is 1");
        rows.push((m_diag.rows()[i].clone(), Interval::new(i as i64 + 1, last as i64 + 1)?));
    }
    for j in 0..n {
        let last = (j..n).rev().find(|&i| m_diag.get(i, j) == Entry::One).expect("diagonal is 1");
        cols.push((m_diag.cols()[j].clone(), Interval::new(j as i64 + 1, last as i64 + 1)?));
    }
    Ok(BigraphIntervals { rows, cols })
}

/// Entrywise check: `1` iff the row and column intervals intersect. `R`, `C`
/// and `0` all count as non-edges.
pub fn verify_bigraph_rep(m01: &LabeledMatrix, ia: &BigraphIntervals) -> Result<bool> {
    let rows = m01
        .rows()
        .iter()
        .map(|id| ia.row(id).ok_or_else(|| Error::MissingVertex(id.to_string())))
        .collect::<Result<Vec<_>>>()?;
    let cols = m01
        .cols()
        .iter()
        .map(|id| ia.col(id).ok_or_else(|| Error::MissingVertex(id.to_string())))
        .collect::<Result<Vec<_>>>()?;
    Ok(m01.entries().all(|(i, j, e)| (e == Entry::One) == rows[i].intersects(cols[j])))
}

/// An R-C partition together with its diagonalization and interval tables.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Representation {
    pub labeled: LabeledMatrix,
    pub diagonalized: LabeledMatrix,
    pub method: DiagonalizationMethod,
    pub full: BigraphIntervals,
    pub stripped: BigraphIntervals,
}

/// Runs diagonalization and the interval algorithm on an R-C partition and
/// verifies the stripped representation against it.
pub fn represent_labeled(labeled: &LabeledMatrix) -> Result<Representation> {
    let (diagonalized, method) = diagonalize_recorded(labeled)?;
    let full = algorithm_interval_rep(&diagonalized)?;
    let stripped = full.strip_synthetic();
    if !verify_bigraph_rep(labeled, &stripped)? {
        return Err(Error::Internal("algorithm output does not realize the bigraph".into()));
    }
    Ok(Representation { labeled: labeled.clone(), diagonalized, method, full, stripped })
}

/// Interval representation of the bigraph of `m`.
///
/// A matrix that already carries `R`/`C` labels is used as given. A `{1, 0}`
/// matrix is first labeled in its stored order when that order admits an R-C
/// partition, otherwise by search. `None` when `m` is not an interval bigraph.
pub fn represent(m: &LabeledMatrix) -> Result<Option<Representation>> {
    if m.all_in(&[Entry::One, Entry::Zero]) {
        let rows: Vec<usize> = (0..m.nrows()).collect();
        let cols: Vec<usize> = (0..m.ncols()).collect();
        let labeled = match forced_labeling(m, &rows, &cols) {
            Ok(l) => l,
            Err(Error::LabelConflict(..)) => {
                let cert = find_rc_partition(m)?;
                match cert.evidence.labeling {
                    Some(l) => l,
                    None => return Ok(None),
                }
            }
            Err(e) => return Err(e),
        };
        return represent_labeled(&labeled).map(Some);
    }
    if !check_rc_valid(m)? {
        return Err(Error::Precondition("labels do not form an R-C partition in the stored order".into()));
    }
    represent_labeled(m).map(Some)
}

/// R-C partition search, diagonalization, the interval algorithm and
/// verification against `m01`.
pub fn is_interval_bigraph(m01: &LabeledMatrix) -> Result<Certificate> {
    let mut cert = find_rc_partition(m01)?;
    if let Some(labeled) = &cert.evidence.labeling {
        let rep = represent_labeled(labeled)?;
        if !verify_bigraph_rep(m01, &rep.stripped)? {
            return Err(Error::Internal("representation does not realize the input".into()));
        }
        cert.evidence.diagonalization = Some(rep.method);
        cert.evidence.bigraph_intervals = Some(rep.stripped);
    }
    Ok(cert)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn named(rows: &[&str], row_ids: &[&str], col_ids: &[&str]) -> LabeledMatrix {
        LabeledMatrix::from_rows(rows)
            .unwrap()
            .with_ids(
                row_ids.iter().map(|s| LineId::vertex(*s)).collect(),
                col_ids.iter().map(|s| LineId::vertex(*s)).collect(),
            )
            .unwrap()
    }

    fn example_a() -> LabeledMatrix {
        named(&["11100", "10010", "00010"], &["y1", "y2", "y3"], &["x1", "x2", "x3", "x4", "x5"])
    }

    fn example_a_labeled() -> LabeledMatrix {
        named(&["111RR", "1CC1R", "CCC1R"], &["y1", "y2", "y3"], &["x1", "x2", "x3", "x4", "x5"])
    }

    #[test]
    fn printed_example_partition_is_valid() {
        assert!(check_rc_valid(&example_a_labeled()).unwrap());
    }

    #[test]
    fn small_rc_checks() {
        assert!(check_rc_valid(&LabeledMatrix::from_rows(&["1R", "C1"]).unwrap()).unwrap());
        // the C has a 1 below it and the R a 1 to its right
        assert!(!check_rc_valid(&LabeledMatrix::from_rows(&["1C", "R1"]).unwrap()).unwrap());
        assert!(check_rc_valid(&LabeledMatrix::from_rows(&["1R", "CC"]).unwrap()).unwrap());
        assert!(!check_rc_valid(&LabeledMatrix::from_rows(&["R1"]).unwrap()).unwrap());
        assert_eq!(
            check_rc_valid(&LabeledMatrix::from_rows(&["10"]).unwrap()).unwrap_err(),
            Error::UnresolvedZero(0, 1)
        );
    }

    #[test]
    fn forced_labeling_reproduces_printed_example() {
        let id3 = [0, 1, 2];
        let id5 = [0, 1, 2, 3, 4];
        assert_eq!(forced_labeling(&example_a(), &id3, &id5).unwrap(), example_a_labeled());
    }

    #[test]
    fn forced_labeling_identity_and_couple() {
        let id = LabeledMatrix::from_rows(&["10", "01"]).unwrap();
        assert_eq!(forced_labeling(&id, &[0, 1], &[0, 1]).unwrap(), LabeledMatrix::from_rows(&["1R", "C1"]).unwrap());
        let anti = LabeledMatrix::from_rows(&["01", "10"]).unwrap();
        assert_eq!(forced_labeling(&anti, &[0, 1], &[0, 1]).unwrap_err(), Error::LabelConflict(0, 0));
    }

    #[test]
    fn forced_labeling_propagates_through_free_zeros() {
        // No zero sees a 1 both to its right and below it, yet (1,1) sits
        // below a forced C and right of a forced R.
        let m = LabeledMatrix::from_rows(&["101", "000", "100"]).unwrap();
        assert!(matches!(forced_labeling(&m, &[0, 1, 2], &[0, 1, 2]), Err(Error::LabelConflict(..))));
    }

    #[test]
    fn reduced_diagonalization_matches_printed_example() {
        let (d, method) = diagonalize_recorded(&example_a_labeled()).unwrap();
        assert_eq!(method, DiagonalizationMethod::Reduced);
        let s = |k| LineId::Synthetic(k);
        let v = LineId::vertex;
        assert_eq!(d.rows(), &[v("y1"), s(1), s(2), v("y2"), v("y3"), s(3)]);
        assert_eq!(d.cols(), &[v("x1"), v("x2"), v("x3"), v("x4"), s(1), v("x5")]);
        let expect = ["111RRR", "111111", "111111", "1CC11R", "CCC11R", "CCC111"];
        for (i, row) in expect.iter().enumerate() {
            let got: String = d.row(i).iter().map(|e| e.as_char()).collect();
            assert_eq!(&got, row, "row {i}");
        }
        assert_eq!(d.strip_synthetic(), example_a_labeled());
    }

    #[test]
    fn easy_diagonalization_has_order_rows_plus_cols() {
        let d = diagonalize_with(&example_a_labeled(), DiagonalizationMethod::Easy).unwrap();
        assert_eq!(d.nrows(), 8);
        assert!(is_diagonalized(&d));
        assert_eq!(d.strip_synthetic(), example_a_labeled());
        let rep = algorithm_interval_rep(&d).unwrap();
        assert!(verify_bigraph_rep(&example_a(), &rep.strip_synthetic()).unwrap());
    }

    #[test]
    fn one_by_one() {
        let m = LabeledMatrix::from_rows(&["1"]).unwrap();
        assert_eq!(diagonalize(&m).unwrap(), m);
        let rep = algorithm_interval_rep(&m).unwrap();
        assert_eq!(rep.rows[0].1, Interval::new(1, 1).unwrap());
        assert_eq!(rep.cols[0].1, Interval::new(1, 1).unwrap());
    }

    #[test]
    fn algorithm_on_printed_example() {
        let d = diagonalize(&example_a_labeled()).unwrap();
        let rep = algorithm_interval_rep(&d).unwrap();
        let rows: Vec<(i64, i64)> = rep.rows.iter().map(|(_, iv)| (*iv).into()).collect();
        let cols: Vec<(i64, i64)> = rep.cols.iter().map(|(_, iv)| (*iv).into()).collect();
        assert_eq!(rows, vec![(1, 3), (2, 6), (3, 6), (4, 5), (5, 5), (6, 6)]);
        assert_eq!(cols, vec![(1, 4), (2, 3), (3, 3), (4, 6), (5, 6), (6, 6)]);
        let stripped = rep.strip_synthetic();
        assert!(verify_bigraph_rep(&example_a(), &stripped).unwrap());
    }

    #[test]
    fn verify_detects_shifted_rows() {
        let d = diagonalize(&example_a_labeled()).unwrap();
        let mut rep = algorithm_interval_rep(&d).unwrap().strip_synthetic();
        for (_, iv) in &mut rep.rows {
            *iv = iv.shifted(100);
        }
        assert!(!verify_bigraph_rep(&example_a(), &rep).unwrap());
    }

    #[test]
    fn empty_bigraph_with_separated_intervals() {
        let m = LabeledMatrix::from_rows(&["00", "00"]).unwrap();
        let one = Interval::new(1, 1).unwrap();
        let three = Interval::new(3, 3).unwrap();
        let ia = BigraphIntervals {
            rows: m.rows().iter().map(|r| (r.clone(), one)).collect(),
            cols: m.cols().iter().map(|c| (c.clone(), three)).collect(),
        };
        assert!(verify_bigraph_rep(&m, &ia).unwrap());
    }

    #[test]
    fn recognizes_example_bigraph() {
        let cert = is_interval_bigraph(&example_a()).unwrap();
        assert!(cert.is_yes());
        assert!(verify_bigraph_rep(&example_a(), cert.evidence.bigraph_intervals.as_ref().unwrap()).unwrap());
        let no = LabeledMatrix::from_rows(&["011", "101", "110"]).unwrap();
        assert!(!is_interval_bigraph(&no).unwrap().is_yes());
    }

    #[test]
    fn represent_uses_printed_order() {
        let rep = represent(&example_a()).unwrap().unwrap();
        assert_eq!(rep.labeled, example_a_labeled());
        let pairs: Vec<(String, (i64, i64))> =
            rep.stripped.rows.iter().map(|(id, iv)| (id.to_string(), (*iv).into())).collect();
        assert_eq!(pairs, vec![("y1".into(), (1, 3)), ("y2".into(), (4, 5)), ("y3".into(), (5, 5))]);
    }
}
