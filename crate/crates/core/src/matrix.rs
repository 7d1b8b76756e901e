//! Labeled matrices over the alphabet `{1, 0, R, C, X}`.
//!
//! One type carries plain (bi)adjacency matrices, R-C partitions, diagonalized
//! forms and quasi-x-linear matrices. Rows and columns carry [`LineId`]s so a
//! matrix can be permuted, padded and stripped without losing track of which
//! vertex each line belongs to.

use std::fmt;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

/// A matrix symbol.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Entry {
    One,
    Zero,
    R,
    C,
    X,
}

impl Entry {
    pub fn as_char(self) -> char {
        match self {
            Entry::One => '1',
            Entry::Zero => '0',
            Entry::R => 'R',
            Entry::C => 'C',
            Entry::X => 'X',
        }
    }

    pub fn from_char(c: char) -> Option<Entry> {
        Some(match c {
            '1' => Entry::One,
            '0' => Entry::Zero,
            'R' => Entry::R,
            'C' => Entry::C,
            'X' => Entry::X,
            _ => return None,
        })
    }

    /// `R` and `C` are labeled zeros.
    pub fn is_zero_like(self) -> bool {
        matches!(self, Entry::Zero | Entry::R | Entry::C)
    }
}

/// Identity of a matrix row or column.
///
/// `Synthetic` lines are the ones inserted by diagonalization; they live in a
/// namespace disjoint from user vertex names and render as `~k`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum LineId {
    Vertex(String),
    Synthetic(u32),
}

impl LineId {
    pub fn vertex(name: impl Into<String>) -> LineId {
        LineId::Vertex(name.into())
    }

    pub fn is_synthetic(&self) -> bool {
        matches!(self, LineId::Synthetic(_))
    }

    pub fn name(&self) -> Option<&str> {
        match self {
            LineId::Vertex(s) => Some(s),
            LineId::Synthetic(_) => None,
        }
    }

    pub fn parse(s: &str) -> Result<LineId> {
        if let Some(rest) = s.strip_prefix('~') {
            rest.parse::<u32>()
                .map(LineId::Synthetic)
                .map_err(|_| Error::ReservedName(s.to_string()))
        } else if s.is_empty() {
            Err(Error::EmptyName)
        } else {
            Ok(LineId::Vertex(s.to_string()))
        }
    }
}

impl fmt::Display for LineId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            LineId::Vertex(s) => f.write_str(s),
            LineId::Synthetic(k) => write!(f, "~{k}"),
        }
    }
}

impl Serialize for LineId {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for LineId {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        LineId::parse(&s).map_err(serde::de::Error::custom)
    }
}

/// Rectangular matrix with labeled rows and columns.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LabeledMatrix {
    rows: Vec<LineId>,
    cols: Vec<LineId>,
    entries: Vec<Entry>,
}

impl LabeledMatrix {
    pub fn new(rows: Vec<LineId>, cols: Vec<LineId>, entries: Vec<Entry>) -> Result<Self> {
        if entries.len() != rows.len() * cols.len() {
            return Err(Error::Precondition(format!(
                "{} entries for a {}x{} matrix",
                entries.len(),
                rows.len(),
                cols.len()
            )));
        }
        Ok(LabeledMatrix { rows, cols, entries })
    }

    pub fn filled(rows: Vec<LineId>, cols: Vec<LineId>, e: Entry) -> Self {
        let entries = vec![e; rows.len() * cols.len()];
        LabeledMatrix { rows, cols, entries }
    }

    /// Builds a `{1, 0}` matrix from boolean rows. Lines are named `r{i}` and
    /// `c{j}` unless names are supplied later with [`LabeledMatrix::with_ids`].
    pub fn from_bools(bits: &[Vec<bool>]) -> Self {
        let nrows = bits.len();
        let ncols = bits.first().map_or(0, |r| r.len());
        let rows = (0..nrows).map(|i| LineId::Vertex(format!("r{}", i + 1))).collect();
        let cols = (0..ncols).map(|j| LineId::Vertex(format!("c{}", j + 1))).collect();
        let entries = bits
            .iter()
            .flat_map(|r| {
                assert_eq!(r.len(), ncols, "ragged matrix");
                r.iter().map(|&b| if b { Entry::One } else { Entry::Zero })
            })
            .collect();
        LabeledMatrix { rows, cols, entries }
    }

    /// Parses rows of symbols such as `["11R", "C1R"]` with default line ids.
    pub fn from_rows(rows: &[&str]) -> Result<Self> {
        let nrows = rows.len();
        let ncols = rows.first().map_or(0, |r| r.chars().count());
        let mut entries = Vec::with_capacity(nrows * ncols);
        for (i, r) in rows.iter().enumerate() {
            if r.chars().count() != ncols {
                return Err(Error::Precondition("ragged matrix".into()));
            }
            for (j, ch) in r.chars().enumerate() {
                entries.push(Entry::from_char(ch).ok_or(Error::UnexpectedSymbol {
                    row: i,
                    col: j,
                    symbol: ch,
                })?);
            }
        }
        let rows = (0..nrows).map(|i| LineId::Vertex(format!("r{}", i + 1))).collect();
        let cols = (0..ncols).map(|j| LineId::Vertex(format!("c{}", j + 1))).collect();
        Ok(LabeledMatrix { rows, cols, entries })
    }

    pub fn with_ids(mut self, rows: Vec<LineId>, cols: Vec<LineId>) -> Result<Self> {
        if rows.len() != self.rows.len() || cols.len() != self.cols.len() {
            return Err(Error::Precondition("line id count mismatch".into()));
        }
        self.rows = rows;
        self.cols = cols;
        Ok(self)
    }

    pub fn nrows(&self) -> usize {
        self.rows.len()
    }

    pub fn ncols(&self) -> usize {
        self.cols.len()
    }

    pub fn rows(&self) -> &[LineId] {
        &self.rows
    }

    pub fn cols(&self) -> &[LineId] {
        &self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows.len() == self.cols.len()
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> Entry {
        self.entries[i * self.cols.len() + j]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, e: Entry) {
        let n = self.cols.len();
        self.entries[i * n + j] = e;
    }

    pub fn row(&self, i: usize) -> &[Entry] {
        let n = self.cols.len();
        &self.entries[i * n..(i + 1) * n]
    }

    pub fn row_position(&self, id: &LineId) -> Option<usize> {
        self.rows.iter().position(|r| r == id)
    }

    pub fn col_position(&self, id: &LineId) -> Option<usize> {
        self.cols.iter().position(|c| c == id)
    }

    /// Reorders rows and columns: row `k` of the result is row `row_order[k]`.
    pub fn permuted(&self, row_order: &[usize], col_order: &[usize]) -> Result<Self> {
        check_permutation(row_order, self.nrows())?;
        check_permutation(col_order, self.ncols())?;
        let rows = row_order.iter().map(|&i| self.rows[i].clone()).collect();
        let cols = col_order.iter().map(|&j| self.cols[j].clone()).collect();
        let mut entries = Vec::with_capacity(self.entries.len());
        for &i in row_order {
            for &j in col_order {
                entries.push(self.get(i, j));
            }
        }
        Ok(LabeledMatrix { rows, cols, entries })
    }

    /// Same permutation applied to rows and columns.
    pub fn symmetric_permuted(&self, order: &[usize]) -> Result<Self> {
        if !self.is_square() {
            return Err(Error::NotSquare(self.nrows(), self.ncols()));
        }
        self.permuted(order, order)
    }

    /// Keeps the listed rows and columns, in the listed order.
    pub fn submatrix(&self, rows: &[usize], cols: &[usize]) -> Self {
        let row_ids = rows.iter().map(|&i| self.rows[i].clone()).collect();
        let col_ids = cols.iter().map(|&j| self.cols[j].clone()).collect();
        let mut entries = Vec::with_capacity(rows.len() * cols.len());
        for &i in rows {
            for &j in cols {
                entries.push(self.get(i, j));
            }
        }
        LabeledMatrix { rows: row_ids, cols: col_ids, entries }
    }

    /// Drops every synthetic row and column.
    pub fn strip_synthetic(&self) -> Self {
        let rows: Vec<usize> = (0..self.nrows()).filter(|&i| !self.rows[i].is_synthetic()).collect();
        let cols: Vec<usize> = (0..self.ncols()).filter(|&j| !self.cols[j].is_synthetic()).collect();
        self.submatrix(&rows, &cols)
    }

    pub fn entries(&self) -> impl Iterator<Item = (usize, usize, Entry)> + '_ {
        let n = self.cols.len();
        self.entries.iter().enumerate().map(move |(k, &e)| (k / n.max(1), k % n.max(1), e))
    }

    pub fn all_in(&self, allowed: &[Entry]) -> bool {
        self.entries.iter().all(|e| allowed.contains(e))
    }

    /// Checks that only `1`/`0` appear.
    pub fn require_binary(&self) -> Result<()> {
        self.require_alphabet(&[Entry::One, Entry::Zero])
    }

    pub fn require_alphabet(&self, allowed: &[Entry]) -> Result<()> {
        match self.entries().find(|(_, _, e)| !allowed.contains(e)) {
            None => Ok(()),
            Some((row, col, e)) => Err(Error::UnexpectedSymbol { row, col, symbol: e.as_char() }),
        }
    }

    /// Maps R and C back to 0 and X to 0.
    pub fn to_binary(&self) -> Self {
        let entries = self
            .entries
            .iter()
            .map(|&e| if e == Entry::One { Entry::One } else { Entry::Zero })
            .collect();
        LabeledMatrix { rows: self.rows.clone(), cols: self.cols.clone(), entries }
    }

    pub fn is_symmetric(&self) -> bool {
        self.first_asymmetry().is_none()
    }

    pub(crate) fn first_asymmetry(&self) -> Option<(usize, usize)> {
        if !self.is_square() {
            return Some((0, 0));
        }
        let n = self.nrows();
        (0..n)
            .flat_map(|i| (i + 1..n).map(move |j| (i, j)))
            .find(|&(i, j)| self.get(i, j) != self.get(j, i))
    }

    /// Row `i` as a bitmask of its `One` columns. Requires at most 64 columns.
    pub(crate) fn row_mask(&self, i: usize, e: Entry) -> u64 {
        debug_assert!(self.ncols() <= 64);
        self.row(i)
            .iter()
            .enumerate()
            .filter(|(_, &x)| x == e)
            .fold(0u64, |m, (j, _)| m | (1 << j))
    }

    /// Renders the matrix text format: a header of column ids, then one line
    /// per row holding the row id followed by its symbols.
    pub fn to_text(&self) -> String {
        let row_w = self.rows.iter().map(|r| r.to_string().len()).max().unwrap_or(0);
        let col_w: Vec<usize> = self.cols.iter().map(|c| c.to_string().len()).collect();
        let mut out = String::new();
        out.push_str(&" ".repeat(row_w));
        for (c, w) in self.cols.iter().zip(&col_w) {
            out.push_str(&format!(" {:>w$}", c.to_string(), w = w));
        }
        out.push('\n');
        for (i, r) in self.rows.iter().enumerate() {
            out.push_str(&format!("{:<w$}", r.to_string(), w = row_w));
            for (j, w) in col_w.iter().enumerate() {
                out.push_str(&format!(" {:>w$}", self.get(i, j).as_char(), w = w));
            }
            out.push('\n');
        }
        out
    }

    /// Parses the matrix text format produced by [`LabeledMatrix::to_text`].
    pub fn from_text(text: &str) -> Result<Self> {
        let mut lines = text
            .lines()
            .enumerate()
            .filter(|(_, l)| !l.trim().is_empty() && !l.trim_start().starts_with('#'));
        let (header_no, header) = lines.next().ok_or(Error::Parse {
            line: 1,
            col: 1,
            msg: "empty matrix".into(),
        })?;
        let cols = header
            .split_whitespace()
            .map(|t| LineId::parse(t).map_err(|e| parse_err(header_no, header, t, e.to_string())))
            .collect::<Result<Vec<_>>>()?;
        let mut rows = Vec::new();
        let mut entries = Vec::new();
        for (no, line) in lines {
            let mut toks = line.split_whitespace();
            let name = toks.next().expect("non-empty line");
            rows.push(LineId::parse(name).map_err(|e| parse_err(no, line, name, e.to_string()))?);
            let mut count = 0;
            for t in toks {
                let mut chars = t.chars();
                let e = match (chars.next(), chars.next()) {
                    (Some(ch), None) => Entry::from_char(ch),
                    _ => None,
                }
                .ok_or_else(|| parse_err(no, line, t, format!("unknown symbol '{t}'")))?;
                entries.push(e);
                count += 1;
            }
            if count != cols.len() {
                return Err(Error::Parse {
                    line: no + 1,
                    col: 1,
                    msg: format!("expected {} symbols, found {count}", cols.len()),
                });
            }
        }
        LabeledMatrix::new(rows, cols, entries)
    }
}

fn parse_err(line_no: usize, line: &str, token: &str, msg: String) -> Error {
    let col = line.find(token).map_or(1, |c| c + 1);
    Error::Parse { line: line_no + 1, col, msg }
}

pub(crate) fn check_permutation(order: &[usize], n: usize) -> Result<()> {
    if order.len() != n {
        return Err(Error::NotPermutation(n));
    }
    let mut seen = vec![false; n];
    for &i in order {
        if i >= n || seen[i] {
            return Err(Error::NotPermutation(n));
        }
        seen[i] = true;
    }
    Ok(())
}

#[derive(Serialize, Deserialize)]
struct MatrixRepr {
    rows: Vec<LineId>,
    cols: Vec<LineId>,
    entries: Vec<String>,
}

impl Serialize for LabeledMatrix {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        MatrixRepr {
            rows: self.rows.clone(),
            cols: self.cols.clone(),
            entries: (0..self.nrows())
                .map(|i| self.row(i).iter().map(|e| e.as_char()).collect())
                .collect(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for LabeledMatrix {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        use serde::de::Error as _;
        let repr = MatrixRepr::deserialize(d)?;
        let mut entries = Vec::new();
        for row in &repr.entries {
            for ch in row.chars() {
                entries.push(Entry::from_char(ch).ok_or_else(|| D::Error::custom(format!("bad symbol {ch}")))?);
            }
        }
        LabeledMatrix::new(repr.rows, repr.cols, entries).map_err(D::Error::custom)
    }
}

impl fmt::Display for LabeledMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_text())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn text_round_trip() {
        let m = LabeledMatrix::from_rows(&["11R", "C1R"]).unwrap();
        let back = LabeledMatrix::from_text(&m.to_text()).unwrap();
        assert_eq!(m, back);
    }

    #[test]
    fn synthetic_ids_render_and_parse() {
        assert_eq!(LineId::Synthetic(3).to_string(), "~3");
        assert_eq!(LineId::parse("~3").unwrap(), LineId::Synthetic(3));
        assert!(LineId::parse("~x").is_err());
    }

    #[test]
    fn bad_symbol_reports_position() {
        let err = LabeledMatrix::from_text("a b\nr 1 Q\n").unwrap_err();
        assert_eq!(err, Error::Parse { line: 2, col: 5, msg: "unknown symbol 'Q'".into() });
    }

    #[test]
    fn permuted_moves_lines() {
        let m = LabeledMatrix::from_rows(&["10", "01"]).unwrap();
        let p = m.permuted(&[1, 0], &[0, 1]).unwrap();
        assert_eq!(p.get(0, 1), Entry::One);
        assert_eq!(p.rows()[0], LineId::vertex("r2"));
        assert!(m.permuted(&[0, 0], &[0, 1]).is_err());
    }
}
