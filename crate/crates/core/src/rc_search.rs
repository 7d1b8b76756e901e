//! Backtracking search for zero labelings that extend to R-C partitions.
//!
//! A labeling of the zeros by `R`/`C` extends to an R-C partition under some
//! row and column orders iff the row R-sets are linearly ordered by
//! inclusion and the column C-sets are too: sorting columns by how many
//! R-sets contain them makes every R-set a suffix, and sorting rows by how
//! many C-sets contain them does the same for C-sets. The two conditions are
//! independent, so the search works on labelings alone and derives the
//! orders at the end.
//!
//! Constraints understood by the solver:
//! * chain conditions on a chosen subset of rows (and on columns restricted
//!   to those rows),
//! * couples: two labeled zeros forming a 2x2 permutation submatrix get
//!   different labels,
//! * forbidden triples `(p, q, n)`: not (`(p, n) = R` and `(q, n) = C`).
//!
//! Labeled cells outside the chain rows only take part through couples.

use crate::matrix::Entry;

#[inline]
fn bits(mut m: u64) -> impl Iterator<Item = usize> {
    std::iter::from_fn(move || {
        if m == 0 {
            None
        } else {
            let b = m.trailing_zeros() as usize;
            m &= m - 1;
            Some(b)
        }
    })
}

#[derive(Clone, Debug)]
pub(crate) struct LabelingProblem {
    rows: usize,
    cols: usize,
    ones: Vec<u64>,
    vars: Vec<u64>,
    chain_rows: Vec<usize>,
    chain_mask: u64,
    partners: Vec<Vec<(u8, u8)>>,
    forbidden: Vec<(usize, usize, usize)>,
}

/// R and C cells per row.
#[derive(Clone, Debug, PartialEq, Eq)]
pub(crate) struct Labeling {
    pub r: Vec<u64>,
    pub c: Vec<u64>,
}

impl Labeling {
    pub fn label(&self, i: usize, j: usize) -> Option<Entry> {
        if self.r[i] >> j & 1 == 1 {
            Some(Entry::R)
        } else if self.c[i] >> j & 1 == 1 {
            Some(Entry::C)
        } else {
            None
        }
    }
}

impl LabelingProblem {
    /// `ones[i]` and `vars[i]` are column masks; `vars` are the zeros that
    /// receive a label. Requires at most 64 rows and 64 columns.
    pub fn new(cols: usize, ones: Vec<u64>, vars: Vec<u64>, chain_rows: Vec<usize>) -> Self {
        let rows = ones.len();
        assert!(rows <= 64 && cols <= 64);
        assert_eq!(vars.len(), rows);
        let chain_mask = chain_rows.iter().fold(0u64, |m, &i| m | 1 << i);
        let mut partners = vec![Vec::new(); rows * cols];
        for i in 0..rows {
            for j in bits(vars[i]) {
                for k in (0..rows).filter(|&k| k != i && ones[k] >> j & 1 == 1) {
                    for l in bits(vars[k] & ones[i]) {
                        partners[i * cols + j].push((k as u8, l as u8));
                    }
                }
            }
        }
        LabelingProblem { rows, cols, ones, vars, chain_rows, chain_mask, partners, forbidden: Vec::new() }
    }

    pub fn with_forbidden(mut self, forbidden: Vec<(usize, usize, usize)>) -> Self {
        self.forbidden = forbidden;
        self
    }

    /// Couple partners of a labeled cell.
    pub fn partners(&self, i: usize, j: usize) -> &[(u8, u8)] {
        &self.partners[i * self.cols + j]
    }

    /// First labeling found by depth-first search, trying `R` before `C` on
    /// the first open cell (chain rows first, then row-major).
    pub fn solve(&self) -> Option<Labeling> {
        let empty = Labeling { r: vec![0; self.rows], c: vec![0; self.rows] };
        self.dfs(empty)
    }

    fn dfs(&self, mut st: Labeling) -> Option<Labeling> {
        if !self.propagate(&mut st) {
            return None;
        }
        let Some((i, j)) = self.open_cell(&st) else {
            return if self.is_valid(&st) { Some(st) } else { None };
        };
        let mut with_r = st.clone();
        with_r.r[i] |= 1 << j;
        if let Some(found) = self.dfs(with_r) {
            return Some(found);
        }
        st.c[i] |= 1 << j;
        self.dfs(st)
    }

    fn open_cell(&self, st: &Labeling) -> Option<(usize, usize)> {
        let open = |i: usize| self.vars[i] & !(st.r[i] | st.c[i]);
        self.chain_rows
            .iter()
            .copied()
            .chain((0..self.rows).filter(|&i| self.chain_mask >> i & 1 == 0))
            .find_map(|i| {
                let o = open(i);
                (o != 0).then(|| (i, o.trailing_zeros() as usize))
            })
    }

    /// Applies forced consequences until a fixpoint; `false` on conflict.
    fn propagate(&self, st: &mut Labeling) -> bool {
        loop {
            let mut changed = false;
            for i in 0..self.rows {
                if st.r[i] & st.c[i] != 0 {
                    return false;
                }
            }

            // couples
            for i in 0..self.rows {
                for j in bits(st.r[i] | st.c[i]) {
                    let is_r = st.r[i] >> j & 1 == 1;
                    for &(k, l) in self.partners(i, j) {
                        let (k, bit) = (k as usize, 1u64 << l);
                        let (same, other) = if is_r { (st.r[k], st.c[k]) } else { (st.c[k], st.r[k]) };
                        if same & bit != 0 {
                            return false;
                        }
                        if other & bit == 0 {
                            if is_r {
                                st.c[k] |= bit;
                            } else {
                                st.r[k] |= bit;
                            }
                            changed = true;
                        }
                    }
                }
            }

            // forbidden (p, n) = R with (q, n) = C
            for &(p, q, n) in &self.forbidden {
                let bit = 1u64 << n;
                let pr = st.r[p] & bit != 0;
                let qc = st.c[q] & bit != 0;
                if pr && qc {
                    return false;
                }
                if pr && self.vars[q] & bit != 0 && st.r[q] & bit == 0 {
                    st.r[q] |= bit;
                    changed = true;
                }
                if qc && self.vars[p] & bit != 0 && st.c[p] & bit == 0 {
                    st.c[p] |= bit;
                    changed = true;
                }
            }

            // row R-sets must be nested
            for &i in &self.chain_rows {
                for &k in &self.chain_rows {
                    if i == k {
                        continue;
                    }
                    let not_r_k = self.ones[k] | st.c[k];
                    if st.r[i] & not_r_k == 0 {
                        continue;
                    }
                    // R_i is not inside R_k, so R_k must be inside R_i.
                    let missing = st.r[k] & !st.r[i];
                    if missing == 0 {
                        continue;
                    }
                    if missing & (self.ones[i] | st.c[i] | !self.vars[i]) != 0 {
                        return false;
                    }
                    st.r[i] |= missing;
                    changed = true;
                }
            }

            // column C-sets (over chain rows) must be nested
            let mut ccol = vec![0u64; self.cols];
            let mut not_c = vec![0u64; self.cols];
            for &i in &self.chain_rows {
                for j in bits(st.c[i]) {
                    ccol[j] |= 1 << i;
                }
                for j in bits(self.ones[i] | st.r[i]) {
                    not_c[j] |= 1 << i;
                }
            }
            for j in 0..self.cols {
                for l in 0..self.cols {
                    if j == l || ccol[j] & not_c[l] == 0 {
                        continue;
                    }
                    let missing = ccol[l] & !ccol[j];
                    if missing == 0 {
                        continue;
                    }
                    if missing & not_c[j] != 0 {
                        return false;
                    }
                    for i in bits(missing) {
                        if self.vars[i] >> j & 1 == 0 {
                            return false;
                        }
                        st.c[i] |= 1 << j;
                    }
                    ccol[j] |= missing;
                    changed = true;
                }
            }

            if !changed {
                return true;
            }
        }
    }

    /// Direct check of every constraint on a complete labeling.
    pub fn is_valid(&self, st: &Labeling) -> bool {
        for i in 0..self.rows {
            if st.r[i] | st.c[i] != self.vars[i] || st.r[i] & st.c[i] != 0 {
                return false;
            }
            for j in bits(self.vars[i]) {
                let is_r = st.r[i] >> j & 1 == 1;
                for &(k, l) in self.partners(i, j) {
                    if (st.r[k as usize] >> l & 1 == 1) == is_r {
                        return false;
                    }
                }
            }
        }
        for &(p, q, n) in &self.forbidden {
            if st.r[p] >> n & 1 == 1 && st.c[q] >> n & 1 == 1 {
                return false;
            }
        }
        let chain = |sets: &[u64]| {
            sets.iter().all(|&a| sets.iter().all(|&b| a & !b == 0 || b & !a == 0))
        };
        let row_sets: Vec<u64> = self.chain_rows.iter().map(|&i| st.r[i]).collect();
        let col_sets: Vec<u64> = (0..self.cols)
            .map(|j| self.chain_rows.iter().filter(|&&i| st.c[i] >> j & 1 == 1).fold(0u64, |m, &i| m | 1 << i))
            .collect();
        chain(&row_sets) && chain(&col_sets)
    }

    /// Row order (chain rows only) and column order under which the labeling
    /// is an R-C partition.
    pub fn orders(&self, st: &Labeling) -> (Vec<usize>, Vec<usize>) {
        let mut cols: Vec<usize> = (0..self.cols).collect();
        cols.sort_by_key(|&j| (self.chain_rows.iter().filter(|&&i| st.r[i] >> j & 1 == 1).count(), j));
        let mut rows = self.chain_rows.clone();
        rows.sort_by_key(|&i| (st.c[i].count_ones(), i));
        (rows, cols)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn masks(rows: &[&str]) -> (usize, Vec<u64>, Vec<u64>) {
        let cols = rows[0].len();
        let ones = rows
            .iter()
            .map(|r| r.chars().enumerate().filter(|(_, c)| *c == '1').fold(0, |m, (j, _)| m | 1 << j))
            .collect::<Vec<u64>>();
        let full = (1u64 << cols) - 1;
        let vars = ones.iter().map(|o| full & !o).collect();
        (cols, ones, vars)
    }

    #[test]
    fn identity_is_labelable() {
        let (cols, ones, vars) = masks(&["10", "01"]);
        let p = LabelingProblem::new(cols, ones, vars, vec![0, 1]);
        let l = p.solve().unwrap();
        assert!(p.is_valid(&l));
        assert_eq!(l.label(0, 1), Some(Entry::R));
        assert_eq!(l.label(1, 0), Some(Entry::C));
    }

    #[test]
    fn couple_partners_of_identity() {
        let (cols, ones, vars) = masks(&["10", "01"]);
        let p = LabelingProblem::new(cols, ones, vars, vec![0, 1]);
        assert_eq!(p.partners(0, 1), &[(1, 0)]);
    }

    #[test]
    fn odd_couple_cycle_has_no_labeling() {
        // complement of a perfect matching on 3+3: zeros on the diagonal
        // form a triangle of couples.
        let (cols, ones, vars) = masks(&["011", "101", "110"]);
        let p = LabelingProblem::new(cols, ones, vars, vec![0, 1, 2]);
        assert!(p.solve().is_none());
    }
}
