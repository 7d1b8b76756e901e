//! Probe interval graphs: the quasi-x-linear route, the forbidden-submatrix
//! route over the probe bigraph, and the reduced-associated-graph route,
//! plus the interval construction shared by the last two.

use crate::bigraph::{algorithm_interval_rep, apply_labeling, check_rc_valid, diagonalize, is_interval_bigraph, problem_for};
use crate::certificate::{Interval, IntervalAssignment, ProbeCertificate, ProbeRoute, Verdict, Witness};
use crate::error::{Error, Result};
use crate::ferrers::{couple_graph, couple_graph_where, cycle_witness, CoupleGraph};
use crate::graph::{augmented_adjacency, probe_bigraph, Graph};
use crate::interval::{intervals_along, is_interval_graph, lookup_all, search_order, symmetric_masks};
use crate::matrix::{Entry, LabeledMatrix, LineId};
use crate::rc_search::{Labeling, LabelingProblem};

/// Copy of `m` with the off-diagonal cells of the `nonprobes` block set to
/// `X`. Those cells must be `0`.
pub fn mark_nonprobe_block(m: &LabeledMatrix, nonprobes: &[usize]) -> Result<LabeledMatrix> {
    symmetric_masks(m)?;
    let mut out = m.clone();
    for &u in nonprobes {
        for &v in nonprobes {
            if u == v {
                continue;
            }
            if m.get(u, v) != Entry::Zero {
                return Err(Error::NonprobeBlockNotIdentity(u, v));
            }
            out.set(u, v, Entry::X);
        }
    }
    Ok(out)
}

fn zero_before_one(cells: impl Iterator<Item = Entry>) -> bool {
    let mut gap = false;
    for e in cells {
        match e {
            Entry::Zero => gap = true,
            Entry::One if gap => return true,
            _ => {}
        }
    }
    false
}

/// Quasi-x-linear test after permuting symmetrically by `order`: right of
/// the diagonal every `0` has only `0` and `X` after it in its row, and below
/// the diagonal likewise in its column.
pub fn is_quasi_x_linear(m: &LabeledMatrix, order: &[usize], nonprobes: &[usize]) -> Result<bool> {
    let p = mark_nonprobe_block(m, nonprobes)?.symmetric_permuted(order)?;
    Ok(qxl_in_stored_order(&p))
}

fn qxl_in_stored_order(p: &LabeledMatrix) -> bool {
    let n = p.nrows();
    (0..n).all(|i| {
        !zero_before_one((i + 1..n).map(|j| p.get(i, j))) && !zero_before_one((i + 1..n).map(|k| p.get(k, i)))
    })
}

/// Resolves every `X` of a quasi-x-linear matrix (in its stored order): in
/// row `i` the `X`s right of the diagonal before the first plain `0` become
/// `1`, the rest `0`, and each cell below the diagonal copies its mirror.
pub fn x_fill(m_qxl: &LabeledMatrix) -> Result<LabeledMatrix> {
    if !m_qxl.is_square() || !m_qxl.all_in(&[Entry::One, Entry::Zero, Entry::X]) || !qxl_in_stored_order(m_qxl) {
        return Err(Error::Precondition("matrix is not quasi-x-linear in its stored order".into()));
    }
    let n = m_qxl.nrows();
    let mut out = m_qxl.clone();
    for i in 0..n {
        let first_zero = (i + 1..n).find(|&j| m_qxl.get(i, j) == Entry::Zero).unwrap_or(n);
        for j in i + 1..n {
            if m_qxl.get(i, j) == Entry::X {
                if m_qxl.get(j, i) != Entry::X {
                    return Err(Error::NotSymmetric(i, j));
                }
                let e = if j < first_zero { Entry::One } else { Entry::Zero };
                out.set(i, j, e);
                out.set(j, i, e);
            }
        }
    }
    Ok(out)
}

/// Adjacency holds for `u != v` iff the intervals meet and not both are
/// nonprobes.
pub fn verify_probe_rep(g: &Graph, ia: &IntervalAssignment) -> Result<bool> {
    g.require_nonprobes()?;
    let ivs = lookup_all(g, ia)?;
    let n = g.n();
    for u in 0..n {
        for v in u + 1..n {
            let expected = ivs[u].intersects(ivs[v]) && !(g.is_nonprobe(u) && g.is_nonprobe(v));
            if g.has_edge(u, v) != expected {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

fn names_of(g: &Graph, vs: &[usize]) -> Vec<String> {
    vs.iter().map(|&v| g.name(v).to_string()).collect()
}

fn certificate(g: &Graph, route: ProbeRoute, verdict: Verdict) -> Result<ProbeCertificate> {
    Ok(ProbeCertificate {
        verdict,
        route,
        nonprobes: names_of(g, &g.require_nonprobes()?),
        order: None,
        labeling: None,
        intervals: None,
        witness: None,
        bigraph_witness: None,
    })
}

fn checked(g: &Graph, ia: IntervalAssignment) -> Result<IntervalAssignment> {
    if !verify_probe_rep(g, &ia)? {
        return Err(Error::Internal("probe representation does not realize the graph".into()));
    }
    Ok(ia)
}

/// Searches for a symmetric order with the quasi-x-linear property; on
/// success fills the `X`s and reads intervals off the filled matrix.
pub fn recognize_qxl(g: &Graph) -> Result<ProbeCertificate> {
    let nonprobes = g.require_nonprobes()?;
    let adj = g.adjacency_masks()?;
    let np = g.nonprobe_mask();
    let free: Vec<u64> = (0..g.n()).map(|v| if g.is_nonprobe(v) { np & !(1u64 << v) } else { 0 }).collect();
    let Some(order) = search_order(&adj, &free) else {
        let mut cert = certificate(g, ProbeRoute::Qxl, Verdict::No)?;
        cert.witness = Some(Witness::Exhausted);
        return Ok(cert);
    };
    let marked = mark_nonprobe_block(&augmented_adjacency(g), &nonprobes)?.symmetric_permuted(&order)?;
    let filled = x_fill(&marked)?;
    let identity: Vec<usize> = (0..g.n()).collect();
    let ia = checked(g, intervals_along(&filled, &identity))?;
    let mut cert = certificate(g, ProbeRoute::Qxl, Verdict::Yes)?;
    cert.order = Some(names_of(g, &order));
    cert.intervals = Some(ia);
    Ok(cert)
}

/// Probe rows `p`, `q` with `1`s on the `{p, q}` block and a nonprobe column
/// `n` holding `R` in row `p` and `C` in row `q`. Only labels are inspected,
/// so the result does not depend on the line order.
pub fn scan_forbidden(
    m: &LabeledMatrix,
    probes: &[LineId],
    nonprobes: &[LineId],
) -> Option<(LineId, LineId, LineId)> {
    let rows: Vec<(usize, usize)> = probes
        .iter()
        .filter_map(|id| Some((m.row_position(id)?, m.col_position(id)?)))
        .collect();
    let cols: Vec<usize> = nonprobes.iter().filter_map(|id| m.col_position(id)).collect();
    for &(pr, pc) in &rows {
        for &(qr, qc) in &rows {
            if pr == qr {
                continue;
            }
            let block = [(pr, pc), (pr, qc), (qr, pc), (qr, qc)];
            if block.iter().any(|&(i, j)| m.get(i, j) != Entry::One) {
                continue;
            }
            if let Some(&n) = cols.iter().find(|&&n| m.get(pr, n) == Entry::R && m.get(qr, n) == Entry::C) {
                return Some((m.rows()[pr].clone(), m.rows()[qr].clone(), m.cols()[n].clone()));
            }
        }
    }
    None
}

/// Forbidden pattern search on a probe-bigraph matrix whose rows are the
/// probes and whose columns are all vertices.
fn scan_probe_matrix(m: &LabeledMatrix) -> Option<(LineId, LineId, LineId)> {
    let probes = m.rows().to_vec();
    let nonprobes: Vec<LineId> = m.cols().iter().filter(|c| !probes.contains(c)).cloned().collect();
    scan_forbidden(m, &probes, &nonprobes)
}

/// Degenerate nonprobe sets. `N = {}` is plain interval recognition; with no
/// probes the graph is edgeless and any common point works.
fn short_circuit(g: &Graph, route: ProbeRoute) -> Result<Option<ProbeCertificate>> {
    let nonprobes = g.require_nonprobes()?;
    if nonprobes.is_empty() {
        let ic = is_interval_graph(g)?;
        let mut cert = certificate(g, route, ic.verdict)?;
        cert.order = ic.evidence.order;
        cert.intervals = ic.evidence.intervals;
        cert.witness = ic.witness;
        return Ok(Some(cert));
    }
    if nonprobes.len() == g.n() {
        let point = Interval::new(1, 1)?;
        let ia = (0..g.n()).map(|v| (g.name(v).to_string(), point)).collect();
        let mut cert = certificate(g, route, Verdict::Yes)?;
        cert.intervals = Some(checked(g, ia)?);
        return Ok(Some(cert));
    }
    Ok(None)
}

/// Witness for a probe bigraph that is not an interval bigraph: an odd
/// couple cycle when there is one.
fn bigraph_failure(b: &LabeledMatrix) -> Result<Option<Witness>> {
    if is_interval_bigraph(b)?.is_yes() {
        return Ok(None);
    }
    let cg = couple_graph(b)?;
    Ok(Some(match cg.two_coloring() {
        Err(cycle) => cycle_witness(b, &cg, &cycle),
        Ok(_) => Witness::Exhausted,
    }))
}

/// R-C labeling of the probe bigraph without the forbidden pattern, found by
/// search; the matrix is then aligned and turned into intervals.
pub fn recognize_char1(g: &Graph) -> Result<ProbeCertificate> {
    if let Some(cert) = short_circuit(g, ProbeRoute::Char1)? {
        return Ok(cert);
    }
    recognize_char1_general(g)
}

fn char1_problem(g: &Graph, b: &LabeledMatrix) -> Result<LabelingProblem> {
    let probes = g.probes();
    let nonprobes = g.require_nonprobes()?;
    let mut forbidden = Vec::new();
    for (pi, &p) in probes.iter().enumerate() {
        for (qi, &q) in probes.iter().enumerate() {
            if p == q || !g.has_edge(p, q) {
                continue;
            }
            for &n in &nonprobes {
                if b.get(pi, n) == Entry::Zero && b.get(qi, n) == Entry::Zero {
                    forbidden.push((pi, qi, n));
                }
            }
        }
    }
    Ok(problem_for(b)?.with_forbidden(forbidden))
}

fn recognize_char1_general(g: &Graph) -> Result<ProbeCertificate> {
    let b = probe_bigraph(g)?;
    let problem = char1_problem(g, &b)?;
    match problem.solve() {
        Some(labeling) => {
            let (labeled, _, _) = apply_labeling(&b, &problem, &labeling)?;
            finish_yes(g, ProbeRoute::Char1, &labeled)
        }
        None => {
            let mut cert = certificate(g, ProbeRoute::Char1, Verdict::No)?;
            cert.witness = Some(Witness::Exhausted);
            cert.bigraph_witness = bigraph_failure(&b)?;
            Ok(cert)
        }
    }
}

fn finish_yes(g: &Graph, route: ProbeRoute, labeled: &LabeledMatrix) -> Result<ProbeCertificate> {
    if let Some((p, q, n)) = scan_probe_matrix(labeled) {
        return Err(Error::Internal(format!("labeling contains the forbidden pattern at {p},{q},{n}")));
    }
    let aligned = align_probe_columns(labeled)?;
    let ia = checked(g, probe_representation(&aligned)?)?;
    let mut cert = certificate(g, route, Verdict::Yes)?;
    cert.labeling = Some(aligned);
    cert.intervals = Some(ia);
    Ok(cert)
}

/// Reorders the columns of a pattern-free R-C partition of the probe bigraph
/// so the probe columns follow the row order.
///
/// Works like a bubble sort on the probe columns: when `q`'s column lies
/// before `p`'s but `p`'s row lies before `q`'s, `q`'s column is moved to just
/// right of `p`'s. Each move keeps the labels and is re-validated.
pub fn align_probe_columns(m: &LabeledMatrix) -> Result<LabeledMatrix> {
    if !check_rc_valid(m)? {
        return Err(Error::Precondition("matrix is not an R-C partition".into()));
    }
    if scan_probe_matrix(m).is_some() {
        return Err(Error::Precondition("matrix contains the forbidden pattern".into()));
    }
    let row_rank = |id: &LineId| m.row_position(id);
    let mut cols: Vec<usize> = (0..m.ncols()).collect();
    let mut current = m.clone();
    loop {
        let probe_slots: Vec<usize> =
            (0..cols.len()).filter(|&s| row_rank(&m.cols()[cols[s]]).is_some()).collect();
        let inversion = probe_slots.windows(2).find(|w| {
            let q = row_rank(&m.cols()[cols[w[0]]]).expect("probe");
            let p = row_rank(&m.cols()[cols[w[1]]]).expect("probe");
            p < q
        });
        let Some(w) = inversion else { break };
        let (q_slot, p_slot) = (w[0], w[1]);
        let q = cols.remove(q_slot);
        cols.insert(p_slot, q);
        let rows: Vec<usize> = (0..m.nrows()).collect();
        current = m.permuted(&rows, &cols)?;
        if !check_rc_valid(&current)? {
            return Err(Error::Internal("column shift broke the R-C partition".into()));
        }
    }
    Ok(current)
}

/// Probe and nonprobe intervals from an aligned pattern-free R-C partition.
///
/// Each probe gets the sum of its row and column intervals from the
/// diagonalized matrix. A nonprobe column gets `[l, r]` where `l` is one more
/// than the largest right end of a probe with `R` in that column (else `0`)
/// and `r` is one less than the smallest left end of a probe with `C` there
/// (else one more than every probe right end).
pub fn probe_representation(m_aligned: &LabeledMatrix) -> Result<IntervalAssignment> {
    let probes: Vec<LineId> = m_aligned.rows().to_vec();
    let probe_cols: Vec<&LineId> = m_aligned.cols().iter().filter(|c| probes.contains(c)).collect();
    if probe_cols.len() != probes.len() || probe_cols.iter().zip(&probes).any(|(c, r)| *c != r) {
        return Err(Error::Precondition("probe columns are not aligned with the rows".into()));
    }
    let rep = algorithm_interval_rep(&diagonalize(m_aligned)?)?;
    let mut probe_ivs = Vec::with_capacity(probes.len());
    for id in &probes {
        let (Some(row), Some(col)) = (rep.row(id), rep.col(id)) else {
            return Err(Error::MissingVertex(id.to_string()));
        };
        probe_ivs.push(Interval::new(row.lo() + col.lo(), row.hi() + col.hi())?);
    }
    let infinity = probe_ivs.iter().map(|iv| iv.hi()).max().unwrap_or(0) + 1;
    let mut ia: IntervalAssignment = probes.iter().map(|id| id.to_string()).zip(probe_ivs.iter().copied()).collect();
    for (j, id) in m_aligned.cols().iter().enumerate() {
        if probes.contains(id) {
            continue;
        }
        let column = |e: Entry| (0..probes.len()).filter(move |&i| m_aligned.get(i, j) == e);
        let l = column(Entry::R).map(|i| probe_ivs[i].hi() + 1).max().unwrap_or(0);
        let r = column(Entry::C).map(|i| probe_ivs[i].lo() - 1).min().unwrap_or(infinity);
        ia.insert(id.to_string(), Interval::new(l, r)?);
    }
    let realized = m_aligned.entries().all(|(i, j, e)| {
        let col_iv = ia.get(&m_aligned.cols()[j].to_string()).expect("every column assigned");
        (e == Entry::One) == probe_ivs[i].intersects(col_iv)
    });
    if !realized {
        return Err(Error::Internal("probe representation does not realize the probe bigraph".into()));
    }
    Ok(ia)
}

/// Couple graph of the augmented adjacency matrix without the zeros of the
/// nonprobe block.
pub fn reduced_associated_graph(g: &Graph) -> Result<CoupleGraph> {
    g.require_nonprobes()?;
    Ok(couple_graph_where(&augmented_adjacency(g), |i, j| !(g.is_nonprobe(i) && g.is_nonprobe(j))))
}

/// Checks the probe bigraph is an interval bigraph, then searches the
/// colorings of the reduced associated graph for one whose probe rows form
/// an R-C partition.
pub fn recognize_char2(g: &Graph) -> Result<ProbeCertificate> {
    if let Some(cert) = short_circuit(g, ProbeRoute::Char2)? {
        return Ok(cert);
    }
    recognize_char2_general(g)
}

fn recognize_char2_general(g: &Graph) -> Result<ProbeCertificate> {
    let b = probe_bigraph(g)?;
    let no = |witness: Witness, bigraph_witness: Option<Witness>| -> Result<ProbeCertificate> {
        let mut cert = certificate(g, ProbeRoute::Char2, Verdict::No)?;
        cert.witness = Some(witness);
        cert.bigraph_witness = bigraph_witness;
        Ok(cert)
    };
    if let Some(w) = bigraph_failure(&b)? {
        return no(Witness::Exhausted, Some(w));
    }
    let a = augmented_adjacency(g);
    let h1 = reduced_associated_graph(g)?;
    if let Err(cycle) = h1.two_coloring() {
        return no(cycle_witness(&a, &h1, &cycle), None);
    }
    let n = g.n();
    let np = g.nonprobe_mask();
    let ones: Vec<u64> = (0..n).map(|i| a.row_mask(i, Entry::One)).collect();
    let vars: Vec<u64> = (0..n)
        .map(|i| {
            let zeros = a.row_mask(i, Entry::Zero);
            if g.is_nonprobe(i) {
                zeros & !np
            } else {
                zeros
            }
        })
        .collect();
    let probes = g.probes();
    let problem = LabelingProblem::new(n, ones, vars, probes.clone());
    let Some(full) = problem.solve() else {
        return no(Witness::Exhausted, None);
    };
    for &p in &probes {
        for n_ in g.require_nonprobes()? {
            if let (Some(pn), Some(np_)) = (full.label(p, n_), full.label(n_, p)) {
                if pn == np_ {
                    return Err(Error::Internal("coloring breaks the nonprobe mirror rule".into()));
                }
            }
        }
    }
    let restricted = Labeling {
        r: probes.iter().map(|&p| full.r[p]).collect(),
        c: probes.iter().map(|&p| full.c[p]).collect(),
    };
    let b_problem = problem_for(&b)?;
    if !b_problem.is_valid(&restricted) {
        return Err(Error::Internal("restricted coloring is not an R-C labeling of the probe bigraph".into()));
    }
    let (labeled, _, _) = apply_labeling(&b, &b_problem, &restricted)?;
    finish_yes(g, ProbeRoute::Char2, &labeled)
}

/// All three routes; errors when they disagree.
pub fn recognize_all(g: &Graph) -> Result<Vec<ProbeCertificate>> {
    let certs = vec![recognize_qxl(g)?, recognize_char1(g)?, recognize_char2(g)?];
    if certs.iter().any(|c| c.verdict != certs[0].verdict) {
        let verdicts: Vec<String> = certs.iter().map(|c| format!("{:?}={:?}", c.route, c.verdict)).collect();
        return Err(Error::Internal(format!("probe routes disagree: {}", verdicts.join(", "))));
    }
    Ok(certs)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::build_graph;

    fn example(nonprobes: &[&str]) -> Graph {
        let edges = [("a", "b"), ("b", "c"), ("b", "d"), ("c", "d"), ("c", "e"), ("d", "f")];
        Graph::build(&["a", "b", "c", "d", "e", "f"], &edges, Some(nonprobes)).unwrap()
    }

    fn c4(nonprobes: &[&str]) -> Graph {
        build_graph(&[("a", "b"), ("b", "c"), ("c", "d"), ("d", "a")], Some(nonprobes)).unwrap()
    }

    #[test]
    fn c4_order_with_x_block() {
        let g = c4(&["b", "d"]);
        let m = augmented_adjacency(&g);
        // a b d c
        assert!(is_quasi_x_linear(&m, &[0, 1, 3, 2], &[1, 3]).unwrap());
        assert!(!is_quasi_x_linear(&m, &[0, 1, 3, 2], &[]).unwrap());
    }

    #[test]
    fn x_fill_adds_the_chord() {
        let g = c4(&["b", "d"]);
        let marked = mark_nonprobe_block(&augmented_adjacency(&g), &[1, 3]).unwrap().symmetric_permuted(&[0, 1, 3, 2]).unwrap();
        let filled = x_fill(&marked).unwrap();
        let chord = augmented_adjacency(&g.without_nonprobes().with_extra_edges(&[(1, 3)]))
            .symmetric_permuted(&[0, 1, 3, 2])
            .unwrap();
        assert_eq!(filled, chord);
    }

    #[test]
    fn x_fill_without_x_is_identity() {
        let m = LabeledMatrix::from_rows(&["110", "111", "011"]).unwrap();
        assert_eq!(x_fill(&m).unwrap(), m);
    }

    #[test]
    fn x_fill_edgeless_all_nonprobes_gives_complete_graph() {
        let g = Graph::build(&["a", "b", "c"], &[], Some(&["a", "b", "c"][..])).unwrap();
        let marked = mark_nonprobe_block(&augmented_adjacency(&g), &[0, 1, 2]).unwrap();
        let filled = x_fill(&marked).unwrap();
        assert!(filled.entries().all(|(_, _, e)| e == Entry::One));
    }

    #[test]
    fn dependent_nonprobes_are_rejected_by_marking() {
        let m = augmented_adjacency(&build_graph(&[("a", "b")], None).unwrap());
        assert_eq!(mark_nonprobe_block(&m, &[0, 1]).unwrap_err(), Error::NonprobeBlockNotIdentity(0, 1));
    }

    #[test]
    fn c4_is_probe_interval_all_routes() {
        let g = c4(&["b", "d"]);
        for cert in recognize_all(&g).unwrap() {
            assert!(cert.is_yes(), "{:?}", cert.route);
            assert!(verify_probe_rep(&g, cert.intervals.as_ref().unwrap()).unwrap());
        }
    }

    #[test]
    fn example_with_e_f_is_not_probe_interval() {
        let g = example(&["e", "f"]);
        for cert in recognize_all(&g).unwrap() {
            assert!(!cert.is_yes(), "{:?}", cert.route);
            assert_eq!(cert.bigraph_witness, None);
        }
        let m = augmented_adjacency(&g);
        for perm in itertools::Itertools::permutations(0..6, 6) {
            assert!(!is_quasi_x_linear(&m, &perm, &[4, 5]).unwrap());
        }
    }

    #[test]
    fn example_with_b_e_f_is_probe_interval() {
        let g = example(&["b", "e", "f"]);
        for cert in recognize_all(&g).unwrap() {
            assert!(cert.is_yes(), "{:?}", cert.route);
        }
    }

    #[test]
    fn forbidden_pattern_detected() {
        let m = LabeledMatrix::from_rows(&["11R", "11C"])
            .unwrap()
            .with_ids(
                vec![LineId::vertex("p"), LineId::vertex("q")],
                vec![LineId::vertex("p"), LineId::vertex("q"), LineId::vertex("n")],
            )
            .unwrap();
        let hit = scan_forbidden(&m, &m.rows().to_vec(), &[LineId::vertex("n")]);
        assert_eq!(hit, Some((LineId::vertex("p"), LineId::vertex("q"), LineId::vertex("n"))));
        let swapped = m.permuted(&[1, 0], &[2, 1, 0]).unwrap();
        assert_eq!(scan_forbidden(&swapped, &m.rows().to_vec(), &[LineId::vertex("n")]), hit);
    }

    #[test]
    fn single_nonprobe_column_of_c_has_no_pattern() {
        let m = LabeledMatrix::from_rows(&["11C", "11C"])
            .unwrap()
            .with_ids(
                vec![LineId::vertex("p"), LineId::vertex("q")],
                vec![LineId::vertex("p"), LineId::vertex("q"), LineId::vertex("n")],
            )
            .unwrap();
        assert_eq!(scan_forbidden(&m, &m.rows().to_vec(), &[LineId::vertex("n")]), None);
    }

    #[test]
    fn swapped_probe_columns_get_one_transposition() {
        let ids = |v: &[&str]| v.iter().map(|s| LineId::vertex(*s)).collect::<Vec<_>>();
        let m = LabeledMatrix::from_rows(&["11", "11"]).unwrap().with_ids(ids(&["p", "q"]), ids(&["q", "p"])).unwrap();
        let aligned = align_probe_columns(&m).unwrap();
        assert_eq!(aligned.cols(), &ids(&["p", "q"])[..]);
    }

    #[test]
    fn single_probe_single_nonprobe() {
        let g = build_graph(&[("p", "n")], Some(&["n"][..])).unwrap();
        let cert = recognize_char1(&g).unwrap();
        assert!(cert.is_yes());
        let ia = cert.intervals.unwrap();
        let n = ia.get("n").unwrap();
        assert_eq!(n.lo(), 0);
        assert!(n.hi() > ia.get("p").unwrap().hi());
    }

    #[test]
    fn verify_ignores_nonprobe_intersections() {
        let g = Graph::build(&["m", "n"], &[], Some(&["m", "n"][..])).unwrap();
        let mut ia = IntervalAssignment::new();
        ia.insert("m", Interval::new(1, 3).unwrap());
        ia.insert("n", Interval::new(1, 3).unwrap());
        assert!(verify_probe_rep(&g, &ia).unwrap());
        let h = build_graph(&[("p", "q")], Some(&[][..])).unwrap();
        let mut ia = IntervalAssignment::new();
        ia.insert("p", Interval::new(1, 1).unwrap());
        ia.insert("q", Interval::new(2, 2).unwrap());
        assert!(!verify_probe_rep(&h, &ia).unwrap());
    }

    #[test]
    fn reduced_associated_graph_drops_nonprobe_block() {
        let g = Graph::build(&["m", "n"], &[], Some(&["m", "n"][..])).unwrap();
        assert!(reduced_associated_graph(&g).unwrap().positions.is_empty());
        let h = c4(&[]);
        assert_eq!(reduced_associated_graph(&h).unwrap(), couple_graph(&augmented_adjacency(&h)).unwrap());
    }

    #[test]
    fn general_routes_agree_with_short_circuits_on_small_graphs() {
        for n in 1..=5usize {
            let pairs: Vec<(usize, usize)> = (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v))).collect();
            for mask in 0u32..1 << pairs.len() {
                let edges: Vec<(usize, usize)> =
                    pairs.iter().enumerate().filter(|(k, _)| mask >> k & 1 == 1).map(|(_, &e)| e).collect();
                let g = Graph::from_index_edges(n, &edges).unwrap().with_nonprobes(&[]).unwrap();
                let expected = recognize_char1(&g).unwrap().verdict;
                assert_eq!(recognize_char1_general(&g).unwrap().verdict, expected);
                assert_eq!(recognize_char2_general(&g).unwrap().verdict, expected);
            }
        }
    }
}
