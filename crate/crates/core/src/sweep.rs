//! Exhaustive comparison of the recognizers against the oracles over all
//! small labeled graphs.

use serde::Serialize;

use crate::certificate::{ProbeCertificate, Verdict};
use crate::error::{Error, Result};
use crate::ferrers::interval_iff_dim2;
use crate::graph::Graph;
use crate::interval::is_interval_graph;
use crate::oracle::{enumerate_graphs, interval_oracle, probe_oracle, MAX_PROBE_ORACLE};
use crate::probe::{recognize_char1, recognize_char2, recognize_qxl};

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct CompareReport {
    pub max_n: usize,
    pub graphs: u64,
    pub probe_instances: u64,
    pub disagreements: Vec<String>,
}

impl CompareReport {
    pub fn is_clean(&self) -> bool {
        self.disagreements.is_empty()
    }
}

fn describe(g: &Graph) -> String {
    let edges: Vec<String> = g.edges().iter().map(|&(u, v)| format!("{u}-{v}")).collect();
    let np: Vec<String> = g.nonprobes().unwrap_or_default().iter().map(|v| v.to_string()).collect();
    format!("n={} E={{{}}} N={{{}}}", g.n(), edges.join(","), np.join(","))
}

/// Every graph with `1..=max_n` vertices and every independent nonprobe set.
/// `on_probe` sees each probe instance with the oracle verdict and the three
/// route certificates (qxl, char1, char2).
pub fn sweep(max_n: usize, mut on_probe: impl FnMut(&Graph, bool, &[ProbeCertificate])) -> Result<CompareReport> {
    if max_n > MAX_PROBE_ORACLE {
        return Err(Error::TooLarge { size: max_n, limit: MAX_PROBE_ORACLE });
    }
    let mut report = CompareReport { max_n, ..Default::default() };
    for n in 1..=max_n {
        for g in enumerate_graphs(n)? {
            report.graphs += 1;
            compare_interval(&g, &mut report)?;
            let adj = g.adjacency_masks()?;
            for set in 0u64..1 << n {
                if (0..n).any(|v| set >> v & 1 == 1 && adj[v] & set != 0) {
                    continue;
                }
                let members: Vec<usize> = (0..n).filter(|&v| set >> v & 1 == 1).collect();
                let h = g.with_nonprobes(&members)?;
                report.probe_instances += 1;
                let oracle = probe_oracle(&h)?;
                let certs = [recognize_qxl(&h)?, recognize_char1(&h)?, recognize_char2(&h)?];
                if certs.iter().any(|c| c.verdict != Verdict::from_bool(oracle)) {
                    let got: Vec<String> = certs.iter().map(|c| format!("{:?}={:?}", c.route, c.verdict)).collect();
                    report.disagreements.push(format!("probe {}: oracle={oracle} {}", describe(&h), got.join(" ")));
                }
                on_probe(&h, oracle, &certs);
            }
        }
    }
    Ok(report)
}

fn compare_interval(g: &Graph, report: &mut CompareReport) -> Result<()> {
    let oracle = interval_oracle(g)?;
    let recognized = is_interval_graph(g)?.verdict;
    let dim2 = interval_iff_dim2(g)?.verdict;
    let expected = Verdict::from_bool(oracle);
    if recognized != expected || dim2 != expected {
        report
            .disagreements
            .push(format!("interval {}: oracle={oracle} quasi-linear={recognized:?} dim2={dim2:?}", describe(g)));
    }
    Ok(())
}

/// [`sweep`] without a per-instance hook.
pub fn compare(max_n: usize) -> Result<CompareReport> {
    sweep(max_n, |_, _, _| {})
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_sweep_is_clean() {
        let report = compare(4).unwrap();
        assert!(report.is_clean(), "{:?}", report.disagreements);
        assert_eq!(report.graphs, 1 + 2 + 8 + 64);
    }

    #[test]
    fn sweep_limit() {
        assert!(compare(7).is_err());
    }
}
