//! Intervals, interval assignments and the certificates every recognizer
//! returns.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::bigraph::DiagonalizationMethod;
use crate::error::{Error, Result};
use crate::ferrers::FerrersFactorization;
use crate::matrix::{LabeledMatrix, LineId};

/// Closed integer interval `[lo, hi]` with `lo <= hi`. Serialized as `[lo, hi]`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(into = "(i64, i64)", try_from = "(i64, i64)")]
pub struct Interval {
    lo: i64,
    hi: i64,
}

impl Interval {
    pub fn new(lo: i64, hi: i64) -> Result<Interval> {
        if lo > hi {
            return Err(Error::InvalidInterval(lo, hi));
        }
        Ok(Interval { lo, hi })
    }

    pub fn lo(self) -> i64 {
        self.lo
    }

    pub fn hi(self) -> i64 {
        self.hi
    }

    pub fn intersects(self, other: Interval) -> bool {
        self.lo <= other.hi && other.lo <= self.hi
    }

    pub fn shifted(self, by: i64) -> Interval {
        Interval { lo: self.lo + by, hi: self.hi + by }
    }
}

impl From<Interval> for (i64, i64) {
    fn from(iv: Interval) -> Self {
        (iv.lo, iv.hi)
    }
}

impl TryFrom<(i64, i64)> for Interval {
    type Error = Error;

    fn try_from((lo, hi): (i64, i64)) -> Result<Interval> {
        Interval::new(lo, hi)
    }
}

impl std::fmt::Display for Interval {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "[{},{}]", self.lo, self.hi)
    }
}

/// Vertex name to interval.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct IntervalAssignment(BTreeMap<String, Interval>);

impl IntervalAssignment {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn insert(&mut self, vertex: impl Into<String>, iv: Interval) {
        self.0.insert(vertex.into(), iv);
    }

    pub fn get(&self, vertex: &str) -> Option<Interval> {
        self.0.get(vertex).copied()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&str, Interval)> {
        self.0.iter().map(|(k, &v)| (k.as_str(), v))
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }
}

impl FromIterator<(String, Interval)> for IntervalAssignment {
    fn from_iter<I: IntoIterator<Item = (String, Interval)>>(iter: I) -> Self {
        IntervalAssignment(iter.into_iter().collect())
    }
}

/// Interval representation of a bigraph, one interval per row and column,
/// in matrix order.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BigraphIntervals {
    pub rows: Vec<(LineId, Interval)>,
    pub cols: Vec<(LineId, Interval)>,
}

impl BigraphIntervals {
    pub fn row(&self, id: &LineId) -> Option<Interval> {
        self.rows.iter().find(|(r, _)| r == id).map(|&(_, iv)| iv)
    }

    pub fn col(&self, id: &LineId) -> Option<Interval> {
        self.cols.iter().find(|(c, _)| c == id).map(|&(_, iv)| iv)
    }

    /// Drops intervals of synthetic lines.
    pub fn strip_synthetic(&self) -> BigraphIntervals {
        BigraphIntervals {
            rows: self.rows.iter().filter(|(r, _)| !r.is_synthetic()).cloned().collect(),
            cols: self.cols.iter().filter(|(c, _)| !c.is_synthetic()).cloned().collect(),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Verdict {
    Yes,
    No,
}

impl Verdict {
    pub fn from_bool(b: bool) -> Verdict {
        if b {
            Verdict::Yes
        } else {
            Verdict::No
        }
    }

    pub fn is_yes(self) -> bool {
        self == Verdict::Yes
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum CertificateKind {
    Interval,
    IntervalBigraph,
    ProbeIntervalChar1,
    ProbeIntervalChar2,
    QuasiXLinear,
    FerrersDim,
}

/// A zero position `(row, col)` of a matrix, by line id.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ZeroPos {
    pub row: LineId,
    pub col: LineId,
}

/// Negative evidence.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "kebab-case")]
pub enum Witness {
    /// Closed walk of couples with odd length; consecutive positions (and the
    /// last and first) form couples.
    OddCycle { positions: Vec<ZeroPos> },
    /// Probe rows `p`, `q` and nonprobe column `n` forming the forbidden
    /// `1 1 R / 1 1 C` pattern.
    ForbiddenSubmatrix { p: String, q: String, n: String },
    /// The search space was exhausted without finding a certificate.
    Exhausted,
}

/// Positive evidence. Which fields are present depends on the certificate kind.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Evidence {
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub order: Option<Vec<String>>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub row_order: Option<Vec<LineId>>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub col_order: Option<Vec<LineId>>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub labeling: Option<LabeledMatrix>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub diagonalization: Option<DiagonalizationMethod>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub intervals: Option<IntervalAssignment>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub bigraph_intervals: Option<BigraphIntervals>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub factors: Option<FerrersFactorization>,
    /// Verdict of an independent recognizer for the same question.
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub cross_check: Option<Verdict>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Certificate {
    pub verdict: Verdict,
    pub kind: CertificateKind,
    #[serde(flatten)]
    pub evidence: Evidence,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub witness: Option<Witness>,
}

impl Certificate {
    pub fn yes(kind: CertificateKind, evidence: Evidence) -> Certificate {
        Certificate { verdict: Verdict::Yes, kind, evidence, witness: None }
    }

    pub fn no(kind: CertificateKind, witness: Witness) -> Certificate {
        Certificate { verdict: Verdict::No, kind, evidence: Evidence::default(), witness: Some(witness) }
    }

    pub fn is_yes(&self) -> bool {
        self.verdict.is_yes()
    }
}

/// Which probe-interval characterization produced a certificate.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ProbeRoute {
    Qxl,
    Char1,
    Char2,
}

impl ProbeRoute {
    pub const ALL: [ProbeRoute; 3] = [ProbeRoute::Qxl, ProbeRoute::Char1, ProbeRoute::Char2];
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ProbeCertificate {
    pub verdict: Verdict,
    pub route: ProbeRoute,
    pub nonprobes: Vec<String>,
    /// Symmetric vertex order (qxl route).
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub order: Option<Vec<String>>,
    /// Aligned R-C partition of the probe bigraph (char1 / char2 routes).
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub labeling: Option<LabeledMatrix>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub intervals: Option<IntervalAssignment>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub witness: Option<Witness>,
    /// Set when the probe bigraph itself is not an interval bigraph.
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub bigraph_witness: Option<Witness>,
}

impl ProbeCertificate {
    pub fn is_yes(&self) -> bool {
        self.verdict.is_yes()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn interval_rejects_reversed_bounds() {
        assert!(Interval::new(3, 2).is_err());
        assert!(serde_json::from_str::<Interval>("[3,2]").is_err());
        let iv: Interval = serde_json::from_str("[1,4]").unwrap();
        assert_eq!(iv, Interval::new(1, 4).unwrap());
    }

    #[test]
    fn intersection_is_closed() {
        let a = Interval::new(1, 2).unwrap();
        assert!(a.intersects(Interval::new(2, 5).unwrap()));
        assert!(!a.intersects(Interval::new(3, 5).unwrap()));
    }

    #[test]
    fn certificate_json_shape() {
        let mut ia = IntervalAssignment::new();
        ia.insert("a", Interval::new(1, 2).unwrap());
        let cert = Certificate::yes(
            CertificateKind::Interval,
            Evidence { order: Some(vec!["a".into()]), intervals: Some(ia), ..Default::default() },
        );
        let json = serde_json::to_string(&cert).unwrap();
        assert_eq!(json, r#"{"verdict":"yes","kind":"interval","order":["a"],"intervals":{"a":[1,2]}}"#);
        let back: Certificate = serde_json::from_str(&json).unwrap();
        assert_eq!(back, cert);
    }
}
