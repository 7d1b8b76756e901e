//! Recognition of interval graphs, interval bigraphs and probe interval
//! graphs from their matrices, with checkable certificates and brute-force
//! oracles for small instances.

pub mod bigraph;
pub mod certificate;
pub mod cli;
pub mod error;
pub mod ferrers;
pub mod graph;
pub mod interval;
pub mod io;
pub mod matrix;
pub mod oracle;
pub mod probe;
mod rc_search;
pub mod sweep;

pub use certificate::{
    BigraphIntervals, Certificate, CertificateKind, Evidence, Interval, IntervalAssignment, ProbeCertificate,
    ProbeRoute, Verdict, Witness, ZeroPos,
};
pub use error::{Error, Result};
pub use graph::{augmented_adjacency, build_graph, probe_bigraph, symmetric_bigraph_b1, Graph};
pub use matrix::{Entry, LabeledMatrix, LineId};
