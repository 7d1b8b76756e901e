//! Command-line front end. Exit codes: 0 yes, 1 no, 2 error or
//! disagreement between routes.

use std::io::Write;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use crate::bigraph::{
    diagonalize_with, find_rc_partition, forced_labeling, is_interval_bigraph, represent, DiagonalizationMethod,
};
use crate::certificate::{ProbeCertificate, Verdict};
use crate::error::{Error, Result};
use crate::ferrers::{ferrers_dim_le_2, interval_iff_dim2, probe_dim3_decomposition};
use crate::graph::Graph;
use crate::interval::is_interval_graph;
use crate::io::{
    emit_certificate, emit_factorization, emit_json, emit_matrix, emit_probe_certificates, emit_representation,
    parse_input, read_source, Input, InputFormat, OutputFormat,
};
use crate::matrix::Entry;
use crate::oracle::interval_split_check;
use crate::probe::{recognize_char1, recognize_char2, recognize_qxl};
use crate::sweep::compare;

pub const EXIT_YES: i32 = 0;
pub const EXIT_NO: i32 = 1;
pub const EXIT_ERROR: i32 = 2;

#[derive(Parser, Debug)]
#[command(name = "intervalcert", version, about = "Certified recognition of interval graphs, interval bigraphs and probe interval graphs")]
struct Cli {
    /// Output format.
    #[arg(long, global = true, value_enum, default_value = "json")]
    format: OutputFormat,
    /// Input format; `auto` detects JSON, edge lists and matrix text.
    #[arg(long, global = true, value_enum, default_value = "auto")]
    input_format: InputFormat,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug)]
struct Source {
    /// Input file, or `-` for standard input.
    input: String,
    /// Nonprobe vertices (comma separated); replaces any set given in the input.
    #[arg(long, value_delimiter = ',')]
    nonprobes: Option<Vec<String>>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Route {
    Qxl,
    Char1,
    Char2,
    All,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Interval graph recognition.
    Interval(Source),
    /// Interval bigraph recognition of a matrix (or of a graph's probe bigraph).
    Bigraph(Source),
    /// Probe interval graph recognition.
    Probe {
        #[command(flatten)]
        source: Source,
        #[arg(long, value_enum, default_value = "all")]
        route: Route,
    },
    /// Diagonalized form of an R-C partition.
    Diagonalize {
        #[command(flatten)]
        source: Source,
        /// Insert one line per original line instead of pairing.
        #[arg(long)]
        easy: bool,
    },
    /// Diagonalization plus interval tables.
    Represent(Source),
    /// Ferrers-dimension certificates.
    Ferrers {
        #[command(flatten)]
        source: Source,
        #[arg(long, conflicts_with = "dim3", required_unless_present = "dim3")]
        dim2: bool,
        #[arg(long)]
        dim3: bool,
    },
    /// Interval split graph check (independent set plus interval remainder).
    SplitCheck(Source),
    /// Cross-check all recognizers against the oracles.
    OracleCompare {
        #[arg(long, default_value_t = 4)]
        max_n: usize,
    },
}

fn exit_for(v: Verdict) -> i32 {
    if v.is_yes() {
        EXIT_YES
    } else {
        EXIT_NO
    }
}

impl Source {
    fn load(&self, format: InputFormat) -> Result<Input> {
        let input = parse_input(&read_source(&self.input)?, format)?;
        match (&self.nonprobes, input) {
            (None, input) => Ok(input),
            (Some(np), input) => {
                let g = input.into_graph()?;
                let idx = np
                    .iter()
                    .map(|name| g.index_of(name).ok_or_else(|| Error::MissingVertex(name.clone())))
                    .collect::<Result<Vec<_>>>()?;
                Ok(Input::Graph(g.with_nonprobes(&idx)?))
            }
        }
    }

    fn graph(&self, format: InputFormat) -> Result<Graph> {
        self.load(format)?.into_graph()
    }
}

#[derive(Serialize)]
struct SplitVerdict {
    verdict: Verdict,
}

fn run_command(cli: &Cli, out: &mut dyn Write) -> Result<i32> {
    let fmt = cli.format;
    let inf = cli.input_format;
    let mut emit = |s: String| out.write_all(s.as_bytes()).map_err(|e| Error::Internal(e.to_string()));
    match &cli.command {
        Command::Interval(src) => {
            let g = src.graph(inf)?;
            let cert = is_interval_graph(&g)?;
            emit(emit_certificate(&cert, Some(&g), fmt))?;
            Ok(exit_for(cert.verdict))
        }
        Command::Bigraph(src) => {
            let m = src.load(inf)?.into_matrix()?;
            let cert = is_interval_bigraph(&m)?;
            emit(emit_certificate(&cert, None, fmt))?;
            Ok(exit_for(cert.verdict))
        }
        Command::Probe { source, route } => {
            let g = source.graph(inf)?;
            g.require_nonprobes()?;
            let certs: Vec<ProbeCertificate> = match route {
                Route::Qxl => vec![recognize_qxl(&g)?],
                Route::Char1 => vec![recognize_char1(&g)?],
                Route::Char2 => vec![recognize_char2(&g)?],
                Route::All => vec![recognize_qxl(&g)?, recognize_char1(&g)?, recognize_char2(&g)?],
            };
            emit(emit_probe_certificates(&certs, &g, fmt))?;
            if certs.iter().any(|c| c.verdict != certs[0].verdict) {
                return Err(Error::Internal("probe routes disagree".into()));
            }
            Ok(exit_for(certs[0].verdict))
        }
        Command::Diagonalize { source, easy } => {
            let m = source.load(inf)?.into_matrix()?;
            let labeled = if m.all_in(&[Entry::One, Entry::Zero]) {
                let rows: Vec<usize> = (0..m.nrows()).collect();
                let cols: Vec<usize> = (0..m.ncols()).collect();
                match forced_labeling(&m, &rows, &cols) {
                    Ok(l) => l,
                    Err(Error::LabelConflict(..)) => match find_rc_partition(&m)?.evidence.labeling {
                        Some(l) => l,
                        None => {
                            emit(emit_certificate(&find_rc_partition(&m)?, None, fmt))?;
                            return Ok(EXIT_NO);
                        }
                    },
                    Err(e) => return Err(e),
                }
            } else {
                m
            };
            let method = if *easy { DiagonalizationMethod::Easy } else { DiagonalizationMethod::Reduced };
            emit(emit_matrix(&diagonalize_with(&labeled, method)?, fmt))?;
            Ok(EXIT_YES)
        }
        Command::Represent(src) => {
            let m = src.load(inf)?.into_matrix()?;
            match represent(&m)? {
                Some(rep) => {
                    emit(emit_representation(&rep, fmt))?;
                    Ok(EXIT_YES)
                }
                None => {
                    emit(emit_certificate(&find_rc_partition(&m)?, None, fmt))?;
                    Ok(EXIT_NO)
                }
            }
        }
        Command::Ferrers { source, dim3, .. } => {
            let input = source.load(inf)?;
            if *dim3 {
                let g = input.into_graph()?;
                let cert = recognize_char1(&g)?;
                let Some(ia) = cert.intervals.as_ref().filter(|_| cert.is_yes()) else {
                    emit(emit_probe_certificates(&[cert], &g, fmt))?;
                    return Ok(EXIT_NO);
                };
                emit(emit_factorization(&probe_dim3_decomposition(&g, ia)?, fmt))?;
                return Ok(EXIT_YES);
            }
            match input {
                Input::Graph(g) => {
                    let cert = interval_iff_dim2(&g)?;
                    emit(emit_certificate(&cert, Some(&g), fmt))?;
                    if cert.evidence.cross_check.is_some_and(|v| v != cert.verdict) {
                        return Err(Error::Internal("dimension test and interval recognition disagree".into()));
                    }
                    Ok(exit_for(cert.verdict))
                }
                Input::Matrix(m) => {
                    let cert = ferrers_dim_le_2(&m)?;
                    emit(emit_certificate(&cert, None, fmt))?;
                    Ok(exit_for(cert.verdict))
                }
            }
        }
        Command::SplitCheck(src) => {
            let g = src.graph(inf)?;
            let verdict = Verdict::from_bool(interval_split_check(&g)?);
            emit(emit_json(&SplitVerdict { verdict }))?;
            Ok(exit_for(verdict))
        }
        Command::OracleCompare { max_n } => {
            let report = compare(*max_n)?;
            emit(emit_json(&report))?;
            Ok(if report.is_clean() { EXIT_YES } else { EXIT_ERROR })
        }
    }
}

/// Parses `argv` (program name first), runs the command and returns the exit
/// code. Errors go to `err`.
pub fn run<I, T>(argv: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_ERROR } else { EXIT_YES };
            let text = e.render().to_string();
            let _ = if e.use_stderr() { err.write_all(text.as_bytes()) } else { out.write_all(text.as_bytes()) };
            return code;
        }
    };
    match run_command(&cli, out) {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            EXIT_ERROR
        }
    }
}

/// [`run`] on the process's standard streams.
pub fn dispatch<I, T>(argv: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let stdout = std::io::stdout();
    let stderr = std::io::stderr();
    run(argv, &mut stdout.lock(), &mut stderr.lock())
}
