use thiserror::Error;

/// Errors raised by graph construction, parsing and the recognizers.
#[derive(Error, Debug, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("self-loop on vertex {0}")]
    SelfLoop(String),
    #[error("duplicate edge {0}-{1}")]
    DuplicateEdge(String, String),
    #[error("empty vertex name")]
    EmptyName,
    #[error("vertex names may not start with '~': {0}")]
    ReservedName(String),
    #[error("duplicate vertex {0}")]
    DuplicateVertex(String),
    #[error("nonprobes not independent: edge {0}-{1}")]
    NonprobesNotIndependent(String, String),
    #[error("operation requires a nonprobe set but none was given")]
    MissingNonprobes,
    #[error("unknown vertex {0}")]
    MissingVertex(String),
    #[error("matrix is not symmetric at ({0}, {1})")]
    NotSymmetric(usize, usize),
    #[error("matrix is not square ({0}x{1})")]
    NotSquare(usize, usize),
    #[error("principal diagonal entry {0} is not 1")]
    DiagonalNotOne(usize),
    #[error("unresolved zero at ({0}, {1})")]
    UnresolvedZero(usize, usize),
    #[error("unexpected symbol {symbol} at ({row}, {col})")]
    UnexpectedSymbol { row: usize, col: usize, symbol: char },
    #[error("labeling conflict at ({0}, {1})")]
    LabelConflict(usize, usize),
    #[error("not a permutation of 0..{0}")]
    NotPermutation(usize),
    #[error("nonprobe block is not an identity matrix at ({0}, {1})")]
    NonprobeBlockNotIdentity(usize, usize),
    #[error("invalid interval [{0}, {1}]")]
    InvalidInterval(i64, i64),
    #[error("instance too large: {size} exceeds limit {limit}")]
    TooLarge { size: usize, limit: usize },
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("parse error at line {line}, column {col}: {msg}")]
    Parse { line: usize, col: usize, msg: String },
    #[error("internal invariant violated: {0}")]
    Internal(String),
}

pub type Result<T> = std::result::Result<T, Error>;
