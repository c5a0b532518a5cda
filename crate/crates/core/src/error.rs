use thiserror::Error;

/// Every failure the library can report.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("vertex {vertex} out of range for a graph on {n} vertices")]
    OutOfRange { vertex: usize, n: usize },
    #[error("edge list contains the self pair {{{0}, {0}}}; pass loops separately")]
    SelfPairInEdgeList(usize),
    #[error("graphs are limited to {max} vertices, got {n}")]
    SizeExceeded { n: usize, max: usize },
    #[error("malformed graph6 header: {0}")]
    MalformedHeader(String),
    #[error("graph6 body has {found} bytes, expected {expected}")]
    TruncatedBitVector { expected: usize, found: usize },
    #[error("graph6 padding bits are not zero")]
    NonCanonicalPadding,
    #[error("byte {0:#04x} is outside the printable graph6 range")]
    InvalidByte(u8),
    #[error("graph has self-loops, which this operation cannot represent")]
    LoopsNotRepresentable,
    #[error("graph is disconnected")]
    Disconnected,
    #[error("cycle length {m} outside 3..={n}")]
    LengthOutOfRange { m: usize, n: usize },
    #[error("formula hypothesis unmet: {0}")]
    HypothesisUnmet(String),
    #[error("input too large: {0}")]
    TooLarge(String),
    #[error("search budget of {0} nodes exceeded")]
    BudgetExceeded(u64),
    #[error("invalid rotation system: {0}")]
    InvalidRotation(String),
    #[error("parameter out of range: {0}")]
    ParameterOutOfRange(String),
    #[error("corrupt data file {file}: {reason}")]
    CorruptDataFile { file: String, reason: String },
    #[error("audit failure on {entry}: {predicate}")]
    AuditFailure { entry: String, predicate: String },
    #[error("parse error: {0}")]
    Parse(String),
    #[error("{path}: {reason}")]
    Io { path: String, reason: String },
}

pub type Result<T> = std::result::Result<T, Error>;
