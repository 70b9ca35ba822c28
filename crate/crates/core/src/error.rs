use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("the zero polynomial has no normal form")]
    ZeroPolynomial,

    #[error("cannot evaluate a polynomial with negative exponents at 0")]
    EvalAtZero,

    #[error("parse error at byte {pos}: {msg}")]
    Parse { pos: usize, msg: String },

    #[error("invalid SR parameters (m={m}, l={l}, p={p}): need m >= 1 and 0 <= p <= m")]
    InvalidParams { m: u32, l: i64, p: u32 },

    #[error("invalid band signs: {0}")]
    InvalidSigns(String),

    #[error("matrix is not square ({rows}x{cols})")]
    NotSquare { rows: usize, cols: usize },

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("corpus line {line}: {msg}")]
    Corpus { line: usize, msg: String },

    #[error("duplicate corpus record `{0}`")]
    DuplicateRecord(String),

    #[error(transparent)]
    Io(#[from] IoError),
}

/// `std::io::Error` is neither `Clone` nor `PartialEq`; keep the rendered message.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("{0}")]
pub struct IoError(pub String);

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(IoError(e.to_string()))
    }
}
