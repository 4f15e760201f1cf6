use thiserror::Error;

/// Errors produced anywhere in the library.
///
/// Vertex indices carried by variants are 0-based; `Display` prints them
/// 1-based to match the file formats.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("hypergraph has no edges or every edge weight is zero")]
    EmptyOrZeroWeight,

    #[error("bad edge #{index}: {reason}")]
    BadEdge { index: usize, reason: String },

    #[error("duplicate edge {}", one_based(.vertices))]
    DuplicateEdge { vertices: Vec<usize> },

    #[error("dimension mismatch: expected a vector of length {expected}, got {actual}")]
    DimensionMismatch { expected: usize, actual: usize },

    #[error("invalid norm exponent p = {0} (need p >= {1})")]
    BadP(f64, f64),

    #[error("not partite: edge {} has two vertices in part {}", one_based(.edge), .part + 1)]
    NotPartite { edge: Vec<usize>, part: usize },

    #[error("bad arity: {0}")]
    BadArity(String),

    #[error("bad order n = {0}: need an even integer n >= 2")]
    BadOrder(usize),

    #[error("bad edge density {0}: need a value in (0, 1]")]
    BadDensity(f64),

    #[error("cannot project the zero vector onto the unit sphere")]
    ZeroVector,

    #[error("non-finite value encountered: {0}")]
    NonFinite(String),

    #[error("wrong arity: {0}")]
    WrongArity(String),

    #[error("instance too large for the grid oracle: n = {n} (limit {limit})")]
    TooLarge { n: usize, limit: usize },

    #[error("theorem premise fails: {0}")]
    TheoremInapplicable(String),

    #[error("convergence suspect: {0}")]
    ConvergenceSuspect(String),

    #[error("invalid configuration: {0}")]
    Config(String),

    #[error("parse error at line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("i/o error: {0}")]
    Io(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}

fn one_based(vs: &[usize]) -> String {
    let inner: Vec<String> = vs.iter().map(|v| (v + 1).to_string()).collect();
    format!("{{{}}}", inner.join(","))
}
