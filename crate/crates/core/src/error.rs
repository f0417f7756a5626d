use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("s_0 must be nonzero")]
    ZeroS0,
    #[error("r_{0} is zero; r must have nonzero terms")]
    ZeroR(usize),
    #[error("t_{0} is zero; t must have nonzero terms")]
    ZeroT(usize),
    #[error("index {index} outside the explicit prefix of length {len}")]
    Range { index: usize, len: usize },
    #[error("index {index} out of range for truncation N = {n}")]
    IndexOutOfRange { index: usize, n: usize },
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("determinant oracle limited to n <= 8, got {0}")]
    OracleScaleExceeded(usize),
    #[error("bad exponent: {0}")]
    BadExponent(String),
    #[error("exponents straddle 1 on the window; the dual and mapping criteria need p_k > 1 for all k or p_k <= 1 for all k")]
    MixedExponentRegime,
    #[error("series did not converge: {0}")]
    SeriesDivergence(String),
    #[error("floating point overflow: {0}")]
    Overflow(String),
    #[error("parse error: {what}{}", location(*line, *offset))]
    Parse { what: String, line: Option<usize>, offset: Option<usize> },
    #[error("invalid input: {0}")]
    Validation(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

fn location(line: Option<usize>, offset: Option<usize>) -> String {
    match (line, offset) {
        (Some(l), Some(o)) => format!(" (line {l}, column {o})"),
        (Some(l), None) => format!(" (line {l})"),
        (None, Some(o)) => format!(" (offset {o})"),
        (None, None) => String::new(),
    }
}

impl Error {
    /// Process exit status used by the command line front-end.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::SeriesDivergence(_) | Error::Overflow(_) => 3,
            _ => 2,
        }
    }
}

impl From<serde_json::Error> for Error {
    fn from(e: serde_json::Error) -> Self {
        Error::Parse { what: e.to_string(), line: Some(e.line()), offset: Some(e.column()) }
    }
}
