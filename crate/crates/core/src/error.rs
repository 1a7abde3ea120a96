use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("operands live on different charts")]
    ChartMismatch,
    #[error("invalid chart: {0}")]
    InvalidChart(String),
    #[error("unknown variable or symbol `{0}`")]
    UnknownName(String),
    #[error("symbol `{symbol}` has no registered derivative with respect to `{var}`")]
    MissingDerivative { symbol: String, var: String },
    #[error("symbol `{0}` has no registered conjugation rule")]
    MissingConjugation(String),
    #[error("negative exponent on `{0}`, which is neither a log variable nor a unit symbol")]
    NegativeExponent(String),
    #[error("pole hit: `{0}` evaluated at 0 with a negative exponent present")]
    Pole(String),
    #[error("`{0}` is not assigned a value")]
    Unassigned(String),
    #[error("division by a non-monomial or zero expression")]
    NotInvertible,
    #[error("expected {expected}, found {found}")]
    Degree { expected: String, found: String },
    #[error("form is not d-closed")]
    NotClosed,
    #[error("form is not real (conj(b) != b)")]
    NotReal,
    #[error("log form has an unsupported pole shape: {0}")]
    PoleShape(String),
    #[error("spinor vanishes at the point")]
    ZeroSpinor,
    #[error("spinor is degenerate at the point: ker ∩ conj(ker) ≠ 0")]
    DegenerateSpinor,
    #[error("not a cochain complex: d∘d ≠ 0 at degree {0}")]
    NotAComplex(usize),
    #[error("not a double complex: {0}")]
    NotADoubleComplex(String),
    #[error("dimension mismatch: {0}")]
    Dimension(String),
    #[error("parameter out of range: {0}")]
    OutOfRange(String),
    #[error("invalid surgery data: {0}")]
    InvalidSurgery(String),
    #[error("missing hypothesis: {0}")]
    MissingHypothesis(String),
    #[error("certificate failure: {0}")]
    Certificate(String),
    #[error("unknown suite `{0}`")]
    UnknownSuite(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("i/o error: {0}")]
    Io(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}

impl From<serde_json::Error> for Error {
    fn from(e: serde_json::Error) -> Self {
        Error::Parse(e.to_string())
    }
}

impl Error {
    /// Errors caused by user input rather than a failed check.
    pub fn is_input_error(&self) -> bool {
        !matches!(self, Error::Certificate(_))
    }
}
