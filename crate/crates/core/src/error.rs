use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("quadrature did not reach tolerance {tol:e} (estimated error {err:e})")]
    NonConvergence { tol: f64, err: f64 },
    #[error("arity {got} exceeds the supported maximum {max}")]
    ArityTooLarge { got: usize, max: usize },
    #[error("invalid zone of control: {0}")]
    InvalidZone(String),
    #[error("variant precondition violated: {0}")]
    VariantPreconditionViolated(String),
    #[error("truncation exponent delta must exceed 4, got {0}")]
    DeltaTooSmall(f64),
    #[error("unknown vertex {0}")]
    UnknownVertex(usize),
    #[error("chain is not ergodic")]
    NotErgodic,
    #[error("times must be nondecreasing")]
    TimesNotSorted,
    #[error("theta must lie in [0, 1), got {0}")]
    ThetaOutOfRange(f64),
    #[error("bad parameters: {0}")]
    BadParams(String),
    #[error("operation not supported by model {0}")]
    Unsupported(String),
    #[error("io error: {0}")]
    Io(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}
