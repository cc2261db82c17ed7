use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

/// Every failure the library can report.
///
/// Variant names double as the stable error identifiers printed by the CLI
/// (see [`Error::name`]).
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("matrix is not positive definite: {0}")]
    NotPositiveDefinite(String),

    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("matrix is not Hermitian: {0}")]
    NotHermitian(String),

    #[error("sqrt-route prediction needs block size m >= half-bandwidth k (got m = {m}, k = {k})")]
    RegimeViolation { k: usize, m: usize },

    #[error("coefficient {name} must be positive, got {value} at x = {x}")]
    NonPositiveCoefficient { name: String, x: f64, value: f64 },

    #[error("cannot build a shift-and-scale map: {0}")]
    DegenerateRange(String),

    #[error("half-bandwidth {found} exceeds the supported maximum {max}")]
    BandwidthTooLarge { max: usize, found: usize },

    #[error("circuit needs {requested} qubits, limit is {limit}")]
    TooManyQubits { requested: usize, limit: usize },

    #[error("value out of range: {0}")]
    OutOfRange(String),

    #[error(
        "Jacobi eigensolver did not converge in {sweeps} sweeps (off-diagonal norm {off_norm:e})"
    )]
    ConvergenceFailure { sweeps: usize, off_norm: f64 },

    #[error("parse error: {0}")]
    ParseError(String),

    #[error("invalid configuration: {0}")]
    ConfigInvalid(String),

    #[error("i/o error: {0}")]
    Io(String),
}

impl Error {
    /// Stable identifier of the variant.
    pub fn name(&self) -> &'static str {
        match self {
            Error::NotPositiveDefinite(_) => "NotPositiveDefinite",
            Error::DimensionMismatch { .. } => "DimensionMismatch",
            Error::NotHermitian(_) => "NotHermitian",
            Error::RegimeViolation { .. } => "RegimeViolation",
            Error::NonPositiveCoefficient { .. } => "NonPositiveCoefficient",
            Error::DegenerateRange(_) => "DegenerateRange",
            Error::BandwidthTooLarge { .. } => "BandwidthTooLarge",
            Error::TooManyQubits { .. } => "TooManyQubits",
            Error::OutOfRange(_) => "OutOfRange",
            Error::ConvergenceFailure { .. } => "ConvergenceFailure",
            Error::ParseError(_) => "ParseError",
            Error::ConfigInvalid(_) => "ConfigInvalid",
            Error::Io(_) => "Io",
        }
    }
}

pub(crate) fn check_dim(expected: usize, found: usize) -> Result<()> {
    if expected == found {
        Ok(())
    } else {
        Err(Error::DimensionMismatch { expected, found })
    }
}
