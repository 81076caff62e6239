use crate::linalg::LinalgError;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum Error {
    #[error("matrix is not Hermitian (max asymmetry {0:.3e})")]
    NotHermitian(f64),
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("invalid observable: {0}")]
    InvalidObservable(String),
    #[error("vector is not normalized (norm {0})")]
    NotNormalized(f64),
    #[error("not a density operator: {0}")]
    NotDensityOperator(String),
    #[error("not a probability distribution: {0}")]
    NotADistribution(String),
    #[error("outcome {outcome} has probability {probability:.3e}")]
    NullOutcome { outcome: usize, probability: f64 },
    #[error("invalid state transformers: {0}")]
    InvalidTransformers(String),
    #[error("Schmidt term {term} has no definite value (best residual {residual:.3e})")]
    NoDefiniteValue { term: usize, residual: f64 },
    #[error("input is not the final state of a repeatable measurement: {0}")]
    NonRepeatableInput(String),
    #[error(transparent)]
    Linalg(LinalgError),
}

impl From<LinalgError> for Error {
    fn from(e: LinalgError) -> Self {
        match e {
            LinalgError::NotHermitian(d) => Error::NotHermitian(d),
            LinalgError::DimensionMismatch(s) => Error::DimensionMismatch(s),
            other => Error::Linalg(other),
        }
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

pub(crate) fn check_dim(got: usize, expected: usize, what: &str) -> Result<()> {
    if got == expected {
        Ok(())
    } else {
        Err(Error::DimensionMismatch(format!(
            "{what}: expected {expected}, got {got}"
        )))
    }
}
