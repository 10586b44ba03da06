use thiserror::Error;

/// Errors raised by state construction, linear algebra and the cloning maps.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("qubit index {index} out of range for a {width}-qubit register")]
    QubitOutOfRange { index: usize, width: usize },

    #[error("invalid qubit set: {0}")]
    InvalidQubitSet(String),

    #[error("control and target coincide on qubit {0}")]
    ControlIsTarget(usize),

    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("amplitude vector length {0} is not a power of two")]
    NotPowerOfTwo(usize),

    #[error("cannot normalize a zero vector")]
    ZeroNorm,

    #[error("matrix is not Hermitian (max deviation {0:e})")]
    NotHermitian(f64),

    #[error("matrix is not positive semidefinite (eigenvalue {0:e})")]
    NotPositive(f64),

    #[error("trace is {0}, expected 1")]
    BadTrace(f64),

    #[error("Jacobi sweeps did not converge (off-diagonal norm {0:e})")]
    NoConvergence(f64),

    #[error("lambda must be finite and differ from +1 and -1, got {0}")]
    InvalidLambda(f64),

    #[error("coefficients are not normalized (sum of squares {0})")]
    Unnormalized(f64),

    #[error("input state lies on the {found} equator, expected {expected}")]
    WrongEquator {
        expected: &'static str,
        found: &'static str,
    },

    #[error("{what} = {value} outside supported range {range}")]
    OutOfRange {
        what: &'static str,
        value: usize,
        range: String,
    },

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
}

pub type Result<T> = std::result::Result<T, Error>;
