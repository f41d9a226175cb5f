use thiserror::Error;

pub type Result<T> = std::result::Result<T, WignerError>;

#[derive(Debug, Error)]
pub enum WignerError {
    #[error("empty operator list")]
    EmptyInput,

    #[error("matrix is not square ({rows}x{cols})")]
    NotSquare { rows: usize, cols: usize },

    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("matrix is not Hermitian: max |M - M^†| entry = {max_deviation:e}")]
    NotHermitian { max_deviation: f64 },

    #[error("matrix is not positive semidefinite: smallest eigenvalue {min_eigenvalue:e}")]
    NotPsd { min_eigenvalue: f64 },

    #[error("density matrix trace {trace} differs from 1")]
    BadTrace { trace: f64 },

    #[error("vector is not normalized: norm {norm}")]
    NotNormalized { norm: f64 },

    #[error("eigensolver failed to converge")]
    ConvergenceFailure,

    #[error("projections do not reduce the tuple: max commutator norm {max_commutator:e}")]
    NotReducing { max_commutator: f64 },

    #[error("moment degree {degree} exceeds the maximum {max}")]
    DegreeTooHigh { degree: u32, max: u32 },

    #[error("degenerate spectrum: eigenvalue gap {gap:e} below threshold")]
    DegenerateSpectrum { gap: f64 },

    #[error("branch {mu} is degenerate at t = {t} (gap {gap:e})")]
    DegenerateBranch { mu: usize, t: f64, gap: f64 },

    #[error("square-root argument touches the branch cut")]
    BranchAmbiguity,

    #[error("unknown example '{0}'")]
    UnknownExample(String),

    #[error("invalid grid: {0}")]
    InvalidGrid(String),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("parse error: {0}")]
    Parse(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}
