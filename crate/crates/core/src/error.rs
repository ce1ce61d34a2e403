use thiserror::Error;

/// Error type shared by all toolkit modules.
#[derive(Debug, Clone, Error)]
pub enum Error {
    #[error("matrix is not Hermitian (relative deviation {deviation:.3e})")]
    NotHermitian { deviation: f64 },

    #[error("eigensolver failed to converge ({sweeps} sweeps, off-diagonal mass {off_norm:.3e})")]
    NoConvergence { sweeps: usize, off_norm: f64 },

    #[error("matrix is not positive semidefinite (minimal eigenvalue {min_eigenvalue:.3e})")]
    NotPsd { min_eigenvalue: f64 },

    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    #[error("spectrum does not submajorize the target")]
    NotSubmajorized,

    #[error("invalid gauge: {0}")]
    BadGauge(String),

    #[error("invalid block partition: {0}")]
    BadPartition(String),

    #[error("element is not a member of the order interval")]
    NotMember,

    #[error("argument outside the admissible operator range: {0}")]
    BadRange(String),

    #[error("not enough spectrum above the unit threshold: {0}")]
    InsufficientSpectrum(String),

    #[error("invalid positivity level k={k} (admissible range 1..={max})")]
    BadK { k: usize, max: usize },

    #[error("map is not completely positive")]
    NotCp,

    #[error("infeasible obstruction parameters: {0}")]
    InfeasibleParameters(String),

    #[error("obstruction witness failed to certify (quadratic form {value:.3e})")]
    WitnessFailed { value: f64 },

    #[error("column threshold {j} out of range for grid size {n}")]
    BadThreshold { j: usize, n: usize },

    #[error("unknown corpus item id: {0}")]
    UnknownId(String),

    #[error("parse error: {0}")]
    Parse(String),

    #[error("schema error: {0}")]
    Schema(String),
}

pub type Result<T> = std::result::Result<T, Error>;
