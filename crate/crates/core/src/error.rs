use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("dimension mismatch: {0}")]
    Dimension(String),
    #[error("matrix is not Hermitian (max defect {0:e})")]
    NotHermitian(f64),
    #[error("Jacobi iteration did not converge in {0} sweeps")]
    NoConvergence(usize),
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("operator has no negative eigenvalue (lambda_min = {0})")]
    NotAWitness(f64),
    #[error("not an orthogonal projector (defect {0:e})")]
    NotAProjector(f64),
    #[error("internal consistency check failed: {0}")]
    Consistency(String),
    #[error("empty input: {0}")]
    Empty(&'static str),
    #[error("characteristic polynomial has a non-real coefficient at degree {0}")]
    NonRealCoefficient(usize),
}

pub type Result<T> = std::result::Result<T, Error>;
