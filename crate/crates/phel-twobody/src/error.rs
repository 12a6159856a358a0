use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error(transparent)]
    Numerics(#[from] phel_numerics::Error),
    #[error("Picard iteration did not reach {tol:e} after {iterations} sweeps; residuals {residuals:?}")]
    NoConvergence { iterations: usize, tol: f64, residuals: Vec<f64> },
}

pub type Result<T> = std::result::Result<T, Error>;
