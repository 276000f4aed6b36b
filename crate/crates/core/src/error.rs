use thiserror::Error;

/// Errors raised by the solver.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("configuration error: {0}")]
    Config(String),

    #[error("domain error: {0}")]
    Domain(String),

    #[error("inadmissible state: {0}")]
    Admissibility(#[from] AdmissibilityError),

    #[error("inadmissible state in cell {cell} at node {node}: {source}")]
    CellAdmissibility {
        cell: usize,
        node: usize,
        source: AdmissibilityError,
    },

    #[error("interface Riemann solver failed at face {face}, point {point}: {source}")]
    Interface {
        face: usize,
        point: usize,
        source: AdmissibilityError,
    },

    #[error("numerical flux failed at face {face}, point {point}: {source}")]
    Face {
        face: usize,
        point: usize,
        source: AdmissibilityError,
    },

    #[error("stage {stage} of the time step failed: {source}")]
    Stage { stage: usize, source: Box<Error> },

    #[error("step {step} at t = {time:e} failed: {source}")]
    Step {
        step: usize,
        time: f64,
        source: Box<Error>,
    },

    #[error("non-finite coefficient in cell {cell}")]
    NonFinite { cell: usize },

    #[error("root finder did not converge after {iterations} iterations (residual {residual:e})")]
    OracleFailure { iterations: usize, residual: f64 },

    #[error("io error: {0}")]
    Io(String),
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}

/// A violated admissibility bound.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum AdmissibilityError {
    #[error("density {0:e} is not positive")]
    Density(f64),
    #[error("pressure {pressure:e} is below -pi = {min:e}")]
    Pressure { pressure: f64, min: f64 },
    #[error("non-finite state component")]
    NonFinite,
    #[error("Riemann solver denominator {0:e} is not positive")]
    Denominator(f64),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
