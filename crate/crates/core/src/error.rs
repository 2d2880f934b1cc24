use thiserror::Error;

/// Failure modes shared by every numerical routine in the crate.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error("parse error: {0}")]
    Parse(String),

    #[error("coherent-state tail {tail:.3e} exceeds threshold {threshold:.3e} at cutoff {cutoff}")]
    TailTooLarge {
        tail: f64,
        threshold: f64,
        cutoff: usize,
    },

    #[error("cutoff doubling changed the result by {delta:.3e} (tolerance {tol:.3e})")]
    NonConverged { delta: f64, tol: f64 },

    #[error("quadrature refinement changed the result by {delta:.3e} (tolerance {tol:.3e})")]
    QuadratureNotConverged { delta: f64, tol: f64 },

    #[error("brute-force quadrature supports N <= 3, got N = {0}")]
    DimensionTooLarge(usize),

    #[error("Newton shooting did not converge: residual {residual:.3e} after {iterations} iterations")]
    NoConvergence { residual: f64, iterations: usize },

    #[error("integrator error estimate {estimate:.3e} exceeds bound {bound:.3e} with {steps} steps")]
    StepTooLarge {
        estimate: f64,
        bound: f64,
        steps: usize,
    },

    #[error("monodromy element |Omega(T)| = {0:.3e} is below the caustic threshold")]
    SingularMonodromy(f64),

    #[error("matrix is numerically singular (pivot ratio {0:.3e})")]
    SingularMatrix(f64),

    #[error("grid margin {margin:.3} is smaller than the required {required:.3}")]
    MarginTooSmall { margin: f64, required: f64 },
}

/// Coarse classification used by front ends to choose exit codes.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ErrorKind {
    Input,
    Convergence,
    Numeric,
}

impl Error {
    pub fn kind(&self) -> ErrorKind {
        match self {
            Error::InvalidInput(_) | Error::Parse(_) | Error::DimensionTooLarge(_) => {
                ErrorKind::Input
            }
            Error::NonConverged { .. }
            | Error::QuadratureNotConverged { .. }
            | Error::NoConvergence { .. }
            | Error::StepTooLarge { .. } => ErrorKind::Convergence,
            Error::TailTooLarge { .. }
            | Error::SingularMonodromy(_)
            | Error::SingularMatrix(_)
            | Error::MarginTooSmall { .. } => ErrorKind::Numeric,
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
