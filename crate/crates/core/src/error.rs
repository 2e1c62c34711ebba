use thiserror::Error;

/// Errors raised by field operations, constitutive evaluation and time stepping.
#[derive(Debug, Clone, Error, PartialEq)]
pub enum Error {
    /// Operator applied to a field of the wrong rank, mismatched grids, bad arguments.
    #[error("usage error: {0}")]
    Usage(String),

    /// An input lies outside the admissible region (non-positive density or temperature, ...).
    #[error("domain error: {0}")]
    Domain(String),

    /// An iterative solver failed to reach its tolerance.
    #[error("numeric error: {message} (final residual {residual:e})")]
    Numeric { message: String, residual: f64 },

    /// Positivity was lost during a simulation.
    #[error("simulation blow-up at cell {cell}: {message}")]
    Blowup { cell: usize, message: String },
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn usage(msg: impl Into<String>) -> Error {
    Error::Usage(msg.into())
}

pub(crate) fn domain(msg: impl Into<String>) -> Error {
    Error::Domain(msg.into())
}
