use thiserror::Error;

/// Errors raised by the numerical kernels, the spectrum evaluators and the
/// Bethe solver.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// An argument lies outside the domain of the operation.
    #[error("domain error: {0}")]
    Domain(String),

    /// A truncated product hit its term cap before the tail bound fell below
    /// the requested tolerance.
    #[error("truncation cap of {max_terms} terms reached before the tail bound fell below {tol:e}")]
    TruncationCap { max_terms: usize, tol: f64 },

    /// Evaluation landed on a zero of a denominator factor.
    #[error("pole: {0}")]
    Pole(String),

    /// A quantity that must be real (or otherwise constrained) is not.
    #[error("consistency error: {0}")]
    Consistency(String),

    /// Two Bethe roots collide or produce a vanishing factor.
    #[error("singular Bethe configuration between roots {0} and {1}")]
    Singularity(usize, usize),

    /// The requested string ansatz is unsupported or its limit constraints fail.
    #[error("ansatz error: {0}")]
    Ansatz(String),

    /// Newton continuation could not reach the target nome.
    #[error("continuation failed at x = {failed_x:e}; last converged x = {last_good_x:?}")]
    Continuation {
        failed_x: f64,
        last_good_x: Option<f64>,
    },

    /// A converged string configuration no longer matches its ansatz.
    #[error("string structure changed: {0}")]
    Structure(String),
}

pub type Result<T> = std::result::Result<T, Error>;
