//! Shared error type for all library modules.

use thiserror::Error;

/// Errors reported by the library.
///
/// Every operation that can refuse its input does so through one of these
/// variants; numerical verdicts (a check that ran but failed) are not errors
/// and are reported through result structs instead.
#[derive(Debug, Clone, Error, PartialEq)]
pub enum Error {
    /// Input values coincide (or nearly coincide) where distinctness is
    /// structurally required, e.g. a vanishing Vandermonde denominator.
    #[error("degenerate input: {0}")]
    DegenerateInput(String),

    /// A time vector is shorter than the highest index a consumer needs.
    #[error("time vector supplies {got} times but index {needed} is required")]
    InsufficientTimes { needed: usize, got: usize },

    /// A polynomial claimed to be symmetric failed the swap test.
    #[error("polynomial is not symmetric in its variables")]
    NotSymmetric,

    /// The removable-pole sum rule behind the kappa construction failed,
    /// which signals rapidities that do not satisfy the Bethe equations
    /// (or a loss of precision).
    #[error("sum rule violated: relative residual {residual:.3e} at column {column}")]
    SumRuleViolation { column: usize, residual: f64 },

    /// The root solver found fewer solutions than requested.
    #[error("solver converged to {found} of {requested} requested solutions")]
    NoConvergence { found: usize, requested: usize },

    /// A computation exceeds the supported size window.
    #[error("size limit exceeded: {0}")]
    SizeLimit(String),

    /// Matrix or list dimensions do not match the operation's contract.
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    /// A state vector required to be nonzero has zero norm.
    #[error("state vector has zero norm")]
    ZeroState,

    /// The empty-partition coefficient vanishes, so hook coefficients
    /// d = c / c_empty are undefined.
    #[error("coefficient of the empty partition is zero (or below tolerance)")]
    EmptyCoefficientZero,

    /// Chain parameters violate their invariants.
    #[error("invalid parameters: {0}")]
    InvalidParams(String),
}

pub type Result<T> = std::result::Result<T, Error>;
