use alloc::string::String;

use crate::operator::Shape;

pub type Result<T, E = Error> = core::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum Error {
    /// Two operands of a combinator have incompatible shapes.
    #[error("{combinator}: incompatible shapes {left} and {right}")]
    ShapeMismatch {
        combinator: &'static str,
        left: Shape,
        right: Shape,
    },

    /// A vector handed to an operator has the wrong length.
    #[error("operator of shape {shape} expects a vector of length {expected}, got {got}")]
    LengthMismatch {
        shape: Shape,
        expected: usize,
        got: usize,
    },

    #[error("non-finite value at index {index}")]
    NonFinite { index: usize },

    /// A leaf operator was given an invalid payload.
    #[error("invalid {operator}: {reason}")]
    InvalidOperator {
        operator: &'static str,
        reason: String,
    },

    #[error("materializing {entries} entries exceeds the cap of {cap}")]
    MaterializeCap { entries: usize, cap: usize },

    #[error("Gram matrix is singular or indefinite (pivot {pivot} at column {column}); use a regularized inversion")]
    SingularGram { column: usize, pivot: f64 },

    #[error("power iteration did not converge in {iterations} iterations (last estimate {estimate}); supply the Lipschitz constant explicitly")]
    NotConverged { iterations: usize, estimate: f64 },

    /// The smallest singular value is numerically zero.
    #[error("operator is rank deficient (sigma_max {sigma_max}, sigma_min {sigma_min}): infinite condition number")]
    InfiniteCondition { sigma_max: f64, sigma_min: f64 },

    #[error("invalid solver configuration: {0}")]
    InvalidConfig(String),
}
