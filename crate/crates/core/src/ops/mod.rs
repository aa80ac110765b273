//! Concrete leaf operators.
//!
//! Apart from [`DenseMatrix`], none of these store a matrix: each keeps only
//! the payload its kernel needs, as reported by
//! [`LinearOperator::footprint`](crate::LinearOperator::footprint).

mod basic;
mod dense;
mod derivative;
mod dft;
mod restriction;

pub use basic::{Diagonal, Identity};
pub use dense::{materialize, materialize_with_cap, DenseMatrix, DEFAULT_MATERIALIZE_CAP};
pub use derivative::{FirstDerivative, SecondDerivative};
pub use dft::Dft;
pub use restriction::Restriction;

use alloc::string::String;

use crate::error::Error;

fn invalid(operator: &'static str, reason: impl Into<String>) -> Error {
    Error::InvalidOperator {
        operator,
        reason: reason.into(),
    }
}
