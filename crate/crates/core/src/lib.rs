//! Matrix-free linear operators over complex double precision.
//!
//! An operator is a shape plus a pair of actions: the forward product `A x`
//! and the adjoint product `Aᴴ y`. Concrete leaves ([`ops`]) exploit their
//! structure (index gathers, stencils, FFTs) instead of storing a matrix, and
//! [`OperatorExpr`] combines them with sums, scalings, chains, adjoints and
//! block stacks without ever forming intermediate matrices.
//!
//! On top of the algebra sit the solvers in [`solve`] (CGLS, a dense
//! Cholesky least-squares path, Tikhonov and preconditioned wrappers,
//! ISTA/FISTA) and the checks in [`validate`] (dot-test, power-iteration
//! singular values, condition number).
//!
//! The crate is `no_std` and only needs `alloc`.
#![no_std]

extern crate alloc;

mod error;
mod expr;
mod math;
mod operator;
mod vector;

pub mod ops;
pub mod random;
pub mod solve;
pub mod validate;

pub use error::{Error, Result};
pub use expr::{Node, OperatorExpr};
pub use operator::{Footprint, LeafKind, LinearOperator, Mode, Shape};
pub use ops::{materialize, materialize_with_cap, DEFAULT_MATERIALIZE_CAP};
pub use vector::{c64, ComplexVector, C64};
