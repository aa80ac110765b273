//! Least-squares and sparsity-promoting solvers.
//!
//! Everything here works through forward and adjoint applications, except
//! [`direct_lstsq`], which materializes the operator and factorizes its Gram
//! matrix. All iterative solvers start from `x₀ = 0`.

mod cgls;
mod direct;
mod inversion;
mod sparse;

pub use cgls::cgls;
pub use direct::{cholesky_solve, direct_lstsq};
pub use inversion::{preconditioned_inversion, regularized_inversion, solve_auto};
pub use sparse::{fista, fista_with_lipschitz, ista, ista_with_lipschitz, soft_threshold};

use alloc::format;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::operator::Shape;

#[derive(Debug, Clone, PartialEq)]
pub struct SolverConfig {
    pub max_iters: usize,
    /// Relative stopping tolerance. CGLS compares `‖Aᴴr‖` against `‖Aᴴy‖`;
    /// ISTA/FISTA compare the iterate change against the iterate norm.
    pub tol: f64,
    /// ℓ₁ weight for ISTA/FISTA.
    pub tau: f64,
    /// Tikhonov weights, one per regularization operator.
    pub eps_list: Vec<f64>,
    /// Seed for any random start (power iteration in FISTA).
    pub seed: u64,
}

impl SolverConfig {
    pub fn new(max_iters: usize, tol: f64) -> Self {
        Self {
            max_iters,
            tol,
            tau: 0.0,
            eps_list: Vec::new(),
            seed: 0,
        }
    }

    /// `tol = 1e-8`, `max_iters = 10·max(N, M)`.
    pub fn cgls_defaults(shape: Shape) -> Self {
        Self::new(10 * shape.nrows().max(shape.ncols()), 1e-8)
    }

    /// `tol = 1e-8`, `max_iters = 500`.
    pub fn fista_defaults(tau: f64) -> Self {
        Self::new(500, 1e-8).with_tau(tau)
    }

    pub fn with_max_iters(mut self, max_iters: usize) -> Self {
        self.max_iters = max_iters;
        self
    }

    pub fn with_tol(mut self, tol: f64) -> Self {
        self.tol = tol;
        self
    }

    pub fn with_tau(mut self, tau: f64) -> Self {
        self.tau = tau;
        self
    }

    pub fn with_eps(mut self, eps_list: Vec<f64>) -> Self {
        self.eps_list = eps_list;
        self
    }

    pub fn with_seed(mut self, seed: u64) -> Self {
        self.seed = seed;
        self
    }

    pub fn validate(&self) -> Result<()> {
        if self.max_iters == 0 {
            return Err(Error::InvalidConfig("max_iters must be at least 1".into()));
        }
        if !(self.tol > 0.0 && self.tol.is_finite()) {
            return Err(Error::InvalidConfig(format!("tol must be positive, got {}", self.tol)));
        }
        if !(self.tau >= 0.0 && self.tau.is_finite()) {
            return Err(Error::InvalidConfig(format!("tau must be non-negative, got {}", self.tau)));
        }
        if let Some(eps) = self.eps_list.iter().find(|e| !(**e > 0.0 && e.is_finite())) {
            return Err(Error::InvalidConfig(format!("eps weights must be positive, got {eps}")));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum StopReason {
    Tolerance,
    MaxIters,
}

impl StopReason {
    pub fn as_str(&self) -> &'static str {
        match self {
            StopReason::Tolerance => "tolerance",
            StopReason::MaxIters => "max_iters",
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SolveReport {
    pub iterations: usize,
    pub stop_reason: StopReason,
    /// `‖y − A x_k‖₂` for `k = 0..=iterations`.
    pub residual_history: Vec<f64>,
    /// `½‖y − A x_k‖² + τ‖x_k‖₁`, ISTA/FISTA only; same indexing as residuals.
    pub objective_history: Vec<f64>,
}
