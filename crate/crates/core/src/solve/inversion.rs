use alloc::format;
use alloc::vec;
use alloc::vec::Vec;

use super::{cgls, direct_lstsq, SolveReport, SolverConfig, StopReason};
use crate::error::{Error, Result};
use crate::expr::OperatorExpr;
use crate::vector::{diff_norm, ComplexVector, C64};

/// Direct solve for explicit operators, CGLS for everything else.
///
/// The direct path reports zero iterations and a single residual.
pub fn solve_auto(op: &OperatorExpr, y: &[C64], cfg: &SolverConfig) -> Result<(ComplexVector, SolveReport)> {
    if !op.explicit() {
        return cgls(op, y, cfg);
    }
    let x = direct_lstsq(op, y)?;
    let ax = op.forward(&x)?;
    let report = SolveReport {
        iterations: 0,
        stop_reason: StopReason::Tolerance,
        residual_history: vec![diff_norm(y, &ax)],
        objective_history: vec![],
    };
    Ok((x, report))
}

/// Minimizes `‖y − A x‖² + Σ εᵢ² ‖Rᵢ x‖²` by running CGLS on the stacked
/// operator `[A; ε₁R₁; …]` with data `[y; 0; …]`.
///
/// The weights come from `cfg.eps_list`, one per regularizer. Residual
/// history refers to the stacked system.
pub fn regularized_inversion(
    op: &OperatorExpr,
    regs: &[OperatorExpr],
    y: &[C64],
    cfg: &SolverConfig,
) -> Result<(ComplexVector, SolveReport)> {
    if y.len() != op.nrows() {
        return Err(Error::LengthMismatch {
            shape: op.shape(),
            expected: op.nrows(),
            got: y.len(),
        });
    }
    if cfg.eps_list.len() != regs.len() {
        return Err(Error::InvalidConfig(format!(
            "{} regularization operators but {} eps weights",
            regs.len(),
            cfg.eps_list.len()
        )));
    }
    let mut blocks = Vec::with_capacity(regs.len() + 1);
    blocks.push(op.clone());
    for (reg, &eps) in regs.iter().zip(&cfg.eps_list) {
        if reg.ncols() != op.ncols() {
            return Err(Error::ShapeMismatch {
                combinator: "regularized inversion",
                left: op.shape(),
                right: reg.shape(),
            });
        }
        blocks.push(OperatorExpr::scale(C64::new(eps, 0.0), reg));
    }
    let stacked = OperatorExpr::vstack(&blocks)?;
    let mut data = Vec::with_capacity(stacked.nrows());
    data.extend_from_slice(y);
    data.resize(stacked.nrows(), C64::default());
    cgls(&stacked, &data, cfg)
}

/// Solves for `p` in `y = A P p` with CGLS and returns `x = P p`.
pub fn preconditioned_inversion(
    op: &OperatorExpr,
    precond: &OperatorExpr,
    y: &[C64],
    cfg: &SolverConfig,
) -> Result<(ComplexVector, SolveReport)> {
    let chained = OperatorExpr::compose(op, precond)?;
    let (p, report) = cgls(&chained, y, cfg)?;
    let x = precond.forward(&p)?;
    Ok((x, report))
}
