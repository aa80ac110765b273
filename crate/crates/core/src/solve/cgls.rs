use alloc::vec;

use super::{SolveReport, SolverConfig, StopReason};
use crate::error::{Error, Result};
use crate::expr::OperatorExpr;
use crate::math;
use crate::operator::Mode;
use crate::vector::{axpy, check_finite, norm2, norm_sqr, ComplexVector, C64};

/// Conjugate gradients on the normal equations `AᴴA x = Aᴴy`, without ever
/// forming `AᴴA`.
///
/// Stops when `‖Aᴴ(y − A x_k)‖ ≤ tol·‖Aᴴy‖` or after `max_iters`. Starting
/// from zero, the iterates stay in the Krylov space of `Aᴴ`, so the limit is
/// the minimum-norm least-squares solution. A zero curvature `‖A p‖ = 0`
/// ends the iteration early with the current iterate.
pub fn cgls(op: &OperatorExpr, y: &[C64], cfg: &SolverConfig) -> Result<(ComplexVector, SolveReport)> {
    cfg.validate()?;
    if y.len() != op.nrows() {
        return Err(Error::LengthMismatch {
            shape: op.shape(),
            expected: op.nrows(),
            got: y.len(),
        });
    }
    check_finite(y)?;

    let mut x = ComplexVector::zeros(op.ncols());
    let mut r = y.to_vec();
    let mut s = vec![C64::default(); op.ncols()];
    op.apply_into(Mode::Adjoint, &r, &mut s);
    let mut p = s.clone();
    let mut q = vec![C64::default(); op.nrows()];

    let mut gamma = norm_sqr(&s);
    let threshold = cfg.tol * math::sqrt(gamma);
    let mut report = SolveReport {
        iterations: 0,
        stop_reason: StopReason::MaxIters,
        residual_history: vec![norm2(&r)],
        objective_history: vec![],
    };
    if gamma == 0.0 {
        report.stop_reason = StopReason::Tolerance;
        return Ok((x, report));
    }

    while report.iterations < cfg.max_iters {
        op.apply_into(Mode::Forward, &p, &mut q);
        let delta = norm_sqr(&q);
        if delta == 0.0 {
            report.stop_reason = StopReason::Tolerance;
            break;
        }
        let alpha = C64::new(gamma / delta, 0.0);
        axpy(alpha, &p, &mut x);
        axpy(-alpha, &q, &mut r);
        op.apply_into(Mode::Adjoint, &r, &mut s);
        let gamma_next = norm_sqr(&s);

        report.iterations += 1;
        report.residual_history.push(norm2(&r));
        if math::sqrt(gamma_next) <= threshold {
            report.stop_reason = StopReason::Tolerance;
            break;
        }
        let beta = gamma_next / gamma;
        for (pi, si) in p.iter_mut().zip(&s) {
            *pi = si + *pi * beta;
        }
        gamma = gamma_next;
    }
    Ok((x, report))
}
