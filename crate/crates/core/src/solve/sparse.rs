//! ISTA and FISTA for `min ½‖y − A x‖² + τ‖x‖₁`.

use alloc::vec;

use super::{SolveReport, SolverConfig, StopReason};
use crate::error::{Error, Result};
use crate::expr::OperatorExpr;
use crate::math;
use crate::operator::Mode;
use crate::validate::{max_singular_value, PowerIteration};
use crate::vector::{check_finite, diff_norm, norm2, ComplexVector, C64};

/// Padding applied to the power-iteration estimate of `σ_max²`.
const LIPSCHITZ_SAFETY: f64 = 1.05;

/// Proximal map of `thresh·|·|`: shrinks the modulus, keeps the phase.
pub fn soft_threshold(z: C64, thresh: f64) -> C64 {
    let mag = z.norm();
    if mag <= thresh {
        C64::default()
    } else {
        z * ((mag - thresh) / mag)
    }
}

/// FISTA with step `1/L`, `L = 1.05·σ_max(A)²` from power iteration.
pub fn fista(op: &OperatorExpr, y: &[C64], cfg: &SolverConfig) -> Result<(ComplexVector, SolveReport)> {
    let lipschitz = estimate_lipschitz(op, cfg)?;
    proximal_gradient(op, y, cfg, lipschitz, true)
}

/// FISTA with a caller-supplied Lipschitz constant of `x ↦ Aᴴ(Ax − y)`.
pub fn fista_with_lipschitz(
    op: &OperatorExpr,
    y: &[C64],
    cfg: &SolverConfig,
    lipschitz: f64,
) -> Result<(ComplexVector, SolveReport)> {
    proximal_gradient(op, y, cfg, lipschitz, true)
}

/// Unaccelerated variant. Its objective history is non-increasing.
pub fn ista(op: &OperatorExpr, y: &[C64], cfg: &SolverConfig) -> Result<(ComplexVector, SolveReport)> {
    let lipschitz = estimate_lipschitz(op, cfg)?;
    proximal_gradient(op, y, cfg, lipschitz, false)
}

pub fn ista_with_lipschitz(
    op: &OperatorExpr,
    y: &[C64],
    cfg: &SolverConfig,
    lipschitz: f64,
) -> Result<(ComplexVector, SolveReport)> {
    proximal_gradient(op, y, cfg, lipschitz, false)
}

fn estimate_lipschitz(op: &OperatorExpr, cfg: &SolverConfig) -> Result<f64> {
    let power = PowerIteration {
        tol: 1e-8,
        max_iters: 5_000,
        seed: cfg.seed,
    };
    let sigma = max_singular_value(op, &power)?;
    Ok(LIPSCHITZ_SAFETY * sigma * sigma)
}

fn objective(residual: f64, x: &[C64], tau: f64) -> f64 {
    0.5 * residual * residual + tau * x.iter().map(|v| v.norm()).sum::<f64>()
}

fn proximal_gradient(
    op: &OperatorExpr,
    y: &[C64],
    cfg: &SolverConfig,
    lipschitz: f64,
    accelerate: bool,
) -> Result<(ComplexVector, SolveReport)> {
    cfg.validate()?;
    if !(cfg.tau > 0.0) {
        return Err(Error::InvalidConfig("tau must be positive for ISTA/FISTA".into()));
    }
    if !(lipschitz >= 0.0 && lipschitz.is_finite()) {
        return Err(Error::InvalidConfig("Lipschitz constant must be finite and non-negative".into()));
    }
    if y.len() != op.nrows() {
        return Err(Error::LengthMismatch {
            shape: op.shape(),
            expected: op.nrows(),
            got: y.len(),
        });
    }
    check_finite(y)?;

    let (n, m) = (op.nrows(), op.ncols());
    let mut x = ComplexVector::zeros(m);
    let y_norm = norm2(y);
    let mut report = SolveReport {
        iterations: 0,
        stop_reason: StopReason::MaxIters,
        residual_history: vec![y_norm],
        objective_history: vec![objective(y_norm, &x, cfg.tau)],
    };
    if lipschitz == 0.0 {
        // zero operator: the minimizer is x = 0
        report.stop_reason = StopReason::Tolerance;
        return Ok((x, report));
    }

    let step = 1.0 / lipschitz;
    let thresh = cfg.tau * step;
    let mut z = x.clone();
    let mut t = 1.0_f64;
    let mut az = vec![C64::default(); n];
    let mut grad = vec![C64::default(); m];
    let mut ax = vec![C64::default(); n];
    let mut x_next = vec![C64::default(); m];

    while report.iterations < cfg.max_iters {
        op.apply_into(Mode::Forward, &z, &mut az);
        for (a, yi) in az.iter_mut().zip(y) {
            *a -= yi;
        }
        op.apply_into(Mode::Adjoint, &az, &mut grad);
        for ((xn, zi), gi) in x_next.iter_mut().zip(z.iter()).zip(&grad) {
            *xn = soft_threshold(zi - gi * step, thresh);
        }

        op.apply_into(Mode::Forward, &x_next, &mut ax);
        let residual = diff_norm(y, &ax);
        report.iterations += 1;
        report.residual_history.push(residual);
        report.objective_history.push(objective(residual, &x_next, cfg.tau));

        let change = diff_norm(&x_next, &x);
        if accelerate {
            let t_next = (1.0 + math::sqrt(1.0 + 4.0 * t * t)) / 2.0;
            let momentum = (t - 1.0) / t_next;
            for ((zi, xn), xo) in z.iter_mut().zip(&x_next).zip(x.iter()) {
                *zi = xn + (xn - xo) * momentum;
            }
            t = t_next;
        } else {
            z.copy_from_slice(&x_next);
        }
        x.copy_from_slice(&x_next);

        if change <= cfg.tol * x.norm() {
            report.stop_reason = StopReason::Tolerance;
            break;
        }
    }
    Ok((x, report))
}
