//! Adjoint validation and spectral estimates.
//!
//! [`dottest`] checks `⟨A u, v⟩ = ⟨u, Aᴴ v⟩` on random complex vectors.
//! Singular values come from power iteration on `AᴴA`, using nothing but
//! forward and adjoint applications.

use crate::error::{Error, Result};
use crate::expr::OperatorExpr;
use crate::math;
use crate::random::{complex_normal_vector, seeded};
use crate::vector::{inner, norm2, norm_sqr, ComplexVector, C64};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DotTestResult {
    pub passed: bool,
    pub trials: usize,
    pub tolerance: f64,
    pub worst_relative_error: f64,
    /// `⟨A u, v⟩` from the worst trial.
    pub lhs_sample: C64,
    /// `⟨u, Aᴴ v⟩` from the worst trial.
    pub rhs_sample: C64,
}

/// Runs `trials` dot-tests with `u ~ CN(0, I_M)` and `v ~ CN(0, I_N)`.
///
/// The relative error of a trial is `|lhs - rhs| / max(|lhs|, |rhs|, 1e-300)`;
/// the test passes iff every trial is within `tol`. Deterministic for a
/// given seed.
pub fn dottest(op: &OperatorExpr, trials: usize, tol: f64, seed: u64) -> DotTestResult {
    assert!(trials >= 1, "dottest needs at least one trial");
    let mut rng = seeded(seed);
    let mut worst = (f64::NEG_INFINITY, C64::default(), C64::default());
    for _ in 0..trials {
        let u = complex_normal_vector(&mut rng, op.ncols());
        let v = complex_normal_vector(&mut rng, op.nrows());
        let au = op.forward(&u).expect("u has ncols entries");
        let ahv = op.adjoint_apply(&v).expect("v has nrows entries");
        let lhs = inner(&au, &v);
        let rhs = inner(&u, &ahv);
        let denom = lhs.norm().max(rhs.norm()).max(1e-300);
        let err = (lhs - rhs).norm() / denom;
        if err > worst.0 {
            worst = (err, lhs, rhs);
        }
    }
    DotTestResult {
        passed: worst.0 <= tol,
        trials,
        tolerance: tol,
        worst_relative_error: worst.0,
        lhs_sample: worst.1,
        rhs_sample: worst.2,
    }
}

/// Settings shared by the power-iteration estimators.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PowerIteration {
    /// Relative change of successive Rayleigh quotients that counts as converged.
    pub tol: f64,
    pub max_iters: usize,
    pub seed: u64,
}

impl Default for PowerIteration {
    fn default() -> Self {
        Self {
            tol: 1e-12,
            max_iters: 10_000,
            seed: 0,
        }
    }
}

/// Below `RANK_RTOL · σ_max` the smallest singular value is treated as zero.
/// Shifted power iteration cannot resolve `σ_min` much below
/// `sqrt(ε) · σ_max`, so the cut sits well above that floor.
pub const RANK_RTOL: f64 = 1e-6;

fn unit_start(n: usize, seed: u64) -> ComplexVector {
    let mut w = complex_normal_vector(&mut seeded(seed), n);
    let norm = w.norm();
    w.iter_mut().for_each(|v| *v /= norm);
    w
}

/// Runs power iteration for the dominant eigenvalue of the Hermitian PSD map
/// `w ↦ shift·w − s·AᴴA w` where `s = ±1`, returning the Rayleigh quotient.
fn power_iterate(op: &OperatorExpr, shift: f64, sign: f64, cfg: &PowerIteration) -> Result<f64> {
    if cfg.max_iters == 0 {
        return Err(Error::InvalidConfig("max_iters must be at least 1".into()));
    }
    let mut w = unit_start(op.ncols(), cfg.seed);
    let mut prev: Option<f64> = None;
    let mut rho = 0.0;
    for _ in 0..cfg.max_iters {
        let aw = op.forward(&w)?;
        rho = shift - sign * norm_sqr(&aw);
        let mut next = op.adjoint_apply(&aw)?;
        for (n, wi) in next.iter_mut().zip(w.iter()) {
            *n = wi * shift - *n * sign;
        }
        let norm = norm2(&next);
        if norm == 0.0 {
            // w is in the null space of the iterated map
            return Ok(rho);
        }
        if let Some(p) = prev {
            if (rho - p).abs() <= cfg.tol * rho.abs() {
                return Ok(rho);
            }
        }
        prev = Some(rho);
        next.iter_mut().for_each(|v| *v /= norm);
        w = next;
    }
    Err(Error::NotConverged {
        iterations: cfg.max_iters,
        estimate: rho,
    })
}

/// Largest singular value of `op`.
pub fn max_singular_value(op: &OperatorExpr, cfg: &PowerIteration) -> Result<f64> {
    power_iterate(op, 0.0, -1.0, cfg)
        .map(|lambda| math::sqrt(lambda.max(0.0)))
        .map_err(|e| match e {
            Error::NotConverged { iterations, estimate } => Error::NotConverged {
                iterations,
                estimate: math::sqrt(estimate.max(0.0)),
            },
            other => other,
        })
}

/// Smallest singular value of `op` given an estimate of the largest.
///
/// Iterates on `(1.01 σ_max²) I − AᴴA`, whose top eigenvalue is
/// `1.01 σ_max² − λ_min(AᴴA)`. Convergence is slow when the bottom of the
/// spectrum is clustered.
pub fn min_singular_value(op: &OperatorExpr, sigma_max: f64, cfg: &PowerIteration) -> Result<f64> {
    let shift = 1.01 * sigma_max * sigma_max;
    if shift == 0.0 {
        return Ok(0.0);
    }
    let to_sigma = |rho: f64| math::sqrt((shift - rho).max(0.0));
    power_iterate(op, shift, 1.0, cfg)
        .map(to_sigma)
        .map_err(|e| match e {
            Error::NotConverged { iterations, estimate } => Error::NotConverged {
                iterations,
                estimate: to_sigma(estimate),
            },
            other => other,
        })
}

/// `σ_max / σ_min`. Rank-deficient operators yield
/// [`Error::InfiniteCondition`].
pub fn cond(op: &OperatorExpr, cfg: &PowerIteration) -> Result<f64> {
    let sigma_max = max_singular_value(op, cfg)?;
    let sigma_min = min_singular_value(op, sigma_max, cfg)?;
    if sigma_max == 0.0 || sigma_min <= RANK_RTOL * sigma_max {
        return Err(Error::InfiniteCondition { sigma_max, sigma_min });
    }
    Ok(sigma_max / sigma_min)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ops::{Diagonal, Identity, Restriction};
    use crate::c64;

    fn diag(d: &[f64]) -> OperatorExpr {
        Diagonal::from_real(d).unwrap().into()
    }

    #[test]
    fn identity_dottest_is_exact() {
        let r = dottest(&Identity::new(8).unwrap().into(), 10, 1e-12, 7);
        assert!(r.passed);
        assert!(r.worst_relative_error <= 1e-15);
        assert_eq!(r.trials, 10);
    }

    #[test]
    fn dottest_is_deterministic() {
        let op = diag(&[1.0, -2.0, 3.5]);
        assert_eq!(dottest(&op, 5, 1e-10, 11), dottest(&op, 5, 1e-10, 11));
    }

    #[test]
    fn singular_values_of_diagonal() {
        let cfg = PowerIteration::default();
        let op = diag(&[1.0, 2.0, 3.0, 4.0]);
        let smax = max_singular_value(&op, &cfg).unwrap();
        assert!((smax - 4.0).abs() < 1e-6);
        assert!((min_singular_value(&op, smax, &cfg).unwrap() - 1.0).abs() < 1e-6);
        let scaled = OperatorExpr::scale(c64(3.0, 0.0), &Identity::new(5).unwrap().into());
        assert!((max_singular_value(&scaled, &cfg).unwrap() - 3.0).abs() < 1e-6);
    }

    #[test]
    fn cond_examples() {
        let cfg = PowerIteration::default();
        let eye: OperatorExpr = Identity::new(6).unwrap().into();
        assert!((cond(&eye, &cfg).unwrap() - 1.0).abs() < 1e-6);
        assert!((min_singular_value(&eye, 1.0, &cfg).unwrap() - 1.0).abs() < 1e-6);
        assert!((cond(&diag(&[1.0, 10.0]), &cfg).unwrap() - 10.0).abs() < 1e-5);
    }

    #[test]
    fn rank_deficient_restriction() {
        let cfg = PowerIteration::default();
        let r: OperatorExpr = Restriction::new(8, alloc::vec![0, 1, 2, 3]).unwrap().into();
        let smax = max_singular_value(&r, &cfg).unwrap();
        assert!(min_singular_value(&r, smax, &cfg).unwrap() < 1e-6);
        assert!(matches!(cond(&r, &cfg), Err(Error::InfiniteCondition { .. })));
    }

    #[test]
    fn non_convergence_reports_estimate() {
        let cfg = PowerIteration {
            tol: 1e-14,
            max_iters: 2,
            seed: 1,
        };
        let op = diag(&[1.0, 1.1, 1.2, 1.3, 1.4]);
        match max_singular_value(&op, &cfg) {
            Err(Error::NotConverged { iterations: 2, estimate }) => {
                assert!(estimate > 1.0 && estimate <= 1.4 + 1e-12)
            }
            other => panic!("expected NotConverged, got {other:?}"),
        }
    }
}
