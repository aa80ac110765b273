use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::expr::OperatorExpr;
use crate::math;
use crate::ops::{materialize, DenseMatrix};
use crate::vector::{check_finite, ComplexVector, C64};

/// Pivots below this fraction of the largest Gram diagonal count as zero.
const PIVOT_RTOL: f64 = 1e-12;

/// `x = (AᴴA)⁻¹ Aᴴ y` via a Cholesky factorization of the materialized
/// Gram matrix. Fails with [`Error::SingularGram`] when `A` has a
/// non-trivial null space; use a regularized inversion in that case.
pub fn direct_lstsq(op: &OperatorExpr, y: &[C64]) -> Result<ComplexVector> {
    if y.len() != op.nrows() {
        return Err(Error::LengthMismatch {
            shape: op.shape(),
            expected: op.nrows(),
            got: y.len(),
        });
    }
    check_finite(y)?;
    let a = materialize(op)?;
    let ah = a.conj_transpose();
    let gram = ah.matmul(&a);
    let rhs = ah.matvec(y);
    cholesky_solve(&gram, &rhs).map(ComplexVector::from)
}

/// Solves `G x = b` for Hermitian positive-definite `G`.
pub fn cholesky_solve(gram: &DenseMatrix, b: &[C64]) -> Result<Vec<C64>> {
    let n = gram.nrows();
    assert_eq!(n, gram.ncols(), "Gram matrix must be square");
    assert_eq!(n, b.len(), "right-hand side length mismatch");

    let max_diag = (0..n).map(|i| gram.get(i, i).re).fold(0.0_f64, f64::max);
    // lower factor, row-major
    let mut l = alloc::vec![C64::default(); n * n];
    for j in 0..n {
        let mut d = gram.get(j, j).re;
        for k in 0..j {
            d -= l[j * n + k].norm_sqr();
        }
        if !(d > PIVOT_RTOL * max_diag) || !d.is_finite() {
            return Err(Error::SingularGram { column: j, pivot: d });
        }
        let ljj = math::sqrt(d);
        l[j * n + j] = C64::new(ljj, 0.0);
        for i in j + 1..n {
            let mut v = gram.get(i, j);
            for k in 0..j {
                v -= l[i * n + k] * l[j * n + k].conj();
            }
            l[i * n + j] = v / ljj;
        }
    }

    let mut z = b.to_vec();
    for i in 0..n {
        for k in 0..i {
            let t = l[i * n + k] * z[k];
            z[i] -= t;
        }
        z[i] /= l[i * n + i];
    }
    for i in (0..n).rev() {
        for k in i + 1..n {
            let t = l[k * n + i].conj() * z[k];
            z[i] -= t;
        }
        z[i] /= l[i * n + i];
    }
    Ok(z)
}
