use alloc::format;
use alloc::vec;
use alloc::vec::Vec;

use super::invalid;
use crate::error::{Error, Result};
use crate::expr::OperatorExpr;
use crate::operator::{Footprint, LeafKind, LinearOperator, Mode, Shape};
use crate::vector::{check_finite, C64};

/// Largest number of entries [`materialize`] will build: 2²⁰.
pub const DEFAULT_MATERIALIZE_CAP: usize = 1 << 20;

/// Explicit row-major complex matrix. The only leaf with `explicit() == true`.
#[derive(Debug, Clone, PartialEq)]
pub struct DenseMatrix {
    nrows: usize,
    ncols: usize,
    data: Vec<C64>,
}

impl DenseMatrix {
    /// `data` is row-major with `nrows * ncols` finite entries.
    pub fn new(nrows: usize, ncols: usize, data: Vec<C64>) -> Result<Self> {
        Shape::new(nrows, ncols)?;
        if data.len() != nrows * ncols {
            return Err(invalid(
                "dense matrix",
                format!("expected {} entries, got {}", nrows * ncols, data.len()),
            ));
        }
        check_finite(&data).map_err(|_| invalid("dense matrix", "entries must be finite"))?;
        Ok(Self { nrows, ncols, data })
    }

    pub fn from_rows(rows: &[Vec<C64>]) -> Result<Self> {
        let ncols = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|r| r.len() != ncols) {
            return Err(invalid("dense matrix", "rows have different lengths"));
        }
        Self::new(rows.len(), ncols, rows.concat())
    }

    pub fn from_real_rows(rows: &[&[f64]]) -> Result<Self> {
        let rows: Vec<Vec<C64>> = rows
            .iter()
            .map(|r| r.iter().map(|&v| C64::new(v, 0.0)).collect())
            .collect();
        Self::from_rows(&rows)
    }

    pub fn nrows(&self) -> usize {
        self.nrows
    }

    pub fn ncols(&self) -> usize {
        self.ncols
    }

    pub fn data(&self) -> &[C64] {
        &self.data
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> C64 {
        self.data[i * self.ncols + j]
    }

    pub fn row(&self, i: usize) -> &[C64] {
        &self.data[i * self.ncols..(i + 1) * self.ncols]
    }

    pub fn conj_transpose(&self) -> Self {
        let mut data = Vec::with_capacity(self.data.len());
        for j in 0..self.ncols {
            data.extend((0..self.nrows).map(|i| self.get(i, j).conj()));
        }
        Self {
            nrows: self.ncols,
            ncols: self.nrows,
            data,
        }
    }

    /// Plain matrix product `self · other`.
    pub fn matmul(&self, other: &Self) -> Self {
        assert_eq!(self.ncols, other.nrows, "matmul shape mismatch");
        let mut data = vec![C64::default(); self.nrows * other.ncols];
        for i in 0..self.nrows {
            let out = &mut data[i * other.ncols..(i + 1) * other.ncols];
            for (k, a) in self.row(i).iter().enumerate() {
                for (o, b) in out.iter_mut().zip(other.row(k)) {
                    *o += a * b;
                }
            }
        }
        Self {
            nrows: self.nrows,
            ncols: other.ncols,
            data,
        }
    }

    pub fn matvec(&self, x: &[C64]) -> Vec<C64> {
        let mut y = vec![C64::default(); self.nrows];
        self.forward_into(x, &mut y);
        y
    }
}

impl LinearOperator for DenseMatrix {
    fn shape(&self) -> Shape {
        Shape::new_unchecked(self.nrows, self.ncols)
    }

    fn forward_into(&self, x: &[C64], y: &mut [C64]) {
        for (i, yi) in y.iter_mut().enumerate() {
            *yi = self.row(i).iter().zip(x).map(|(a, b)| a * b).sum();
        }
    }

    fn adjoint_into(&self, y: &[C64], x: &mut [C64]) {
        x.iter_mut().for_each(|v| *v = C64::default());
        for (i, yi) in y.iter().enumerate() {
            for (xj, a) in x.iter_mut().zip(self.row(i)) {
                *xj += a.conj() * yi;
            }
        }
    }

    fn footprint(&self) -> Footprint {
        Footprint {
            scalars: self.data.len(),
            ..Footprint::default()
        }
    }

    fn kind(&self) -> LeafKind {
        LeafKind::DenseMatrix
    }

    fn explicit(&self) -> bool {
        true
    }

    fn name(&self) -> &str {
        "dense"
    }
}

/// Builds the dense matrix of `expr` column by column from `A e_j`.
pub fn materialize(expr: &OperatorExpr) -> Result<DenseMatrix> {
    materialize_with_cap(expr, DEFAULT_MATERIALIZE_CAP)
}

pub fn materialize_with_cap(expr: &OperatorExpr, cap: usize) -> Result<DenseMatrix> {
    let (nrows, ncols) = (expr.nrows(), expr.ncols());
    let entries = expr.shape().entries();
    if entries > cap {
        return Err(Error::MaterializeCap { entries, cap });
    }
    let mut data = vec![C64::default(); entries];
    let mut basis = vec![C64::default(); ncols];
    let mut column = vec![C64::default(); nrows];
    for j in 0..ncols {
        basis[j] = C64::new(1.0, 0.0);
        expr.apply_into(Mode::Forward, &basis, &mut column);
        basis[j] = C64::default();
        for (i, v) in column.iter().enumerate() {
            data[i * ncols + j] = *v;
        }
    }
    Ok(DenseMatrix { nrows, ncols, data })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::c64;
    use crate::ops::{FirstDerivative, Identity};

    #[test]
    fn materialize_identity_and_derivative() {
        let eye = materialize(&Identity::new(2).unwrap().into()).unwrap();
        assert_eq!(eye, DenseMatrix::from_real_rows(&[&[1.0, 0.0], &[0.0, 1.0]]).unwrap());
        let d = materialize(&FirstDerivative::new(3, 1.0).unwrap().into()).unwrap();
        assert_eq!(
            d,
            DenseMatrix::from_real_rows(&[&[-1.0, 1.0, 0.0], &[0.0, -1.0, 1.0]]).unwrap()
        );
    }

    #[test]
    fn cap_is_enforced() {
        let e: OperatorExpr = Identity::new(2048).unwrap().into();
        let err = materialize(&e).unwrap_err();
        assert_eq!(err, Error::MaterializeCap { entries: 1 << 22, cap: 1 << 20 });
        assert!(materialize_with_cap(&Identity::new(4).unwrap().into(), 15).is_err());
    }

    #[test]
    fn dense_forward_and_adjoint() {
        let a = DenseMatrix::from_rows(&[
            vec![c64(1.0, 1.0), c64(2.0, 0.0)],
            vec![c64(0.0, -1.0), c64(3.0, 2.0)],
            vec![c64(1.0, 0.0), c64(0.0, 0.0)],
        ])
        .unwrap();
        let x = [c64(1.0, 0.0), c64(0.0, 1.0)];
        assert_eq!(a.matvec(&x), vec![c64(1.0, 3.0), c64(-2.0, 2.0), c64(1.0, 0.0)]);
        let ah = a.conj_transpose();
        let y = [c64(1.0, 0.0), c64(1.0, 0.0), c64(0.0, 1.0)];
        let mut out = [C64::default(); 2];
        a.adjoint_into(&y, &mut out);
        assert_eq!(out.to_vec(), ah.matvec(&y));
    }

    #[test]
    fn rejects_ragged_rows() {
        assert!(DenseMatrix::from_real_rows(&[&[1.0, 2.0], &[3.0]]).is_err());
        assert!(DenseMatrix::new(2, 2, vec![C64::default(); 3]).is_err());
    }
}
