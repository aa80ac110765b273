use alloc::vec::Vec;

use super::invalid;
use crate::error::Result;
use crate::operator::{Footprint, LeafKind, LinearOperator, Shape};
use crate::vector::{check_finite, C64};

#[derive(Debug, Clone)]
pub struct Identity {
    n: usize,
}

impl Identity {
    pub fn new(n: usize) -> Result<Self> {
        if n == 0 {
            return Err(invalid("identity", "size must be positive"));
        }
        Ok(Self { n })
    }
}

impl LinearOperator for Identity {
    fn shape(&self) -> Shape {
        Shape::new_unchecked(self.n, self.n)
    }

    fn forward_into(&self, x: &[C64], y: &mut [C64]) {
        y.copy_from_slice(x);
    }

    fn adjoint_into(&self, y: &[C64], x: &mut [C64]) {
        x.copy_from_slice(y);
    }

    fn footprint(&self) -> Footprint {
        Footprint::default()
    }

    fn kind(&self) -> LeafKind {
        LeafKind::Identity
    }

    fn name(&self) -> &str {
        "identity"
    }
}

/// Elementwise multiplication by a fixed vector.
#[derive(Debug, Clone)]
pub struct Diagonal {
    diag: Vec<C64>,
}

impl Diagonal {
    pub fn new(diag: Vec<C64>) -> Result<Self> {
        if diag.is_empty() {
            return Err(invalid("diagonal", "diagonal must be non-empty"));
        }
        check_finite(&diag).map_err(|_| invalid("diagonal", "entries must be finite"))?;
        Ok(Self { diag })
    }

    pub fn from_real(diag: &[f64]) -> Result<Self> {
        Self::new(diag.iter().map(|&d| C64::new(d, 0.0)).collect())
    }

    pub fn diagonal(&self) -> &[C64] {
        &self.diag
    }
}

impl LinearOperator for Diagonal {
    fn shape(&self) -> Shape {
        Shape::new_unchecked(self.diag.len(), self.diag.len())
    }

    fn forward_into(&self, x: &[C64], y: &mut [C64]) {
        for ((yi, xi), di) in y.iter_mut().zip(x).zip(&self.diag) {
            *yi = di * xi;
        }
    }

    fn adjoint_into(&self, y: &[C64], x: &mut [C64]) {
        for ((xi, yi), di) in x.iter_mut().zip(y).zip(&self.diag) {
            *xi = di.conj() * yi;
        }
    }

    fn footprint(&self) -> Footprint {
        Footprint {
            scalars: self.diag.len(),
            ..Footprint::default()
        }
    }

    fn kind(&self) -> LeafKind {
        LeafKind::Diagonal
    }

    fn name(&self) -> &str {
        "diagonal"
    }
}
