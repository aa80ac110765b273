use alloc::vec::Vec;
use core::ops::{Deref, DerefMut};

use num_complex::Complex;

use crate::error::{Error, Result};
use crate::math;

/// Complex double-precision scalar.
pub type C64 = Complex<f64>;

#[inline]
pub const fn c64(re: f64, im: f64) -> C64 {
    Complex::new(re, im)
}

/// Dense vector of complex scalars; the container for models and data.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct ComplexVector(Vec<C64>);

impl ComplexVector {
    pub fn zeros(len: usize) -> Self {
        Self(alloc::vec![C64::new(0.0, 0.0); len])
    }

    /// Embeds a real sequence with zero imaginary parts.
    pub fn from_real(values: &[f64]) -> Self {
        Self(values.iter().map(|&v| c64(v, 0.0)).collect())
    }

    pub fn into_inner(self) -> Vec<C64> {
        self.0
    }

    pub fn as_slice(&self) -> &[C64] {
        &self.0
    }

    pub fn real_parts(&self) -> Vec<f64> {
        self.0.iter().map(|z| z.re).collect()
    }

    pub fn norm(&self) -> f64 {
        norm2(&self.0)
    }
}

impl Deref for ComplexVector {
    type Target = [C64];

    fn deref(&self) -> &[C64] {
        &self.0
    }
}

impl DerefMut for ComplexVector {
    fn deref_mut(&mut self) -> &mut [C64] {
        &mut self.0
    }
}

impl From<Vec<C64>> for ComplexVector {
    fn from(v: Vec<C64>) -> Self {
        Self(v)
    }
}

impl From<ComplexVector> for Vec<C64> {
    fn from(v: ComplexVector) -> Self {
        v.0
    }
}

impl FromIterator<C64> for ComplexVector {
    fn from_iter<I: IntoIterator<Item = C64>>(iter: I) -> Self {
        Self(iter.into_iter().collect())
    }
}

/// Fails on the first NaN or infinite component.
pub(crate) fn check_finite(x: &[C64]) -> Result<()> {
    match x.iter().position(|z| !z.re.is_finite() || !z.im.is_finite()) {
        Some(index) => Err(Error::NonFinite { index }),
        None => Ok(()),
    }
}

/// `⟨a, b⟩ = Σ a_i conj(b_i)`, conjugate-linear in the second argument.
pub(crate) fn inner(a: &[C64], b: &[C64]) -> C64 {
    a.iter().zip(b).map(|(x, y)| x * y.conj()).sum()
}

pub(crate) fn norm_sqr(a: &[C64]) -> f64 {
    a.iter().map(|z| z.norm_sqr()).sum()
}

pub(crate) fn norm2(a: &[C64]) -> f64 {
    math::sqrt(norm_sqr(a))
}

/// `y += alpha * x`
pub(crate) fn axpy(alpha: C64, x: &[C64], y: &mut [C64]) {
    for (yi, xi) in y.iter_mut().zip(x) {
        *yi += alpha * xi;
    }
}

pub(crate) fn diff_norm(a: &[C64], b: &[C64]) -> f64 {
    math::sqrt(a.iter().zip(b).map(|(x, y)| (x - y).norm_sqr()).sum())
}
