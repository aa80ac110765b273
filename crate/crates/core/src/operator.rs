use alloc::format;
use core::fmt;

use crate::error::{Error, Result};
use crate::vector::C64;

/// Operator dimensions: `nrows` is the data-space length, `ncols` the
/// model-space length. Both are at least one.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Shape {
    nrows: usize,
    ncols: usize,
}

impl Shape {
    pub fn new(nrows: usize, ncols: usize) -> Result<Self> {
        if nrows == 0 || ncols == 0 {
            return Err(Error::InvalidOperator {
                operator: "shape",
                reason: format!("dimensions must be positive, got ({nrows}, {ncols})"),
            });
        }
        Ok(Self { nrows, ncols })
    }

    pub(crate) const fn new_unchecked(nrows: usize, ncols: usize) -> Self {
        Self { nrows, ncols }
    }

    #[inline]
    pub fn nrows(&self) -> usize {
        self.nrows
    }

    #[inline]
    pub fn ncols(&self) -> usize {
        self.ncols
    }

    pub fn transposed(&self) -> Self {
        Self::new_unchecked(self.ncols, self.nrows)
    }

    pub fn entries(&self) -> usize {
        self.nrows.saturating_mul(self.ncols)
    }

    pub fn is_square(&self) -> bool {
        self.nrows == self.ncols
    }

    /// Length of the vector consumed when applying in `mode`.
    pub fn input_len(&self, mode: Mode) -> usize {
        match mode {
            Mode::Forward => self.ncols,
            Mode::Adjoint => self.nrows,
        }
    }

    /// Length of the vector produced when applying in `mode`.
    pub fn output_len(&self, mode: Mode) -> usize {
        match mode {
            Mode::Forward => self.nrows,
            Mode::Adjoint => self.ncols,
        }
    }
}

impl fmt::Display for Shape {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.nrows, self.ncols)
    }
}

/// Direction of an application.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Mode {
    Forward,
    Adjoint,
}

impl Mode {
    pub fn flip(self) -> Self {
        match self {
            Mode::Forward => Mode::Adjoint,
            Mode::Adjoint => Mode::Forward,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum LeafKind {
    Identity,
    Diagonal,
    DenseMatrix,
    Restriction,
    FirstDerivative,
    SecondDerivative,
    Dft,
    /// Any operator defined outside this crate.
    Custom,
}

/// Number of elements an operator keeps in memory, by category.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct Footprint {
    /// Stored integer indices.
    pub indices: usize,
    /// Stored scalars (step sizes, diagonal entries, matrix entries).
    pub scalars: usize,
    /// Precomputed tables such as FFT twiddles.
    pub auxiliary: usize,
}

impl Footprint {
    pub fn total(&self) -> usize {
        self.indices + self.scalars + self.auxiliary
    }
}

/// A leaf operator: a shape and a forward/adjoint pair.
///
/// Callers guarantee `x.len() == ncols` and `y.len() == nrows` in
/// `forward_into`, and the reverse in `adjoint_into`. Outputs are
/// overwritten, not accumulated into.
pub trait LinearOperator: fmt::Debug + Send + Sync {
    fn shape(&self) -> Shape;

    fn forward_into(&self, x: &[C64], y: &mut [C64]);

    fn adjoint_into(&self, y: &[C64], x: &mut [C64]);

    fn footprint(&self) -> Footprint;

    fn kind(&self) -> LeafKind {
        LeafKind::Custom
    }

    /// Whether the operator is backed by a stored matrix.
    fn explicit(&self) -> bool {
        false
    }

    fn name(&self) -> &str {
        "custom"
    }

    fn apply_into(&self, mode: Mode, input: &[C64], output: &mut [C64]) {
        match mode {
            Mode::Forward => self.forward_into(input, output),
            Mode::Adjoint => self.adjoint_into(input, output),
        }
    }
}
