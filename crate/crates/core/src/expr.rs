//! The composition algebra.
//!
//! Block layout: `VStack` concatenates child outputs in child order, and
//! `HStack` slices its input contiguously in child order.

use alloc::sync::Arc;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use crate::error::{Error, Result};
use crate::operator::{LinearOperator, Mode, Shape};
use crate::vector::{check_finite, ComplexVector, C64};

#[derive(Debug)]
pub enum Node {
    Leaf(Arc<dyn LinearOperator>),
    Sum(OperatorExpr, OperatorExpr),
    Scale(C64, OperatorExpr),
    /// `Compose(a, b)` applies `b` first, then `a`.
    Compose(OperatorExpr, OperatorExpr),
    Adjoint(OperatorExpr),
    VStack(Vec<OperatorExpr>),
    HStack(Vec<OperatorExpr>),
}

#[derive(Debug)]
struct Inner {
    node: Node,
    shape: Shape,
}

/// Immutable, cheaply clonable expression tree over leaf operators.
///
/// Every constructor checks shapes, so a tree that exists can always be
/// applied to vectors of the right length.
#[derive(Clone)]
pub struct OperatorExpr(Arc<Inner>);

impl fmt::Debug for OperatorExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("OperatorExpr")
            .field("shape", &self.0.shape)
            .field("node", &self.0.node)
            .finish()
    }
}

impl<T: LinearOperator + 'static> From<T> for OperatorExpr {
    fn from(op: T) -> Self {
        Self::leaf(op)
    }
}

impl OperatorExpr {
    fn new(node: Node, shape: Shape) -> Self {
        Self(Arc::new(Inner { node, shape }))
    }

    pub fn leaf<T: LinearOperator + 'static>(op: T) -> Self {
        Self::from_shared(Arc::new(op))
    }

    pub fn from_shared(op: Arc<dyn LinearOperator>) -> Self {
        let shape = op.shape();
        Self::new(Node::Leaf(op), shape)
    }

    pub fn sum(left: &Self, right: &Self) -> Result<Self> {
        if left.shape() != right.shape() {
            return Err(Error::ShapeMismatch {
                combinator: "sum",
                left: left.shape(),
                right: right.shape(),
            });
        }
        Ok(Self::new(Node::Sum(left.clone(), right.clone()), left.shape()))
    }

    pub fn scale(alpha: C64, inner: &Self) -> Self {
        Self::new(Node::Scale(alpha, inner.clone()), inner.shape())
    }

    /// The chain `left · right`: `right` is applied first.
    pub fn compose(left: &Self, right: &Self) -> Result<Self> {
        if left.ncols() != right.nrows() {
            return Err(Error::ShapeMismatch {
                combinator: "compose",
                left: left.shape(),
                right: right.shape(),
            });
        }
        let shape = Shape::new_unchecked(left.nrows(), right.ncols());
        Ok(Self::new(Node::Compose(left.clone(), right.clone()), shape))
    }

    pub fn adjoint(inner: &Self) -> Self {
        Self::new(Node::Adjoint(inner.clone()), inner.shape().transposed())
    }

    pub fn vstack(children: &[Self]) -> Result<Self> {
        let first = Self::first_block("vstack", children)?;
        let mut nrows = 0;
        for child in children {
            if child.ncols() != first.ncols() {
                return Err(Error::ShapeMismatch {
                    combinator: "vstack",
                    left: first.shape(),
                    right: child.shape(),
                });
            }
            nrows += child.nrows();
        }
        let shape = Shape::new_unchecked(nrows, first.ncols());
        Ok(Self::new(Node::VStack(children.to_vec()), shape))
    }

    pub fn hstack(children: &[Self]) -> Result<Self> {
        let first = Self::first_block("hstack", children)?;
        let mut ncols = 0;
        for child in children {
            if child.nrows() != first.nrows() {
                return Err(Error::ShapeMismatch {
                    combinator: "hstack",
                    left: first.shape(),
                    right: child.shape(),
                });
            }
            ncols += child.ncols();
        }
        let shape = Shape::new_unchecked(first.nrows(), ncols);
        Ok(Self::new(Node::HStack(children.to_vec()), shape))
    }

    fn first_block<'a>(combinator: &'static str, children: &'a [Self]) -> Result<&'a Self> {
        children.first().ok_or_else(|| Error::InvalidOperator {
            operator: combinator,
            reason: "at least one block is required".into(),
        })
    }

    /// Shorthand for `OperatorExpr::adjoint(self)`.
    pub fn h(&self) -> Self {
        Self::adjoint(self)
    }

    pub fn node(&self) -> &Node {
        &self.0.node
    }

    pub fn shape(&self) -> Shape {
        self.0.shape
    }

    pub fn nrows(&self) -> usize {
        self.0.shape.nrows()
    }

    pub fn ncols(&self) -> usize {
        self.0.shape.ncols()
    }

    /// True only for a leaf backed by a stored matrix.
    pub fn explicit(&self) -> bool {
        match &self.0.node {
            Node::Leaf(op) => op.explicit(),
            _ => false,
        }
    }

    /// Depth of the tree; a bare leaf has depth zero.
    pub fn depth(&self) -> usize {
        match &self.0.node {
            Node::Leaf(_) => 0,
            Node::Scale(_, e) | Node::Adjoint(e) => 1 + e.depth(),
            Node::Sum(a, b) | Node::Compose(a, b) => 1 + a.depth().max(b.depth()),
            Node::VStack(c) | Node::HStack(c) => 1 + c.iter().map(Self::depth).max().unwrap_or(0),
        }
    }

    /// Visits every leaf, left to right.
    pub fn for_each_leaf(&self, f: &mut dyn FnMut(&dyn LinearOperator)) {
        match &self.0.node {
            Node::Leaf(op) => f(op.as_ref()),
            Node::Scale(_, e) | Node::Adjoint(e) => e.for_each_leaf(f),
            Node::Sum(a, b) | Node::Compose(a, b) => {
                a.for_each_leaf(f);
                b.for_each_leaf(f);
            }
            Node::VStack(c) | Node::HStack(c) => c.iter().for_each(|e| e.for_each_leaf(f)),
        }
    }

    /// `A x`
    pub fn forward(&self, x: &[C64]) -> Result<ComplexVector> {
        self.apply(Mode::Forward, x)
    }

    /// `Aᴴ y`
    pub fn adjoint_apply(&self, y: &[C64]) -> Result<ComplexVector> {
        self.apply(Mode::Adjoint, y)
    }

    pub fn apply(&self, mode: Mode, input: &[C64]) -> Result<ComplexVector> {
        let shape = self.shape();
        let expected = shape.input_len(mode);
        if input.len() != expected {
            return Err(Error::LengthMismatch {
                shape,
                expected,
                got: input.len(),
            });
        }
        check_finite(input)?;
        let mut out = ComplexVector::zeros(shape.output_len(mode));
        self.apply_into(mode, input, &mut out);
        Ok(out)
    }

    /// Overwrites `output` with the application of the tree in `mode`.
    /// Lengths must already match the shape.
    pub(crate) fn apply_into(&self, mode: Mode, input: &[C64], output: &mut [C64]) {
        debug_assert_eq!(input.len(), self.shape().input_len(mode));
        debug_assert_eq!(output.len(), self.shape().output_len(mode));
        match &self.0.node {
            Node::Leaf(op) => op.apply_into(mode, input, output),
            Node::Sum(a, b) => {
                a.apply_into(mode, input, output);
                let mut tmp = vec![C64::default(); output.len()];
                b.apply_into(mode, input, &mut tmp);
                for (o, t) in output.iter_mut().zip(&tmp) {
                    *o += t;
                }
            }
            Node::Scale(alpha, e) => {
                e.apply_into(mode, input, output);
                let s = match mode {
                    Mode::Forward => *alpha,
                    Mode::Adjoint => alpha.conj(),
                };
                output.iter_mut().for_each(|o| *o *= s);
            }
            Node::Compose(a, b) => {
                let (first, second) = match mode {
                    Mode::Forward => (b, a),
                    Mode::Adjoint => (a, b),
                };
                let mut mid = vec![C64::default(); first.shape().output_len(mode)];
                first.apply_into(mode, input, &mut mid);
                second.apply_into(mode, &mid, output);
            }
            Node::Adjoint(e) => e.apply_into(mode.flip(), input, output),
            Node::VStack(children) => match mode {
                Mode::Forward => concat_blocks(children, mode, input, output),
                Mode::Adjoint => sum_blocks(children, mode, input, output),
            },
            Node::HStack(children) => match mode {
                Mode::Forward => sum_blocks(children, mode, input, output),
                Mode::Adjoint => concat_blocks(children, mode, input, output),
            },
        }
    }
}

/// Each child sees the whole input and writes its own output slice.
fn concat_blocks(children: &[OperatorExpr], mode: Mode, input: &[C64], output: &mut [C64]) {
    let mut offset = 0;
    for child in children {
        let len = child.shape().output_len(mode);
        child.apply_into(mode, input, &mut output[offset..offset + len]);
        offset += len;
    }
}

/// Each child reads its own input slice; outputs are summed.
fn sum_blocks(children: &[OperatorExpr], mode: Mode, input: &[C64], output: &mut [C64]) {
    output.iter_mut().for_each(|o| *o = C64::default());
    let mut tmp = vec![C64::default(); output.len()];
    let mut offset = 0;
    for child in children {
        let len = child.shape().input_len(mode);
        child.apply_into(mode, &input[offset..offset + len], &mut tmp);
        for (o, t) in output.iter_mut().zip(&tmp) {
            *o += t;
        }
        offset += len;
    }
}
