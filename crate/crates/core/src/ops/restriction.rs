use alloc::format;
use alloc::vec::Vec;

use super::invalid;
use crate::error::Result;
use crate::operator::{Footprint, LeafKind, LinearOperator, Shape};
use crate::vector::C64;

/// Picks the samples of a length-`m` model at the stored indices.
///
/// Forward gathers `y_i = x[l_i]`; the adjoint scatters `y_i` back to
/// position `l_i` and leaves zeros elsewhere. Indices must be strictly
/// increasing and non-empty.
#[derive(Debug, Clone)]
pub struct Restriction {
    model_len: usize,
    indices: Vec<usize>,
}

impl Restriction {
    pub fn new(model_len: usize, indices: Vec<usize>) -> Result<Self> {
        if indices.is_empty() {
            return Err(invalid("restriction", "index list must be non-empty"));
        }
        if let Some(w) = indices.windows(2).find(|w| w[0] >= w[1]) {
            return Err(invalid(
                "restriction",
                format!("indices must be strictly increasing, found {} then {}", w[0], w[1]),
            ));
        }
        let last = indices[indices.len() - 1];
        if last >= model_len {
            return Err(invalid(
                "restriction",
                format!("index {last} out of range for model length {model_len}"),
            ));
        }
        Ok(Self { model_len, indices })
    }

    pub fn indices(&self) -> &[usize] {
        &self.indices
    }

    pub fn model_len(&self) -> usize {
        self.model_len
    }
}

impl LinearOperator for Restriction {
    fn shape(&self) -> Shape {
        Shape::new_unchecked(self.indices.len(), self.model_len)
    }

    fn forward_into(&self, x: &[C64], y: &mut [C64]) {
        for (yi, &l) in y.iter_mut().zip(&self.indices) {
            *yi = x[l];
        }
    }

    fn adjoint_into(&self, y: &[C64], x: &mut [C64]) {
        x.iter_mut().for_each(|v| *v = C64::default());
        for (yi, &l) in y.iter().zip(&self.indices) {
            x[l] = *yi;
        }
    }

    fn footprint(&self) -> Footprint {
        Footprint {
            indices: self.indices.len(),
            ..Footprint::default()
        }
    }

    fn kind(&self) -> LeafKind {
        LeafKind::Restriction
    }

    fn name(&self) -> &str {
        "restriction"
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::{ComplexVector, OperatorExpr};
    use alloc::vec;

    fn r(m: usize, l: &[usize]) -> OperatorExpr {
        OperatorExpr::leaf(Restriction::new(m, l.to_vec()).unwrap())
    }

    #[test]
    fn gathers_samples() {
        let x = ComplexVector::from_real(&[1.0, 2.0, 3.0, 4.0]);
        assert_eq!(r(4, &[0, 2]).forward(&x).unwrap(), ComplexVector::from_real(&[1.0, 3.0]));
        let x = ComplexVector::from_real(&[5.0, 6.0, 7.0, 8.0]);
        assert_eq!(r(4, &[3]).forward(&x).unwrap(), ComplexVector::from_real(&[8.0]));
        assert_eq!(r(4, &[0, 1, 2, 3]).forward(&x).unwrap(), x);
    }

    #[test]
    fn adjoint_scatters_with_zeros() {
        let y = ComplexVector::from_real(&[1.0, 3.0]);
        assert_eq!(
            r(4, &[0, 2]).adjoint_apply(&y).unwrap(),
            ComplexVector::from_real(&[1.0, 0.0, 3.0, 0.0])
        );
    }

    #[test]
    fn rejects_invalid_indices() {
        assert!(Restriction::new(3, vec![]).is_err());
        assert!(Restriction::new(4, vec![1, 1]).is_err());
        assert!(Restriction::new(4, vec![2, 1]).is_err());
        assert!(Restriction::new(4, vec![0, 4]).is_err());
    }

    #[test]
    fn adjoint_length_mismatch() {
        let err = r(4, &[0, 2]).adjoint_apply(&ComplexVector::zeros(3)).unwrap_err();
        assert!(matches!(err, crate::Error::LengthMismatch { expected: 2, got: 3, .. }));
    }
}
