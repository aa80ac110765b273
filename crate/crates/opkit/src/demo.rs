//! A deliberately wrong operator for exercising the dot-test.

use opkit_core::{Footprint, LinearOperator, Shape, C64};

/// Forward is a first difference; the "adjoint" just zero-pads its input,
/// ignoring the sign structure of the true transpose. Fails the dot-test.
#[derive(Debug, Clone)]
pub struct BrokenAdjoint {
    n: usize,
}

impl BrokenAdjoint {
    pub fn new(n: usize) -> opkit_core::Result<Self> {
        Shape::new(n.saturating_sub(1), n)?;
        Ok(Self { n })
    }
}

impl LinearOperator for BrokenAdjoint {
    fn shape(&self) -> Shape {
        Shape::new(self.n - 1, self.n).expect("checked in new")
    }

    fn forward_into(&self, x: &[C64], y: &mut [C64]) {
        for (yi, w) in y.iter_mut().zip(x.windows(2)) {
            *yi = w[1] - w[0];
        }
    }

    fn adjoint_into(&self, y: &[C64], x: &mut [C64]) {
        x[..y.len()].copy_from_slice(y);
        x[y.len()..].fill(C64::default());
    }

    fn footprint(&self) -> Footprint {
        Footprint::default()
    }

    fn name(&self) -> &str {
        "broken-demo"
    }
}
