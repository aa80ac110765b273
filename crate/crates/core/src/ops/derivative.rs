use alloc::format;

use super::invalid;
use crate::error::Result;
use crate::operator::{Footprint, LeafKind, LinearOperator, Shape};
use crate::vector::C64;

fn check_step(operator: &'static str, dx: f64) -> Result<()> {
    if !(dx.is_finite() && dx > 0.0) {
        return Err(invalid(operator, format!("dx must be positive and finite, got {dx}")));
    }
    Ok(())
}

/// Two-point forward difference `y_i = (x_{i+1} - x_i) / dx`, shape `(n-1, n)`.
#[derive(Debug, Clone)]
pub struct FirstDerivative {
    n: usize,
    dx: f64,
}

impl FirstDerivative {
    pub fn new(n: usize, dx: f64) -> Result<Self> {
        if n < 2 {
            return Err(invalid("first derivative", format!("needs n >= 2, got {n}")));
        }
        check_step("first derivative", dx)?;
        Ok(Self { n, dx })
    }

    pub fn dx(&self) -> f64 {
        self.dx
    }
}

impl LinearOperator for FirstDerivative {
    fn shape(&self) -> Shape {
        Shape::new_unchecked(self.n - 1, self.n)
    }

    fn forward_into(&self, x: &[C64], y: &mut [C64]) {
        let inv = 1.0 / self.dx;
        for (yi, w) in y.iter_mut().zip(x.windows(2)) {
            *yi = (w[1] - w[0]) * inv;
        }
    }

    fn adjoint_into(&self, y: &[C64], x: &mut [C64]) {
        let inv = 1.0 / self.dx;
        let last = self.n - 1;
        x[0] = -y[0] * inv;
        for i in 1..last {
            x[i] = (y[i - 1] - y[i]) * inv;
        }
        x[last] = y[last - 1] * inv;
    }

    fn footprint(&self) -> Footprint {
        Footprint {
            scalars: 1,
            ..Footprint::default()
        }
    }

    fn kind(&self) -> LeafKind {
        LeafKind::FirstDerivative
    }

    fn name(&self) -> &str {
        "first derivative"
    }
}

/// Three-point stencil `y_i = (x_i - 2 x_{i+1} + x_{i+2}) / dx²`, shape `(n-2, n)`.
#[derive(Debug, Clone)]
pub struct SecondDerivative {
    n: usize,
    dx: f64,
}

impl SecondDerivative {
    pub fn new(n: usize, dx: f64) -> Result<Self> {
        if n < 3 {
            return Err(invalid("second derivative", format!("needs n >= 3, got {n}")));
        }
        check_step("second derivative", dx)?;
        Ok(Self { n, dx })
    }

    pub fn dx(&self) -> f64 {
        self.dx
    }
}

impl LinearOperator for SecondDerivative {
    fn shape(&self) -> Shape {
        Shape::new_unchecked(self.n - 2, self.n)
    }

    fn forward_into(&self, x: &[C64], y: &mut [C64]) {
        let inv = 1.0 / (self.dx * self.dx);
        for (yi, w) in y.iter_mut().zip(x.windows(3)) {
            *yi = (w[0] - w[1] * 2.0 + w[2]) * inv;
        }
    }

    fn adjoint_into(&self, y: &[C64], x: &mut [C64]) {
        let inv = 1.0 / (self.dx * self.dx);
        x.iter_mut().for_each(|v| *v = C64::default());
        for (i, yi) in y.iter().enumerate() {
            let s = yi * inv;
            x[i] += s;
            x[i + 1] -= s * 2.0;
            x[i + 2] += s;
        }
    }

    fn footprint(&self) -> Footprint {
        Footprint {
            scalars: 1,
            ..Footprint::default()
        }
    }

    fn kind(&self) -> LeafKind {
        LeafKind::SecondDerivative
    }

    fn name(&self) -> &str {
        "second derivative"
    }
}
