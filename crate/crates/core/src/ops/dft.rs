use alloc::format;
use alloc::vec::Vec;
use core::f64::consts::PI;

use super::invalid;
use crate::error::Result;
use crate::math;
use crate::operator::{Footprint, LeafKind, LinearOperator, Shape};
use crate::vector::C64;

/// Unitary discrete Fourier transform of power-of-two length.
///
/// Forward: `X_k = N^{-1/2} Σ_n x_n e^{-2πikn/N}`. The adjoint uses the
/// opposite sign and the same scaling, so it is also the inverse. Both run
/// as an iterative radix-2 FFT over a table of `N/2` twiddles.
#[derive(Debug, Clone)]
pub struct Dft {
    n: usize,
    log2n: u32,
    /// `e^{-2πik/N}` for `k < N/2`.
    twiddles: Vec<C64>,
}

impl Dft {
    pub fn new(n: usize) -> Result<Self> {
        if n == 0 || !n.is_power_of_two() {
            return Err(invalid("dft", format!("length must be a power of two, got {n}")));
        }
        let twiddles = (0..n / 2)
            .map(|k| {
                let theta = -2.0 * PI * k as f64 / n as f64;
                C64::new(math::cos(theta), math::sin(theta))
            })
            .collect();
        Ok(Self {
            n,
            log2n: n.trailing_zeros(),
            twiddles,
        })
    }

    pub fn len(&self) -> usize {
        self.n
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    fn transform(&self, input: &[C64], out: &mut [C64], inverse: bool) {
        let n = self.n;
        if n == 1 {
            out[0] = input[0];
            return;
        }
        let shift = usize::BITS - self.log2n;
        for (i, v) in input.iter().enumerate() {
            out[i.reverse_bits() >> shift] = *v;
        }
        let mut half = 1;
        while half < n {
            let stride = n / (2 * half);
            for start in (0..n).step_by(2 * half) {
                for k in 0..half {
                    let w = self.twiddles[k * stride];
                    let w = if inverse { w.conj() } else { w };
                    let a = out[start + k];
                    let b = out[start + k + half] * w;
                    out[start + k] = a + b;
                    out[start + k + half] = a - b;
                }
            }
            half *= 2;
        }
        let scale = 1.0 / math::sqrt(n as f64);
        out.iter_mut().for_each(|v| *v *= scale);
    }
}

impl LinearOperator for Dft {
    fn shape(&self) -> Shape {
        Shape::new_unchecked(self.n, self.n)
    }

    fn forward_into(&self, x: &[C64], y: &mut [C64]) {
        self.transform(x, y, false);
    }

    fn adjoint_into(&self, y: &[C64], x: &mut [C64]) {
        self.transform(y, x, true);
    }

    fn footprint(&self) -> Footprint {
        Footprint {
            auxiliary: self.twiddles.len(),
            ..Footprint::default()
        }
    }

    fn kind(&self) -> LeafKind {
        LeafKind::Dft
    }

    fn name(&self) -> &str {
        "dft"
    }
}
