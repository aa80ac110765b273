//! Seeded random inputs: complex Gaussian vectors, dense matrices, sample
//! index sets and random operator trees.

use alloc::vec::Vec;

use rand::seq::index;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;

use crate::expr::OperatorExpr;
use crate::ops::{DenseMatrix, Dft, Diagonal, FirstDerivative, Identity, Restriction, SecondDerivative};
use crate::vector::{ComplexVector, C64};

/// Deterministic generator used everywhere a seed is accepted.
pub fn seeded(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Real and imaginary parts drawn independently from N(0, 1).
pub fn complex_normal<R: Rng + ?Sized>(rng: &mut R) -> C64 {
    C64::new(rng.sample(StandardNormal), rng.sample(StandardNormal))
}

pub fn complex_normal_vector<R: Rng + ?Sized>(rng: &mut R, len: usize) -> ComplexVector {
    (0..len).map(|_| complex_normal(rng)).collect()
}

pub fn dense_matrix<R: Rng + ?Sized>(rng: &mut R, nrows: usize, ncols: usize) -> DenseMatrix {
    let data = (0..nrows * ncols).map(|_| complex_normal(rng)).collect();
    DenseMatrix::new(nrows, ncols, data).expect("positive dimensions")
}

/// `count` distinct indices in `[0, len)`, sorted ascending.
pub fn sorted_indices<R: Rng + ?Sized>(rng: &mut R, len: usize, count: usize) -> Vec<usize> {
    let mut picked = index::sample(rng, len, count).into_vec();
    picked.sort_unstable();
    picked
}

/// A random tree of depth at most `max_depth` with both dimensions in
/// `[1, max_dim]`.
pub fn random_expr<R: Rng + ?Sized>(rng: &mut R, max_depth: usize, max_dim: usize) -> OperatorExpr {
    assert!(max_dim >= 1);
    let ncols = rng.random_range(1..=max_dim);
    let nrows = match rng.random_range(0..4) {
        0 => ncols,
        1 if ncols > 1 => ncols - 1,
        2 if ncols > 2 => ncols - 2,
        _ => rng.random_range(1..=max_dim),
    };
    random_expr_with_shape(rng, max_depth, max_dim, nrows, ncols)
}

/// A random tree of the requested shape; intermediate dimensions stay in
/// `[1, max_dim]`.
pub fn random_expr_with_shape<R: Rng + ?Sized>(
    rng: &mut R,
    depth: usize,
    max_dim: usize,
    nrows: usize,
    ncols: usize,
) -> OperatorExpr {
    if depth == 0 || rng.random_bool(0.25) {
        return random_leaf(rng, nrows, ncols);
    }
    let sub = depth - 1;
    match rng.random_range(0..6) {
        0 => {
            let a = random_expr_with_shape(rng, sub, max_dim, nrows, ncols);
            let b = random_expr_with_shape(rng, sub, max_dim, nrows, ncols);
            OperatorExpr::sum(&a, &b).expect("same shape")
        }
        1 => {
            let alpha = complex_normal(rng);
            OperatorExpr::scale(alpha, &random_expr_with_shape(rng, sub, max_dim, nrows, ncols))
        }
        2 => {
            let inner = pick_inner_dim(rng, ncols, max_dim);
            let a = random_expr_with_shape(rng, sub, max_dim, nrows, inner);
            let b = random_expr_with_shape(rng, sub, max_dim, inner, ncols);
            OperatorExpr::compose(&a, &b).expect("matching inner dimension")
        }
        3 => random_expr_with_shape(rng, sub, max_dim, ncols, nrows).h(),
        4 if nrows >= 2 => {
            let blocks: Vec<OperatorExpr> = split(rng, nrows)
                .into_iter()
                .map(|rows| random_expr_with_shape(rng, sub, max_dim, rows, ncols))
                .collect();
            OperatorExpr::vstack(&blocks).expect("shared column count")
        }
        5 if ncols >= 2 => {
            let blocks: Vec<OperatorExpr> = split(rng, ncols)
                .into_iter()
                .map(|cols| random_expr_with_shape(rng, sub, max_dim, nrows, cols))
                .collect();
            OperatorExpr::hstack(&blocks).expect("shared row count")
        }
        _ => random_leaf(rng, nrows, ncols),
    }
}

/// Favors inner dimensions that admit structured leaves.
fn pick_inner_dim<R: Rng + ?Sized>(rng: &mut R, ncols: usize, max_dim: usize) -> usize {
    match rng.random_range(0..5) {
        0 => ncols,
        1 if ncols > 1 => ncols - 1,
        2 if ncols > 2 => ncols - 2,
        3 if ncols < max_dim => ncols + 1,
        _ => rng.random_range(1..=max_dim),
    }
}

/// Splits `total >= 2` into two or three positive parts.
fn split<R: Rng + ?Sized>(rng: &mut R, total: usize) -> Vec<usize> {
    let parts = if total >= 3 { rng.random_range(2..=3) } else { 2 };
    let mut cuts = sorted_indices(rng, total - 1, parts - 1);
    cuts.iter_mut().for_each(|c| *c += 1);
    let mut sizes = Vec::with_capacity(parts);
    let mut prev = 0;
    for c in cuts {
        sizes.push(c - prev);
        prev = c;
    }
    sizes.push(total - prev);
    sizes
}

/// A random shipped leaf of the given shape. Dense matrices are the
/// fallback when no structured leaf fits.
pub fn random_leaf<R: Rng + ?Sized>(rng: &mut R, nrows: usize, ncols: usize) -> OperatorExpr {
    let mut options: Vec<u8> = Vec::new();
    if nrows == ncols {
        options.extend([0, 1]);
        if ncols.is_power_of_two() {
            options.push(2);
        }
    }
    if nrows < ncols {
        options.push(3);
    }
    if nrows + 1 == ncols {
        options.push(4);
    }
    if nrows + 2 == ncols {
        options.push(5);
    }
    if options.is_empty() || rng.random_bool(0.2) {
        return dense_matrix(rng, nrows, ncols).into();
    }
    match options[rng.random_range(0..options.len())] {
        0 => Identity::new(nrows).unwrap().into(),
        1 => Diagonal::new(complex_normal_vector(rng, nrows).into_inner()).unwrap().into(),
        2 => Dft::new(nrows).unwrap().into(),
        3 => Restriction::new(ncols, sorted_indices(rng, ncols, nrows)).unwrap().into(),
        4 => FirstDerivative::new(ncols, rng.random_range(0.25..2.0)).unwrap().into(),
        _ => SecondDerivative::new(ncols, rng.random_range(0.25..2.0)).unwrap().into(),
    }
}
