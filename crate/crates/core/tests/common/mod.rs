//! Reference computations that share no code path with the library kernels.
#![allow(dead_code)]

use std::f64::consts::PI;

use opkit_core::ops::DenseMatrix;
use opkit_core::{c64, C64};

/// Direct O(N²) unitary DFT.
pub fn dft_direct(x: &[C64], inverse: bool) -> Vec<C64> {
    let n = x.len();
    let sign = if inverse { 1.0 } else { -1.0 };
    (0..n)
        .map(|k| {
            let acc: C64 = x
                .iter()
                .enumerate()
                .map(|(j, v)| {
                    let theta = sign * 2.0 * PI * ((k * j) % n) as f64 / n as f64;
                    v * C64::from_polar(1.0, theta)
                })
                .sum();
            acc / (n as f64).sqrt()
        })
        .collect()
}

pub fn rel_err(a: &[C64], b: &[C64]) -> f64 {
    assert_eq!(a.len(), b.len());
    let num: f64 = a.iter().zip(b).map(|(x, y)| (x - y).norm_sqr()).sum::<f64>().sqrt();
    let den: f64 = b.iter().map(|y| y.norm_sqr()).sum::<f64>().sqrt();
    if den == 0.0 {
        num
    } else {
        num / den
    }
}

pub fn norm(a: &[C64]) -> f64 {
    a.iter().map(|x| x.norm_sqr()).sum::<f64>().sqrt()
}

pub fn to_rows(m: &DenseMatrix) -> Vec<Vec<C64>> {
    (0..m.nrows()).map(|i| m.row(i).to_vec()).collect()
}

pub fn matmul(a: &[Vec<C64>], b: &[Vec<C64>]) -> Vec<Vec<C64>> {
    let inner = b.len();
    let cols = b[0].len();
    a.iter()
        .map(|row| {
            (0..cols)
                .map(|j| (0..inner).map(|k| row[k] * b[k][j]).sum())
                .collect()
        })
        .collect()
}

pub fn conj_t(a: &[Vec<C64>]) -> Vec<Vec<C64>> {
    (0..a[0].len())
        .map(|j| a.iter().map(|row| row[j].conj()).collect())
        .collect()
}

pub fn matvec(a: &[Vec<C64>], x: &[C64]) -> Vec<C64> {
    a.iter().map(|row| row.iter().zip(x).map(|(r, v)| r * v).sum()).collect()
}

/// Gaussian elimination with partial pivoting.
pub fn gauss_solve(a: &[Vec<C64>], b: &[C64]) -> Vec<C64> {
    let n = a.len();
    let mut m: Vec<Vec<C64>> = a
        .iter()
        .zip(b)
        .map(|(row, bi)| {
            let mut r = row.clone();
            r.push(*bi);
            r
        })
        .collect();
    for col in 0..n {
        let piv = (col..n)
            .max_by(|&i, &j| m[i][col].norm().partial_cmp(&m[j][col].norm()).unwrap())
            .unwrap();
        m.swap(col, piv);
        let p = m[col][col];
        assert!(p.norm() > 1e-300, "singular system");
        for i in col + 1..n {
            let f = m[i][col] / p;
            for j in col..=n {
                let t = m[col][j];
                m[i][j] -= f * t;
            }
        }
    }
    let mut x = vec![c64(0.0, 0.0); n];
    for i in (0..n).rev() {
        let s: C64 = (i + 1..n).map(|j| m[i][j] * x[j]).sum();
        x[i] = (m[i][n] - s) / m[i][i];
    }
    x
}

/// Eigenvalues (ascending) and eigenvectors of a real symmetric matrix by
/// cyclic Jacobi rotations.
pub fn jacobi_eigen(a: &[Vec<f64>]) -> (Vec<f64>, Vec<Vec<f64>>) {
    let n = a.len();
    let mut m = a.to_vec();
    let mut v: Vec<Vec<f64>> = (0..n)
        .map(|i| (0..n).map(|j| if i == j { 1.0 } else { 0.0 }).collect())
        .collect();
    for _sweep in 0..100 {
        let off: f64 = (0..n)
            .flat_map(|i| (0..n).filter(move |&j| j != i).map(move |j| (i, j)))
            .map(|(i, j)| m[i][j] * m[i][j])
            .sum();
        if off < 1e-30 {
            break;
        }
        for p in 0..n {
            for q in p + 1..n {
                if m[p][q].abs() < 1e-300 {
                    continue;
                }
                let theta = (m[q][q] - m[p][p]) / (2.0 * m[p][q]);
                let t = theta.signum() / (theta.abs() + (theta * theta + 1.0).sqrt());
                let t = if theta == 0.0 { 1.0 } else { t };
                let c = 1.0 / (t * t + 1.0).sqrt();
                let s = t * c;
                for k in 0..n {
                    let (mkp, mkq) = (m[k][p], m[k][q]);
                    m[k][p] = c * mkp - s * mkq;
                    m[k][q] = s * mkp + c * mkq;
                }
                for k in 0..n {
                    let (mpk, mqk) = (m[p][k], m[q][k]);
                    m[p][k] = c * mpk - s * mqk;
                    m[q][k] = s * mpk + c * mqk;
                }
                for row in v.iter_mut() {
                    let (vp, vq) = (row[p], row[q]);
                    row[p] = c * vp - s * vq;
                    row[q] = s * vp + c * vq;
                }
            }
        }
    }
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| m[i][i].partial_cmp(&m[j][j]).unwrap());
    let values = order.iter().map(|&i| m[i][i]).collect();
    let vectors = order.iter().map(|&i| v.iter().map(|row| row[i]).collect()).collect();
    (values, vectors)
}

/// Eigenvalues of a Hermitian matrix via its real 2n×2n embedding
/// `[[Re, −Im], [Im, Re]]`, which repeats each eigenvalue twice.
pub fn hermitian_eigenvalues(h: &[Vec<C64>]) -> Vec<f64> {
    let n = h.len();
    let mut big = vec![vec![0.0; 2 * n]; 2 * n];
    for i in 0..n {
        for j in 0..n {
            big[i][j] = h[i][j].re;
            big[i][j + n] = -h[i][j].im;
            big[i + n][j] = h[i][j].im;
            big[i + n][j + n] = h[i][j].re;
        }
    }
    let (vals, _) = jacobi_eigen(&big);
    vals.chunks(2).map(|p| 0.5 * (p[0] + p[1])).collect()
}
