#[allow(unused_imports)] // float math on no_std targets
use num_traits::Float;

use super::decomp::Lu;
use super::matrix::Matrix;
use crate::error::{GzError, Result};
use crate::C64;

// Degree-13 diagonal Padé coefficients and the matching 1-norm bound.
const PADE13: [f64; 14] = [
    64764752532480000.0,
    32382376266240000.0,
    7771770303897600.0,
    1187353796428800.0,
    129060195264000.0,
    10559470521600.0,
    670442572800.0,
    33522128640.0,
    1323241920.0,
    40840800.0,
    960960.0,
    16380.0,
    182.0,
    1.0,
];
const THETA13: f64 = 5.371920351148152;
const MAX_SQUARINGS: i32 = 1000;

fn axpy_sum(terms: &[(f64, &Matrix)], n: usize) -> Matrix {
    let mut out = Matrix::zeros(n);
    for &(c, m) in terms {
        for i in 0..n {
            for j in 0..n {
                out[(i, j)] += m[(i, j)] * c;
            }
        }
    }
    out
}

/// Matrix exponential by scaling and squaring with a degree-13 Padé kernel.
pub fn mat_exp(z: &Matrix) -> Result<Matrix> {
    let n = z.n();
    if !z.is_finite() {
        return Err(GzError::NonFinite);
    }
    if n == 0 {
        return Ok(Matrix::zeros(0));
    }
    let norm = z.norm_1();
    if norm == 0.0 {
        return Ok(Matrix::identity(n));
    }
    let s = if norm > THETA13 {
        (norm / THETA13).log2().ceil() as i32
    } else {
        0
    };
    if s > MAX_SQUARINGS {
        return Err(GzError::Overflow("matrix exponential"));
    }
    let a = z.scale(C64::new(2f64.powi(-s), 0.0));
    let id = Matrix::identity(n);
    let a2 = a.matmul(&a);
    let a4 = a2.matmul(&a2);
    let a6 = a4.matmul(&a2);
    let b = &PADE13;

    let u_inner = a6.matmul(&axpy_sum(&[(b[13], &a6), (b[11], &a4), (b[9], &a2)], n));
    let u_rest = axpy_sum(&[(b[7], &a6), (b[5], &a4), (b[3], &a2), (b[1], &id)], n);
    let u = a.matmul(&(&u_inner + &u_rest));
    let v_inner = a6.matmul(&axpy_sum(&[(b[12], &a6), (b[10], &a4), (b[8], &a2)], n));
    let v_rest = axpy_sum(&[(b[6], &a6), (b[4], &a4), (b[2], &a2), (b[0], &id)], n);
    let v = &v_inner + &v_rest;

    let p = &v + &u;
    let q = &v - &u;
    let mut r = Lu::new(&q)
        .map_err(|_| GzError::Overflow("matrix exponential"))?
        .solve(&p);
    for _ in 0..s {
        r = r.matmul(&r);
        if !r.is_finite() {
            return Err(GzError::Overflow("matrix exponential"));
        }
    }
    if !r.is_finite() {
        return Err(GzError::Overflow("matrix exponential"));
    }
    Ok(r)
}
