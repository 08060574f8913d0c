use alloc::vec::Vec;

#[allow(unused_imports)] // float math on no_std targets
use num_traits::Float;

use super::matrix::Matrix;
use crate::error::{GzError, Result};
use crate::tol::ToleranceConfig;
use crate::C64;

/// Singular values of the matrix whose columns are `cols`, by one-sided
/// (Hestenes) Jacobi rotations. Returned in decreasing order.
pub fn singular_values(cols: &[Vec<C64>]) -> Vec<f64> {
    let mut a: Vec<Vec<C64>> = cols.to_vec();
    let k = a.len();
    let tol = f64::EPSILON * 4.0;
    for _sweep in 0..80 {
        let mut rotated = false;
        for p in 0..k {
            for q in p + 1..k {
                let alpha: f64 = a[p].iter().map(|z| z.norm_sqr()).sum();
                let beta: f64 = a[q].iter().map(|z| z.norm_sqr()).sum();
                let gamma: C64 = a[p].iter().zip(&a[q]).map(|(x, y)| x.conj() * y).sum();
                let g = gamma.norm();
                if g == 0.0 || g <= tol * (alpha * beta).sqrt() {
                    continue;
                }
                rotated = true;
                let phase = gamma / g;
                let zeta = (beta - alpha) / (2.0 * g);
                let t = zeta.signum() / (zeta.abs() + (1.0 + zeta * zeta).sqrt());
                let c = 1.0 / (1.0 + t * t).sqrt();
                let s = c * t;
                // b_q = conj(phase) a_q makes a_p^H b_q real and positive.
                for r in 0..a[p].len() {
                    let ap = a[p][r];
                    let bq = a[q][r] * phase.conj();
                    a[p][r] = ap * c - bq * s;
                    a[q][r] = (ap * s + bq * c) * phase;
                }
            }
        }
        if !rotated {
            break;
        }
    }
    let mut sv: Vec<f64> = a
        .iter()
        .map(|col| col.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt())
        .collect();
    sv.sort_by(|x, y| y.total_cmp(x));
    sv
}

/// Rank of a family of equally sized matrices viewed as flat vectors:
/// the number of singular values above `rank_tol` times the largest.
pub fn numeric_rank(vectors: &[Matrix], tol: &ToleranceConfig) -> Result<usize> {
    let Some(first) = vectors.first() else {
        return Err(GzError::Malformed(
            "numeric_rank needs a nonempty family".into(),
        ));
    };
    let n = first.n();
    if let Some(bad) = vectors.iter().find(|m| m.n() != n) {
        return Err(GzError::DimensionMismatch {
            expected: n,
            found: bad.n(),
        });
    }
    let cols: Vec<Vec<C64>> = vectors.iter().map(|m| m.as_slice().to_vec()).collect();
    Ok(rank_of_singular_values(
        &singular_values(&cols),
        tol.rank_tol,
    ))
}

pub(crate) fn rank_of_singular_values(sv: &[f64], rank_tol: f64) -> usize {
    let largest = sv.first().copied().unwrap_or(0.0);
    if largest == 0.0 {
        return 0;
    }
    sv.iter().filter(|&&s| s > rank_tol * largest).count()
}
