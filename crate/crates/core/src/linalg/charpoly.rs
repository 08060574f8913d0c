use alloc::vec::Vec;

use num_traits::Zero;

use super::decomp::hessenberg;
use super::matrix::Matrix;
use super::poly::MonicPoly;
use crate::C64;

/// `det(λI - x)`.
///
/// Reduces `x` to Hessenberg form by a unitary similarity and then runs the
/// last-column determinant recurrence for Hessenberg matrices.
pub fn charpoly(x: &Matrix) -> MonicPoly {
    let (h, _) = hessenberg(x);
    hessenberg_charpolys(&h)
        .pop()
        .unwrap_or_else(MonicPoly::one)
}

/// Characteristic polynomials of every leading block of an upper
/// Hessenberg matrix: entry `j` is `det(λI_j - h_j)` for `j = 0..=n`.
///
/// With `h_j` the `j x j` cutoff, expanding along the last column gives
/// `p_j = (λ - h_jj) p_{j-1} - Σ_{i<j} h_ij (h_{i+1,i}⋯h_{j,j-1}) p_{i-1}`
/// (one-based). Entries of `h` below the subdiagonal are ignored.
pub fn hessenberg_charpolys(h: &Matrix) -> Vec<MonicPoly> {
    let n = h.n();
    let mut polys: Vec<Vec<C64>> = Vec::with_capacity(n + 1);
    polys.push(alloc::vec![C64::new(1.0, 0.0)]);
    for j in 0..n {
        // (λ - h_jj) p_j
        let prev = &polys[j];
        let mut next = alloc::vec![C64::zero(); j + 2];
        for (t, &a) in prev.iter().enumerate() {
            next[t + 1] += a;
            next[t] -= a * h[(j, j)];
        }
        let mut sub = C64::new(1.0, 0.0);
        for i in (0..j).rev() {
            sub *= h[(i + 1, i)];
            let w = h[(i, j)] * sub;
            if w.is_zero() {
                continue;
            }
            for (t, &a) in polys[i].iter().enumerate() {
                next[t] -= w * a;
            }
        }
        polys.push(next);
    }
    polys
        .into_iter()
        .map(|mut full| {
            full.pop();
            MonicPoly::new(full)
        })
        .collect()
}
