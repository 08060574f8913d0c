//! Inversion of `Φ_n` on the Hessenberg cross-section: matrices with ones
//! on the subdiagonal, zeros below it, and a free upper triangle.

use alloc::vec::Vec;

use num_traits::Zero;

use crate::coords::GzCoord;
use crate::error::{GzError, Result};
use crate::linalg::poly::expand_in_monic_basis;
use crate::linalg::{Matrix, MonicPoly};
use crate::C64;

/// Whether `x` has unit subdiagonal and vanishing entries below it.
pub fn is_hessenberg_section(x: &Matrix, tol: f64) -> bool {
    let n = x.n();
    (0..n).all(|i| {
        (0..i).all(|j| {
            let target = if i == j + 1 {
                C64::new(1.0, 0.0)
            } else {
                C64::zero()
            };
            (x[(i, j)] - target).norm() <= tol
        })
    })
}

/// The unique matrix on the Hessenberg cross-section with `Φ_n(x) = c`.
///
/// Column `m` is solved from the level polynomials alone. Expanding
/// `det(λI_m - x_m)` along its last column gives
/// `P_m = (λ - x_mm) P_{m-1} - Σ_{i<m} x_im P_{i-1}` (unit subdiagonal), so
/// the coefficients of `P_m - λ P_{m-1}` in the basis `P_{m-1}, …, P_0` are
/// exactly the negated column entries.
pub fn invert_phi(c: &GzCoord) -> Matrix {
    let n = c.n();
    let polys = c.level_polys();
    let mut basis: Vec<MonicPoly> = Vec::with_capacity(n);
    basis.push(MonicPoly::one());
    let mut x = Matrix::zeros(n);
    for i in 1..n {
        x[(i, i - 1)] = C64::new(1.0, 0.0);
    }
    for m in 1..=n {
        let target = polys[m - 1].full_coeffs();
        let prev = basis[m - 1].full_coeffs();
        // r = P_m - λ P_{m-1}, degree < m
        let mut r = target;
        for (t, &a) in prev.iter().enumerate() {
            r[t + 1] -= a;
        }
        r.truncate(m);
        let coef = expand_in_monic_basis(&r, &basis);
        for (i, a) in coef.into_iter().enumerate() {
            x[(i, m - 1)] = -a;
        }
        basis.push(polys[m - 1].clone());
    }
    x
}

/// Cross-section point with prescribed nonzero subdiagonal `z`
/// (`z[i]` at position `(i+1, i)`), obtained from [`invert_phi`] by a
/// diagonal similarity, which leaves every cutoff spectrum unchanged.
pub fn invert_phi_with_subdiag(c: &GzCoord, z: &[C64]) -> Result<Matrix> {
    let n = c.n();
    if z.len() != n.saturating_sub(1) {
        return Err(GzError::DimensionMismatch {
            expected: n.saturating_sub(1),
            found: z.len(),
        });
    }
    if let Some(i) = z.iter().position(|v| v.is_zero()) {
        return Err(GzError::ZeroSubdiagonal { index: i + 1 });
    }
    let x = invert_phi(c);
    // D = diag(d), d_0 = 1, d_{i+1} = d_i z_i; (D x D^-1)_{ij} = d_i x_ij / d_j
    let mut d = Vec::with_capacity(n);
    d.push(C64::new(1.0, 0.0));
    for &zi in z {
        let last = *d.last().expect("nonempty");
        d.push(last * zi);
    }
    Ok(Matrix::from_fn(n, |i, j| d[i] * x[(i, j)] / d[j]))
}
