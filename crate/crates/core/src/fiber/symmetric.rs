use alloc::vec::Vec;

#[allow(unused_imports)] // float math on no_std targets
use num_traits::Float;

use super::{diagonalize, require_disjoint, vandermonde_weight};
use crate::coords::{phi, GzCoord};
use crate::error::{GzError, Result};
use crate::linalg::Matrix;
use crate::tol::ToleranceConfig;
use crate::{tri, C64};

/// Largest `n` for which the `2^{d(n-1)}` symmetric members are enumerated.
pub const MAX_SYMMETRIC_N: usize = 7;

/// Square root with nonnegative real part; on the imaginary axis the root
/// with nonnegative imaginary part.
pub fn principal_sqrt(z: C64) -> C64 {
    let s = z.sqrt();
    if s.re < 0.0 || (s.re == 0.0 && s.im < 0.0) {
        -s
    } else {
        s
    }
}

/// All symmetric matrices in one fiber, tagged by the sign choices that
/// produced them.
///
/// Bit `d(m-1) + i` of a sign index is the sign of the `i`-th new column
/// entry (in the eigenbasis) at level `m`; a set bit means `-1`.
#[derive(Debug, Clone, PartialEq)]
pub struct SymmetricFiber {
    pub c: GzCoord,
    pub members: Vec<Matrix>,
    pub sign_index: Vec<u64>,
}

impl SymmetricFiber {
    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    /// The sign vector of member `i`, one `±1` list per level `1..n-1`.
    pub fn signs(&self, i: usize) -> Vec<Vec<i8>> {
        let bits = self.sign_index[i];
        (1..self.c.n())
            .map(|m| {
                (0..m)
                    .map(|j| {
                        if bits >> (tri(m - 1) + j) & 1 == 1 {
                            -1
                        } else {
                            1
                        }
                    })
                    .collect()
            })
            .collect()
    }
}

/// Eigenvalues and eigenvectors normalized so that `V^T V = I`.
fn orthogonal_eigen(x: &Matrix, level: usize) -> Result<(Vec<C64>, Matrix)> {
    let (mu, mut v, _) = diagonalize(x)?;
    let m = x.n();
    for j in 0..m {
        let q: C64 = (0..m).map(|i| v[(i, j)] * v[(i, j)]).sum();
        if q.norm() < 1e-10 {
            return Err(GzError::IsotropicEigenvector {
                level,
                magnitude: q.norm(),
            });
        }
        let s = principal_sqrt(q);
        for i in 0..m {
            v[(i, j)] /= s;
        }
    }
    Ok((mu, v))
}

fn bordered(x: &Matrix, col: &[C64], corner: C64) -> Matrix {
    let m = x.n();
    let mut next = Matrix::zeros(m + 1);
    next.set_block(x);
    for i in 0..m {
        next[(i, m)] = col[i];
        next[(m, i)] = col[i];
    }
    next[(m, m)] = corner;
    next
}

fn grow(c: &GzCoord, x: Matrix, bits: u64, out: &mut Vec<(u64, Matrix)>) -> Result<()> {
    let m = x.n();
    if m == c.n() {
        out.push((bits, x));
        return Ok(());
    }
    let (mu, v) = orthogonal_eigen(&x, m)?;
    let p_next = c.level_poly(m + 1);
    let roots: Vec<C64> = (0..m)
        .map(|i| principal_sqrt(-p_next.eval(mu[i]) / vandermonde_weight(&mu, i)))
        .collect();
    let corner = c.get(m + 1, m + 1) - x.trace();
    for signs in 0..(1u64 << m) {
        let a: Vec<C64> = (0..m)
            .map(|i| {
                if signs >> i & 1 == 1 {
                    -roots[i]
                } else {
                    roots[i]
                }
            })
            .collect();
        let next = bordered(&x, &v.mul_vec(&a), corner);
        grow(c, next, bits | signs << tri(m - 1), out)?;
    }
    Ok(())
}

/// First-order rounding bound for the coefficients of `charpoly` on `x`.
/// Non-real members of a fiber can have entries far larger than the
/// spectrum, and the degree-`n` coefficients then carry errors of order
/// `ε ‖x‖^n` that no evaluation in double precision avoids.
fn roundoff_bound(x: &Matrix) -> f64 {
    let n = x.n() as f64;
    16.0 * n * n * f64::EPSILON * (1.0 + x.norm_max()).powi(x.n() as i32)
}

/// Enumerates the `2^{d(n-1)}` symmetric matrices over an eigenvalue-disjoint
/// point `c`, sorted by sign index.
pub fn symmetric_fiber(c: &GzCoord, tol: &ToleranceConfig) -> Result<SymmetricFiber> {
    let n = c.n();
    if n > MAX_SYMMETRIC_N {
        return Err(GzError::EnumerationLimit {
            n,
            max: MAX_SYMMETRIC_N,
        });
    }
    require_disjoint(c, tol)?;
    let mut found = Vec::with_capacity(1 << tri(n.saturating_sub(1)));
    let start = Matrix::from_vec(1, alloc::vec![c.get(1, 1)])?;
    grow(c, start, 0, &mut found)?;
    found.sort_by_key(|(bits, _)| *bits);
    let scale = 1.0 + c.values().iter().map(|v| v.norm()).fold(0.0, f64::max);
    for (_, x) in &found {
        let deviation = phi(x).max_diff(c);
        if !(deviation <= tol.eq_tol * scale + roundoff_bound(x)) {
            return Err(GzError::VerificationFailed {
                what: "symmetric fiber membership",
                deviation,
            });
        }
    }
    let (sign_index, members) = found.into_iter().unzip();
    Ok(SymmetricFiber {
        c: c.clone(),
        members,
        sign_index,
    })
}

/// Tridiagonal with nonvanishing off-diagonals (symmetry is not required).
pub fn is_jacobi(x: &Matrix, tol: &ToleranceConfig) -> bool {
    let n = x.n();
    (0..n).all(|i| {
        (0..n).all(|j| match i.abs_diff(j) {
            0 => true,
            1 => x[(i, j)].norm() > tol.eq_tol,
            _ => x[(i, j)].norm() <= tol.eq_tol,
        })
    })
}

/// Members of a symmetric fiber that are Jacobi, with their sign indices.
pub fn jacobi_members<'a>(f: &'a SymmetricFiber, tol: &ToleranceConfig) -> Vec<(u64, &'a Matrix)> {
    f.sign_index
        .iter()
        .zip(&f.members)
        .filter(|(_, x)| is_jacobi(x, tol))
        .map(|(&b, x)| (b, x))
        .collect()
}

/// Conjugates `diag(ε_1, …, ε_{n-1}, 1) x diag(ε_1, …, ε_{n-1}, 1)` over all
/// sign choices; bit `i` of the output position is set when `ε_{i+1} = -1`.
pub fn diag_sign_orbit(x: &Matrix) -> Vec<Matrix> {
    let n = x.n();
    let flips = n.saturating_sub(1);
    (0..1usize << flips)
        .map(|bits| {
            let eps = |i: usize| {
                if i < flips && bits >> i & 1 == 1 {
                    -1.0
                } else {
                    1.0
                }
            };
            Matrix::from_fn(n, |i, j| x[(i, j)] * (eps(i) * eps(j)))
        })
        .collect()
}
