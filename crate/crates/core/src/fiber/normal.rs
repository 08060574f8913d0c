use alloc::vec::Vec;

use num_traits::Zero;

use super::{diagonalize, require_disjoint};
use crate::coords::{phi, same_fiber};
use crate::error::{GzError, Result};
use crate::flows::GroupWord;
use crate::linalg::{numeric_rank, Lu, Matrix};
use crate::tol::ToleranceConfig;
use crate::C64;

/// Whether `v` generates `C^m` under the cutoff `x_m`.
pub fn is_cyclic(x: &Matrix, m: usize, v: &[C64], tol: &ToleranceConfig) -> bool {
    if m == 0 || m >= x.n() || v.len() != m {
        return false;
    }
    let Ok(x_m) = x.cutoff(m) else { return false };
    let mut krylov = Vec::with_capacity(m);
    let mut w = v.to_vec();
    for _ in 0..m {
        krylov.push(Matrix::diag(&w));
        w = x_m.mul_vec(&w);
    }
    numeric_rank(&krylov, tol).map(|r| r == m).unwrap_or(false)
}

/// A point of the lower Hessenberg slice reached from `x` by the group
/// action, together with the word that reaches it.
#[derive(Debug, Clone, PartialEq)]
pub struct NormalFormResult {
    pub canonical: Matrix,
    pub word: GroupWord,
}

fn check_coordinate(values: &[C64], level: usize, tol: &ToleranceConfig) -> Result<()> {
    let scale = values.iter().map(|v| v.norm()).fold(0.0, f64::max);
    for (i, v) in values.iter().enumerate() {
        if scale == 0.0 || v.norm() <= tol.eq_tol * scale {
            return Err(GzError::NotCyclic {
                level,
                index: i + 1,
            });
        }
    }
    Ok(())
}

/// Solves `Σ_k t_k μ_i^{m-k} = ℓ_i` for the power-basis word coefficients.
fn power_coefficients(mu: &[C64], logs: &[C64]) -> Result<Vec<C64>> {
    let m = mu.len();
    let vander = Matrix::from_fn(m, |i, k| mu[i].powu((m - 1 - k) as u32));
    Ok(Lu::new(&vander)?.solve_vec(logs))
}

/// Moves `x` into the slice with unit superdiagonal and zeros above it,
/// one level at a time from the top down.
pub fn normal_form(x: &Matrix, tol: &ToleranceConfig) -> Result<NormalFormResult> {
    let n = x.n();
    require_disjoint(&phi(x), tol)?;
    let mut y = x.clone();
    let mut levels: Vec<Vec<C64>> = (1..n).map(|m| alloc::vec![C64::zero(); m]).collect();
    for m in (1..n).rev() {
        let (mu, v_mat, v_inv) = diagonalize(&x.cutoff(m)?)?;
        let col = y.component_in_y(m)?;
        let v = v_inv.mul_vec(&col);
        let u: Vec<C64> = (0..m).map(|i| v_inv[(i, m - 1)]).collect();
        check_coordinate(&v, m, tol)?;
        check_coordinate(&u, m, tol)?;
        let ratio: Vec<C64> = u.iter().zip(&v).map(|(a, b)| a / b).collect();
        let g = v_mat.matmul(&Matrix::diag(&ratio)).matmul(&v_inv);
        let inv_ratio: Vec<C64> = ratio.iter().map(|r| r.inv()).collect();
        let g_inv = v_mat.matmul(&Matrix::diag(&inv_ratio)).matmul(&v_inv);
        y = y.conjugate_by_block(&g, &g_inv);
        let logs: Vec<C64> = ratio.iter().map(|r| r.ln()).collect();
        levels[m - 1] = power_coefficients(&mu, &logs)?;
    }
    if !y.is_finite() {
        return Err(GzError::NonFinite);
    }
    Ok(NormalFormResult {
        canonical: y,
        word: GroupWord::new(levels)?,
    })
}

/// Whether `y` lies in the group orbit of `x`. Both must lie over the
/// eigenvalue-disjoint locus, where orbits and fibers coincide.
pub fn a_conjugate_test(x: &Matrix, y: &Matrix, tol: &ToleranceConfig) -> Result<bool> {
    if x.n() != y.n() {
        return Err(GzError::DimensionMismatch {
            expected: x.n(),
            found: y.n(),
        });
    }
    let nx = normal_form(x, tol)?;
    let ny = normal_form(y, tol)?;
    if !same_fiber(x, y, tol) {
        return Ok(false);
    }
    let scale = 1.0 + nx.canonical.norm_max();
    Ok(nx.canonical.max_abs_diff(&ny.canonical) <= tol.eq_tol * scale)
}
