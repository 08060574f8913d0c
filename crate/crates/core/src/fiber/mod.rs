//! Geometry of generic fibers: cyclic vectors, the group normal form, the
//! strict-upper chart, and the finite set of symmetric matrices in a fiber.

mod chart;
mod normal;
mod symmetric;

pub use chart::{beta, beta_inverse};
pub use normal::{a_conjugate_test, is_cyclic, normal_form, NormalFormResult};
pub use symmetric::{
    diag_sign_orbit, is_jacobi, jacobi_members, principal_sqrt, symmetric_fiber, SymmetricFiber,
};

use alloc::vec::Vec;

use crate::coords::{tower_from_coord, GzCoord, SpectrumTower};
use crate::error::{GzError, Result};
use crate::linalg::{eig, inverse, Matrix};
use crate::tol::ToleranceConfig;
use crate::C64;

fn require_disjoint(c: &GzCoord, tol: &ToleranceConfig) -> Result<SpectrumTower> {
    let tower = tower_from_coord(c, tol)?;
    match tower.disjointness_violation(tol) {
        Some(level) => Err(GzError::NotDisjoint { level }),
        None => Ok(tower),
    }
}

/// Eigenvalues, eigenvector matrix and its inverse.
fn diagonalize(x: &Matrix) -> Result<(Vec<C64>, Matrix, Matrix)> {
    let e = eig(x)?;
    let v_inv = inverse(&e.vectors)?;
    Ok((e.values, e.vectors, v_inv))
}

/// `Π_{j≠i} (μ_i - μ_j)`, the derivative of `Π (λ - μ_j)` at `μ_i`.
fn vandermonde_weight(mu: &[C64], i: usize) -> C64 {
    mu.iter()
        .enumerate()
        .filter(|&(j, _)| j != i)
        .map(|(_, &m)| mu[i] - m)
        .product()
}
