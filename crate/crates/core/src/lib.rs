//! The Gelfand-Zeitlin integrable system on `n x n` complex matrices.
//!
//! The moment map sends a matrix to the characteristic-polynomial
//! coefficients of all of its leading principal blocks. This crate computes
//! that map, inverts it on the Hessenberg cross-section, integrates the
//! commuting Hamiltonian flows and the abelian group action they generate,
//! classifies (strong) regularity, and works out the geometry of generic
//! fibers: normal forms, the strict-upper chart, and the finite set of
//! symmetric matrices in a fiber. An exact Poisson-bracket engine over
//! rational polynomials in the matrix entries backs the commutativity
//! claims, and an orthogonal-polynomial module connects Jacobi matrices to
//! three-term recurrences.
//!
//! The crate is `no_std` and needs only `alloc`.

#![no_std]

extern crate alloc;
#[cfg(feature = "std")]
extern crate std;

pub mod coords;
pub mod error;
pub mod fiber;
pub mod flows;
pub mod linalg;
pub mod orthopoly;
pub mod poisson;
pub mod regularity;
pub mod section;
pub mod tol;

pub use num_complex::Complex64 as C64;

pub use coords::{phi, GzCoord, SpectrumTower};
pub use error::{ErrorClass, GzError, Result};
pub use linalg::{Matrix, MonicPoly};
pub use tol::ToleranceConfig;

/// `d(n) = n(n+1)/2`, the number of Gelfand-Zeitlin coordinates on `M(n)`.
#[inline]
pub const fn tri(n: usize) -> usize {
    n * (n + 1) / 2
}
