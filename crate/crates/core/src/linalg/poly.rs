use alloc::vec;
use alloc::vec::Vec;

use num_traits::Zero;

use crate::error::{GzError, Result};
use crate::C64;

/// Monic polynomial `λ^d + c_{d-1} λ^{d-1} + ... + c_0`.
///
/// Only the non-leading coefficients are stored, lowest degree first.
#[derive(Debug, Clone, PartialEq)]
pub struct MonicPoly {
    coeffs: Vec<C64>,
}

impl MonicPoly {
    pub fn new(coeffs: Vec<C64>) -> Self {
        Self { coeffs }
    }

    /// The constant polynomial 1.
    pub fn one() -> Self {
        Self { coeffs: Vec::new() }
    }

    /// `λ^d`.
    pub fn monomial(d: usize) -> Self {
        Self {
            coeffs: vec![C64::zero(); d],
        }
    }

    /// Builds `∏ (λ - r)` over `roots`.
    pub fn from_roots(roots: &[C64]) -> Self {
        let mut full = vec![C64::new(1.0, 0.0)];
        for &r in roots {
            let mut next = vec![C64::zero(); full.len() + 1];
            for (i, &a) in full.iter().enumerate() {
                next[i + 1] += a;
                next[i] -= a * r;
            }
            full = next;
        }
        full.pop();
        Self { coeffs: full }
    }

    /// Interprets a full coefficient vector (lowest first) whose last entry
    /// is the leading coefficient and must equal one.
    pub fn from_full(full: &[C64]) -> Result<Self> {
        match full.last() {
            Some(&lead) if (lead - C64::new(1.0, 0.0)).norm() == 0.0 => Ok(Self {
                coeffs: full[..full.len() - 1].to_vec(),
            }),
            _ => Err(GzError::Malformed("polynomial is not monic".into())),
        }
    }

    #[inline]
    pub fn degree(&self) -> usize {
        self.coeffs.len()
    }

    pub fn coeffs(&self) -> &[C64] {
        &self.coeffs
    }

    /// All coefficients including the leading one.
    pub fn full_coeffs(&self) -> Vec<C64> {
        let mut v = self.coeffs.clone();
        v.push(C64::new(1.0, 0.0));
        v
    }

    pub fn eval(&self, z: C64) -> C64 {
        let mut acc = C64::new(1.0, 0.0);
        for &c in self.coeffs.iter().rev() {
            acc = acc * z + c;
        }
        acc
    }

    /// Value and first derivative at `z`.
    pub fn eval_with_derivative(&self, z: C64) -> (C64, C64) {
        let mut p = C64::new(1.0, 0.0);
        let mut dp = C64::zero();
        for &c in self.coeffs.iter().rev() {
            dp = dp * z + p;
            p = p * z + c;
        }
        (p, dp)
    }

    pub fn max_coeff_diff(&self, other: &MonicPoly) -> f64 {
        assert_eq!(self.degree(), other.degree(), "degree mismatch");
        self.coeffs
            .iter()
            .zip(&other.coeffs)
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max)
    }
}

/// Long division of `num` by the monic `den` on full coefficient vectors.
/// Returns `(quotient, remainder)` with `deg remainder < deg den`.
pub fn divide_by_monic(num: &[C64], den: &MonicPoly) -> (Vec<C64>, Vec<C64>) {
    let d = den.degree();
    let mut rem = num.to_vec();
    if rem.len() <= d {
        return (Vec::new(), rem);
    }
    let qlen = rem.len() - d;
    let mut quot = vec![C64::zero(); qlen];
    for q in (0..qlen).rev() {
        let lead = rem[q + d];
        quot[q] = lead;
        rem[q + d] = C64::zero();
        for (i, &c) in den.coeffs().iter().enumerate() {
            rem[q + i] -= lead * c;
        }
    }
    rem.truncate(d);
    (quot, rem)
}

/// Expands a polynomial of degree `< m` in the monic triangular basis
/// `basis[0..m]` where `basis[j]` has degree `j`. Returns `coef` with
/// `p = Σ coef[j] basis[j]`.
pub fn expand_in_monic_basis(p: &[C64], basis: &[MonicPoly]) -> Vec<C64> {
    let m = basis.len();
    let mut rem = p.to_vec();
    rem.resize(m.max(rem.len()), C64::zero());
    debug_assert!(rem[m..].iter().all(|z| z.is_zero()));
    let mut coef = vec![C64::zero(); m];
    for j in (0..m).rev() {
        debug_assert_eq!(basis[j].degree(), j);
        let lead = rem[j];
        coef[j] = lead;
        rem[j] = C64::zero();
        for (i, &c) in basis[j].coeffs().iter().enumerate() {
            rem[i] -= lead * c;
        }
    }
    coef
}
