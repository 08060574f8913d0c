//! Regularity and strong regularity, centralizer bases `Z_{x,m}`, and the
//! tangent space to the orbit of the abelian group action.

use alloc::vec::Vec;

use crate::error::{GzError, Result};
use crate::linalg::{numeric_rank, Matrix};
use crate::tol::ToleranceConfig;
use crate::{tri, C64};

/// Embedded powers `(x_m)^j`, `j = 0..m`, of the level-`m` cutoff.
#[derive(Debug, Clone)]
pub struct CentralizerBasis {
    pub m: usize,
    pub powers: Vec<Matrix>,
}

impl CentralizerBasis {
    /// The generator `(x_m)^{m-k}` paired with the trace function `f_(k,m)`.
    pub fn generator(&self, k: usize) -> &Matrix {
        &self.powers[self.m - k]
    }
}

fn check_level(x: &Matrix, m: usize) -> Result<()> {
    if m == 0 || m > x.n() {
        return Err(GzError::IndexOutOfRange {
            what: "level",
            index: m,
            max: x.n(),
        });
    }
    Ok(())
}

pub fn centralizer_basis(x: &Matrix, m: usize) -> Result<CentralizerBasis> {
    check_level(x, m)?;
    let n = x.n();
    let powers = x
        .cutoff(m)?
        .powers(m)
        .into_iter()
        .map(|p| p.embed(n))
        .collect::<Result<Vec<_>>>()?;
    Ok(CentralizerBasis { m, powers })
}

/// `x_m` is regular iff its centralizer basis has rank `m`.
pub fn is_regular_cutoff(x: &Matrix, m: usize, tol: &ToleranceConfig) -> Result<bool> {
    let basis = centralizer_basis(x, m)?;
    Ok(numeric_rank(&basis.powers, tol)? == m)
}

pub fn regular_per_level(x: &Matrix, tol: &ToleranceConfig) -> Vec<bool> {
    (1..=x.n())
        .map(|m| is_regular_cutoff(x, m, tol).unwrap_or(false))
        .collect()
}

fn all_bases(x: &Matrix) -> Vec<CentralizerBasis> {
    (1..=x.n())
        .map(|m| centralizer_basis(x, m).expect("level in range"))
        .collect()
}

/// All `d(n)` matrices `(x_m)^{m-k}` are linearly independent.
pub fn is_strongly_regular(x: &Matrix, tol: &ToleranceConfig) -> bool {
    if x.n() == 0 {
        return true;
    }
    let family: Vec<Matrix> = all_bases(x).into_iter().flat_map(|b| b.powers).collect();
    numeric_rank(&family, tol).expect("uniform family") == tri(x.n())
}

/// The reason the pairwise criterion fails, if it does.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PairwiseFailure {
    /// Cutoff `x_m` is not regular.
    NonRegular { level: usize },
    /// `Z_{x,m} ∩ Z_{x,m+1} ≠ 0`.
    Intersecting { level: usize },
}

/// Strong regularity via the pairwise criterion: every cutoff regular and
/// adjacent centralizers intersecting trivially.
pub fn pairwise_failure(x: &Matrix, tol: &ToleranceConfig) -> Option<PairwiseFailure> {
    let bases = all_bases(x);
    for b in &bases {
        if numeric_rank(&b.powers, tol).expect("uniform family") != b.m {
            return Some(PairwiseFailure::NonRegular { level: b.m });
        }
    }
    for pair in bases.windows(2) {
        let stacked: Vec<Matrix> = pair[0]
            .powers
            .iter()
            .chain(&pair[1].powers)
            .cloned()
            .collect();
        let m = pair[0].m;
        if numeric_rank(&stacked, tol).expect("uniform family") != 2 * m + 1 {
            return Some(PairwiseFailure::Intersecting { level: m });
        }
    }
    None
}

pub fn is_strongly_regular_pairwise(x: &Matrix, tol: &ToleranceConfig) -> bool {
    pairwise_failure(x, tol).is_none()
}

/// Commutators `[(x_m)^{m-k}, x]` for `m = 1..n-1`, `k = 1..m`, ordered by
/// level then `k`. Level-`n` brackets vanish identically and are omitted.
pub fn tangent_space_basis(x: &Matrix) -> Vec<Matrix> {
    let n = x.n();
    let mut out = Vec::with_capacity(tri(n.saturating_sub(1)));
    for m in 1..n {
        let basis = centralizer_basis(x, m).expect("level in range");
        for k in 1..=m {
            out.push(basis.generator(k).commutator(x));
        }
    }
    out
}

/// Dimension of the orbit through `x`: rank of the tangent family.
pub fn orbit_dim(x: &Matrix, tol: &ToleranceConfig) -> usize {
    let basis = tangent_space_basis(x);
    if basis.is_empty() {
        return 0;
    }
    numeric_rank(&basis, tol).expect("uniform family")
}

/// The orbit symplectic pairing `ω_x(y, z) = tr(x [y, z])`.
pub fn symplectic_pairing(x: &Matrix, y: &Matrix, z: &Matrix) -> C64 {
    crate::linalg::trace_form(x, &y.commutator(z)).expect("same dimension")
}

/// Largest normalized pairing `|tr(x[z_a, z_b])| / (‖x‖‖z_a‖‖z_b‖)` over all
/// pairs of centralizer generators at levels `1..n`. Zero up to roundoff
/// because the tangent space of the group orbit is isotropic.
pub fn isotropy_defect(x: &Matrix) -> f64 {
    let gens: Vec<Matrix> = all_bases(x).into_iter().flat_map(|b| b.powers).collect();
    let xn = x.norm_fro();
    let mut worst: f64 = 0.0;
    for (a, za) in gens.iter().enumerate() {
        for zb in &gens[a + 1..] {
            let scale = xn * za.norm_fro() * zb.norm_fro();
            if scale == 0.0 {
                continue;
            }
            worst = worst.max(symplectic_pairing(x, za, zb).norm() / scale);
        }
    }
    worst
}
