//! Orthogonal polynomials of finitely supported measures on the line, their
//! Jacobi matrices, and the reconstruction of a Jacobi matrix from its
//! spectrum tower.

use alloc::vec;
use alloc::vec::Vec;

#[allow(unused_imports)] // float math on no_std targets
use num_traits::Float;

use crate::coords::{tower_from_matrix, SpectrumTower};
use crate::error::{GzError, Result};
use crate::linalg::{charpoly, divide_by_monic, Matrix, MonicPoly};
use crate::tol::ToleranceConfig;
use crate::C64;

const PIVOT_TOL: f64 = 1e-12;

/// A positive measure with finitely many atoms.
#[derive(Debug, Clone, PartialEq)]
pub struct DiscreteMeasure {
    nodes: Vec<f64>,
    weights: Vec<f64>,
}

impl DiscreteMeasure {
    pub fn new(nodes: Vec<f64>, weights: Vec<f64>) -> Result<Self> {
        if nodes.len() != weights.len() {
            return Err(GzError::DimensionMismatch {
                expected: nodes.len(),
                found: weights.len(),
            });
        }
        if nodes.is_empty() {
            return Err(GzError::InvalidMeasure("empty support"));
        }
        if nodes.iter().chain(&weights).any(|v| !v.is_finite()) {
            return Err(GzError::NonFinite);
        }
        if weights.iter().any(|&w| w <= 0.0) {
            return Err(GzError::InvalidMeasure("weights must be positive"));
        }
        if nodes.windows(2).any(|p| p[0] >= p[1]) {
            return Err(GzError::InvalidMeasure("nodes must be strictly increasing"));
        }
        Ok(Self { nodes, weights })
    }

    /// Equal weights `1/len` on the given nodes.
    pub fn uniform(nodes: Vec<f64>) -> Result<Self> {
        let w = 1.0 / nodes.len().max(1) as f64;
        let weights = vec![w; nodes.len()];
        Self::new(nodes, weights)
    }

    pub fn nodes(&self) -> &[f64] {
        &self.nodes
    }

    pub fn weights(&self) -> &[f64] {
        &self.weights
    }

    pub fn support_size(&self) -> usize {
        self.nodes.len()
    }

    fn inner(&self, p: &[f64], q: &[f64]) -> f64 {
        self.weights
            .iter()
            .zip(p.iter().zip(q))
            .map(|(w, (a, b))| w * a * b)
            .sum()
    }

    fn require_support(&self, needed: usize) -> Result<()> {
        if self.nodes.len() < needed {
            return Err(GzError::InsufficientSupport {
                needed,
                found: self.nodes.len(),
            });
        }
        Ok(())
    }
}

/// Evaluates a real polynomial given by ascending coefficients.
pub fn eval_real(coeffs: &[f64], t: f64) -> f64 {
    coeffs.iter().rev().fold(0.0, |acc, &c| acc * t + c)
}

/// `φ_0, …, φ_{n-1}`, orthonormal for `μ` with positive leading coefficients,
/// as ascending coefficient vectors (`φ_k` has `k + 1` entries).
///
/// The degree-`k` candidate is `t φ_{k-1}` rather than `t^k`; both span the
/// same space modulo lower degrees, so the output is the Gram-Schmidt
/// sequence of the monomials, without the monomials' conditioning.
pub fn orthonormal_polys(mu: &DiscreteMeasure, n: usize) -> Result<Vec<Vec<f64>>> {
    Ok(gram_schmidt(mu, n)?.0)
}

/// Coefficients and node values of the orthonormal polynomials.
fn gram_schmidt(mu: &DiscreteMeasure, n: usize) -> Result<(Vec<Vec<f64>>, Vec<Vec<f64>>)> {
    mu.require_support(n)?;
    let nodes = &mu.nodes;
    let mut coeffs: Vec<Vec<f64>> = Vec::with_capacity(n);
    let mut values: Vec<Vec<f64>> = Vec::with_capacity(n);
    for k in 0..n {
        let (mut c, mut v) = match (coeffs.last(), values.last()) {
            (Some(pc), Some(pv)) => {
                let mut c = vec![0.0; k + 1];
                c[1..].copy_from_slice(pc);
                let v = nodes.iter().zip(pv).map(|(t, a)| t * a).collect();
                (c, v)
            }
            _ => (vec![1.0], vec![1.0; nodes.len()]),
        };
        let start = mu.inner(&v, &v);
        for _pass in 0..2 {
            for (pc, pv) in coeffs.iter().zip(&values) {
                let proj = mu.inner(&v, pv);
                for (a, b) in c.iter_mut().zip(pc) {
                    *a -= proj * b;
                }
                for (a, b) in v.iter_mut().zip(pv) {
                    *a -= proj * b;
                }
            }
        }
        let norm_sq = mu.inner(&v, &v);
        if !(norm_sq > PIVOT_TOL * PIVOT_TOL * start) {
            return Err(GzError::InsufficientSupport {
                needed: k + 1,
                found: mu.support_size(),
            });
        }
        let norm = norm_sq.sqrt();
        c.iter_mut().for_each(|a| *a /= norm);
        v.iter_mut().for_each(|a| *a /= norm);
        coeffs.push(c);
        values.push(v);
    }
    Ok((coeffs, values))
}

/// Coefficients of `t φ_k = (a_k/a_{k+1}) φ_{k+1} + c_kk φ_k + (a_{k-1}/a_k) φ_{k-1}`.
#[derive(Debug, Clone, PartialEq)]
pub struct ThreeTermRecurrence {
    pub diag: Vec<f64>,
    pub offdiag: Vec<f64>,
}

impl ThreeTermRecurrence {
    pub fn n(&self) -> usize {
        self.diag.len()
    }

    /// The symmetric tridiagonal matrix of the recurrence.
    pub fn to_matrix(&self) -> Matrix {
        let n = self.diag.len();
        Matrix::from_fn(n, |i, j| {
            let v = if i == j {
                self.diag[i]
            } else if i.abs_diff(j) == 1 {
                self.offdiag[i.min(j)]
            } else {
                0.0
            };
            C64::new(v, 0.0)
        })
    }
}

pub fn recurrence_of_measure(mu: &DiscreteMeasure, n: usize) -> Result<ThreeTermRecurrence> {
    let (_, values) = gram_schmidt(mu, n)?;
    let times_t = |v: &[f64]| -> Vec<f64> { mu.nodes.iter().zip(v).map(|(t, a)| t * a).collect() };
    let diag = values.iter().map(|v| mu.inner(v, &times_t(v))).collect();
    let offdiag = values
        .windows(2)
        .map(|w| mu.inner(&w[0], &times_t(&w[1])))
        .collect();
    Ok(ThreeTermRecurrence { diag, offdiag })
}

/// The `n x n` Jacobi matrix of multiplication by `t` in the orthonormal basis.
pub fn jacobi_matrix(mu: &DiscreteMeasure, n: usize) -> Result<Matrix> {
    Ok(recurrence_of_measure(mu, n)?.to_matrix())
}

/// Whether every cutoff characteristic polynomial of the Jacobi matrix is
/// the corresponding monic orthogonal polynomial. Needs `n + 1` atoms.
pub fn verify_monic_match(mu: &DiscreteMeasure, n: usize, tol: &ToleranceConfig) -> Result<bool> {
    mu.require_support(n + 1)?;
    let phis = orthonormal_polys(mu, n + 1)?;
    let jac = jacobi_matrix(mu, n)?;
    for m in 1..=n {
        let cp = charpoly(&jac.cutoff(m)?);
        let lead = phis[m][m];
        let monic: Vec<C64> = phis[m][..m]
            .iter()
            .map(|c| C64::new(c / lead, 0.0))
            .collect();
        let monic = MonicPoly::new(monic);
        let scale = 1.0 + monic.coeffs().iter().map(|c| c.norm()).fold(0.0, f64::max);
        if cp.max_coeff_diff(&monic) > tol.eq_tol * scale {
            return Ok(false);
        }
    }
    Ok(true)
}

/// The unique Jacobi matrix with positive off-diagonals whose cutoff spectra
/// are the levels of `t`.
pub fn recurrence_from_tower(
    t: &SpectrumTower,
    tol: &ToleranceConfig,
) -> Result<ThreeTermRecurrence> {
    if let Some(level) = t.interlacing_violation(tol) {
        return Err(GzError::NotInterlacing { level });
    }
    let n = t.n();
    let mut polys = vec![MonicPoly::one()];
    polys.extend(t.levels().iter().map(|l| MonicPoly::from_roots(l)));
    let mut diag = Vec::with_capacity(n);
    let mut offdiag = Vec::with_capacity(n.saturating_sub(1));
    for m in 0..n {
        let (quot, rem) = divide_by_monic(&polys[m + 1].full_coeffs(), &polys[m]);
        // quotient is λ - c_m
        diag.push(-quot[0].re);
        if m > 0 {
            let b = -rem[m - 1].re;
            if !(b > 0.0) {
                return Err(GzError::NotInterlacing { level: m });
            }
            offdiag.push(b.sqrt());
        }
    }
    let rec = ThreeTermRecurrence { diag, offdiag };
    let rebuilt = tower_from_matrix(&rec.to_matrix(), tol)?;
    let scale = 1.0
        + t.levels()
            .iter()
            .flatten()
            .map(|z| z.norm())
            .fold(0.0, f64::max);
    let deviation = rebuilt.max_diff(t);
    if !(deviation <= tol.eq_tol * scale) {
        return Err(GzError::VerificationFailed {
            what: "Jacobi tower realization",
            deviation,
        });
    }
    Ok(rec)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coords::phi;
    use crate::fiber::is_jacobi;
    use crate::regularity::is_strongly_regular;

    fn tol() -> ToleranceConfig {
        ToleranceConfig::default()
    }

    fn three_point() -> DiscreteMeasure {
        DiscreteMeasure::uniform(vec![-1.0, 0.0, 1.0]).unwrap()
    }

    fn lcg_measure(seed: u64, len: usize) -> DiscreteMeasure {
        let mut s = seed;
        let mut next = || {
            s = s
                .wrapping_mul(6364136223846793005)
                .wrapping_add(1442695040888963407);
            (s >> 11) as f64 / (1u64 << 53) as f64
        };
        let mut nodes = Vec::with_capacity(len);
        let mut x = -2.0;
        for _ in 0..len {
            x += 0.2 + next();
            nodes.push(x);
        }
        let weights = (0..len).map(|_| 0.1 + next()).collect();
        DiscreteMeasure::new(nodes, weights).unwrap()
    }

    fn moments(mu: &DiscreteMeasure, count: usize) -> Vec<f64> {
        (0..count)
            .map(|k| {
                mu.nodes()
                    .iter()
                    .zip(mu.weights())
                    .map(|(t, w)| w * t.powi(k as i32))
                    .sum()
            })
            .collect()
    }

    #[test]
    fn measure_validation() {
        assert!(DiscreteMeasure::new(vec![0.0, 1.0], vec![1.0]).is_err());
        assert!(DiscreteMeasure::new(vec![0.0, 1.0], vec![1.0, 0.0]).is_err());
        assert!(DiscreteMeasure::new(vec![1.0, 0.0], vec![1.0, 1.0]).is_err());
        assert!(DiscreteMeasure::new(vec![], vec![]).is_err());
        assert!(DiscreteMeasure::new(vec![f64::NAN], vec![1.0]).is_err());
    }

    #[test]
    fn three_point_polys() {
        let phis = orthonormal_polys(&three_point(), 3).unwrap();
        assert!((phis[0][0] - 1.0).abs() < 1e-15);
        let a1 = 1.0 / (2.0f64 / 3.0).sqrt();
        assert!(phis[1][0].abs() < 1e-15 && (phis[1][1] - a1).abs() < 1e-14);
        let lead = phis[2][2];
        assert!((phis[2][0] / lead + 2.0 / 3.0).abs() < 1e-14);
        assert!((phis[2][1] / lead).abs() < 1e-14);
        assert!(matches!(
            orthonormal_polys(&three_point(), 4),
            Err(GzError::InsufficientSupport { .. })
        ));
    }

    #[test]
    fn orthonormality_against_moments() {
        let mu = lcg_measure(4, 8);
        let phis = orthonormal_polys(&mu, 6).unwrap();
        let mom = moments(&mu, 12);
        for (i, p) in phis.iter().enumerate() {
            assert!(p[i] > 0.0);
            for (j, q) in phis.iter().enumerate() {
                let mut ip = 0.0;
                for (a, pa) in p.iter().enumerate() {
                    for (b, qb) in q.iter().enumerate() {
                        ip += pa * qb * mom[a + b];
                    }
                }
                let want = if i == j { 1.0 } else { 0.0 };
                assert!((ip - want).abs() < 1e-10, "({i},{j}) {ip}");
            }
        }
    }

    #[test]
    fn parity_for_symmetric_measures() {
        let mu = DiscreteMeasure::new(
            vec![-2.0, -0.5, 0.0, 0.5, 2.0],
            vec![0.3, 1.0, 0.7, 1.0, 0.3],
        )
        .unwrap();
        for (k, p) in orthonormal_polys(&mu, 5).unwrap().iter().enumerate() {
            for (j, c) in p.iter().enumerate() {
                if (j + k) % 2 == 1 {
                    assert!(c.abs() < 1e-12);
                }
            }
        }
    }

    #[test]
    fn jacobi_matrices() {
        let j = jacobi_matrix(&three_point(), 3).unwrap();
        let r23 = (2.0f64 / 3.0).sqrt();
        let r13 = (1.0f64 / 3.0).sqrt();
        let expected = Matrix::from_real(3, &[0., r23, 0., r23, 0., r13, 0., r13, 0.]);
        assert!(j.max_abs_diff(&expected) < 1e-14);
        let cp = charpoly(&j);
        assert!(
            cp.max_coeff_diff(&MonicPoly::from_roots(&[
                C64::new(-1.0, 0.0),
                C64::new(0.0, 0.0),
                C64::new(1.0, 0.0)
            ])) < 1e-14
        );
        let mu = DiscreteMeasure::new(vec![1.0, 2.0, 5.0], vec![1.0, 2.0, 1.0]).unwrap();
        let j1 = jacobi_matrix(&mu, 1).unwrap();
        assert!((j1[(0, 0)] - C64::new(2.5, 0.0)).norm() < 1e-14);
    }

    #[test]
    fn offdiag_matches_inner_product() {
        let mu = lcg_measure(9, 7);
        let phis = orthonormal_polys(&mu, 5).unwrap();
        let rec = recurrence_of_measure(&mu, 5).unwrap();
        for k in 0..4 {
            let v: Vec<f64> = mu.nodes().iter().map(|&t| eval_real(&phis[k], t)).collect();
            let tw: Vec<f64> = mu
                .nodes()
                .iter()
                .map(|&t| t * eval_real(&phis[k + 1], t))
                .collect();
            assert!((mu.inner(&v, &tw) - rec.offdiag[k]).abs() < 1e-10);
            assert!(rec.offdiag[k] > 0.0);
        }
    }

    #[test]
    fn quadrature_exactness_and_structure() {
        let mu = lcg_measure(21, 5);
        let j = jacobi_matrix(&mu, 5).unwrap();
        let t = tower_from_matrix(&j, &tol()).unwrap();
        for (got, want) in t.level(5).iter().zip(mu.nodes()) {
            assert!((got - C64::new(*want, 0.0)).norm() < 1e-8);
        }
        assert!(is_jacobi(&j, &tol()) && j.is_symmetric(0.0));
        assert!(is_strongly_regular(&j, &tol()));
        assert!(t.is_interlacing(&tol()));
    }

    #[test]
    fn monic_match() {
        assert!(verify_monic_match(&three_point(), 2, &tol()).unwrap());
        for seed in 0..10 {
            let mu = lcg_measure(seed, 5 + seed as usize % 5);
            assert!(verify_monic_match(&mu, 4, &tol()).unwrap(), "seed {seed}");
        }
        assert!(verify_monic_match(&three_point(), 3, &tol()).is_err());
    }

    #[test]
    fn tower_reconstruction() {
        let s2 = 2f64.sqrt();
        let t = SpectrumTower::from_real(&[&[0.0], &[-1.0, 1.0], &[-s2, 0.0, s2]]).unwrap();
        let rec = recurrence_from_tower(&t, &tol()).unwrap();
        let x = Matrix::from_real(3, &[0., 1., 0., 1., 0., 1., 0., 1., 0.]);
        assert!(rec.to_matrix().max_abs_diff(&x) < 1e-12);

        let bad = SpectrumTower::from_real(&[&[0.0], &[1.0, 2.0]]).unwrap();
        assert!(matches!(
            recurrence_from_tower(&bad, &tol()),
            Err(GzError::NotInterlacing { .. })
        ));
    }

    #[test]
    fn tower_roundtrip() {
        for seed in 30..40 {
            let mu = lcg_measure(seed, 7);
            let j = jacobi_matrix(&mu, 5).unwrap();
            let t = tower_from_matrix(&j, &tol()).unwrap();
            let rec = recurrence_from_tower(&t, &tol()).unwrap();
            assert!(rec.to_matrix().max_abs_diff(&j) < 1e-8, "seed {seed}");
            assert!(phi(&rec.to_matrix()).max_diff(&phi(&j)) < 1e-8);
        }
    }

    #[test]
    fn non_jacobi_tower_is_rejected() {
        // strictly interlacing, but level 2 is not forced by levels 1 and 3
        let t = SpectrumTower::from_real(&[&[0.0], &[-1.0, 1.0], &[-2.0, 0.5, 3.0]]).unwrap();
        assert!(matches!(
            recurrence_from_tower(&t, &tol()),
            Err(GzError::VerificationFailed { .. })
        ));
    }
}
