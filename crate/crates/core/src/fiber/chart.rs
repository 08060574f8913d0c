use alloc::vec::Vec;

use super::{diagonalize, require_disjoint, vandermonde_weight};
use crate::coords::GzCoord;
use crate::error::{GzError, Result};
use crate::linalg::Matrix;
use crate::tol::ToleranceConfig;
use crate::C64;

/// The strict-upper data `{x_{1..m, m+1}}` for `m = 1..n-1`.
pub fn beta(x: &Matrix) -> Vec<Vec<C64>> {
    (1..x.n())
        .map(|m| x.component_in_y(m).expect("level below n"))
        .collect()
}

/// Rebuilds the unique matrix over `c` with strict-upper data `u`.
///
/// Level by level, the new row is fixed by the residues of
/// `P_{m+1}(λ) / P_m(λ)` and the new corner by the trace.
pub fn beta_inverse(c: &GzCoord, u: &[Vec<C64>], tol: &ToleranceConfig) -> Result<Matrix> {
    let n = c.n();
    if u.len() != n.saturating_sub(1) {
        return Err(GzError::DimensionMismatch {
            expected: n.saturating_sub(1),
            found: u.len(),
        });
    }
    for (idx, level) in u.iter().enumerate() {
        if level.len() != idx + 1 {
            return Err(GzError::DimensionMismatch {
                expected: idx + 1,
                found: level.len(),
            });
        }
    }
    require_disjoint(c, tol)?;
    let mut x = Matrix::from_vec(1, alloc::vec![c.get(1, 1)])?;
    for m in 1..n {
        let (mu, _, v_inv) = diagonalize(&x)?;
        let a = v_inv.mul_vec(&u[m - 1]);
        let scale = a.iter().map(|z| z.norm()).fold(0.0, f64::max);
        let p_next = c.level_poly(m + 1);
        let mut b_eigen = Vec::with_capacity(m);
        for i in 0..m {
            if scale == 0.0 || a[i].norm() <= tol.eq_tol * scale {
                return Err(GzError::NotCyclic {
                    level: m,
                    index: i + 1,
                });
            }
            let residue = p_next.eval(mu[i]) / vandermonde_weight(&mu, i);
            b_eigen.push(-residue / a[i]);
        }
        let row: Vec<C64> = (0..m)
            .map(|j| (0..m).map(|i| b_eigen[i] * v_inv[(i, j)]).sum())
            .collect();
        let corner = c.get(m + 1, m + 1) - x.trace();
        let mut next = Matrix::zeros(m + 1);
        next.set_block(&x);
        for i in 0..m {
            next[(i, m)] = u[m - 1][i];
            next[(m, i)] = row[i];
        }
        next[(m, m)] = corner;
        x = next;
    }
    if !x.is_finite() {
        return Err(GzError::NonFinite);
    }
    Ok(x)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coords::phi;

    fn tol() -> ToleranceConfig {
        ToleranceConfig::default()
    }

    fn c(re: f64) -> C64 {
        C64::new(re, 0.0)
    }

    fn sample(n: usize, seed: u64) -> Matrix {
        let mut s = seed;
        Matrix::from_fn(n, |_, _| {
            s = s
                .wrapping_mul(6364136223846793005)
                .wrapping_add(1442695040888963407);
            let a = ((s >> 11) as f64 / (1u64 << 53) as f64) - 0.5;
            s = s
                .wrapping_mul(6364136223846793005)
                .wrapping_add(1442695040888963407);
            let b = ((s >> 11) as f64 / (1u64 << 53) as f64) - 0.5;
            C64::new(a, b)
        })
    }

    #[test]
    fn two_by_two() {
        let coord = GzCoord::new(2, alloc::vec![c(1.0), c(-2.0), c(5.0)]).unwrap();
        let x = beta_inverse(&coord, &[alloc::vec![c(6.0)]], &tol()).unwrap();
        assert!(x.max_abs_diff(&Matrix::from_real(2, &[1., 6., 1., 4.])) < 1e-14);
        assert_eq!(beta(&x), alloc::vec![alloc::vec![c(6.0)]]);
    }

    #[test]
    fn roundtrip() {
        for seed in 0..30 {
            let n = 2 + (seed as usize % 5);
            let x = sample(n, seed * 7 + 1);
            let back = beta_inverse(&phi(&x), &beta(&x), &tol()).unwrap();
            assert!(back.max_abs_diff(&x) < 1e-7, "seed {seed}");
        }
    }

    #[test]
    fn non_cyclic_data_is_rejected() {
        let x = Matrix::from_real(3, &[1., 1., 1., 1., 2., 1., 1., 1., 0.]);
        let mut u = beta(&x);
        let eigvec = crate::linalg::eig(&x.cutoff(2).unwrap()).unwrap().vectors;
        u[1] = alloc::vec![eigvec[(0, 0)], eigvec[(1, 0)]];
        assert!(matches!(
            beta_inverse(&phi(&x), &u, &tol()),
            Err(GzError::NotCyclic { level: 2, .. })
        ));
        let zeros: Vec<Vec<C64>> = (1..3).map(|m| alloc::vec![c(0.0); m]).collect();
        assert!(matches!(
            beta_inverse(&phi(&x), &zeros, &tol()),
            Err(GzError::NotCyclic { level: 1, .. })
        ));
        assert!(beta_inverse(&phi(&x), &u[..1], &tol()).is_err());
    }
}
