//! Dense factorizations: LU with partial pivoting, Householder Hessenberg
//! reduction, complex Schur form by shifted QR, and eigenvectors by
//! triangular back-substitution.

use alloc::vec::Vec;

#[allow(unused_imports)] // float math on no_std targets
use num_traits::Float;
use num_traits::Zero;

use super::matrix::Matrix;
use crate::error::{GzError, Result};
use crate::C64;

const EPS: f64 = f64::EPSILON;

/// `PA = LU` with unit lower `L` packed below the diagonal of `lu`.
#[derive(Debug, Clone)]
pub struct Lu {
    lu: Matrix,
    perm: Vec<usize>,
    sign: f64,
}

impl Lu {
    pub fn new(a: &Matrix) -> Result<Lu> {
        let n = a.n();
        let mut lu = a.clone();
        let mut perm: Vec<usize> = (0..n).collect();
        let mut sign = 1.0;
        for k in 0..n {
            let (p, pmax) = (k..n)
                .map(|i| (i, lu[(i, k)].norm()))
                .fold(
                    (k, -1.0),
                    |best, cur| if cur.1 > best.1 { cur } else { best },
                );
            if pmax == 0.0 || !pmax.is_finite() {
                return Err(GzError::Singular);
            }
            if p != k {
                for j in 0..n {
                    let tmp = lu[(k, j)];
                    lu[(k, j)] = lu[(p, j)];
                    lu[(p, j)] = tmp;
                }
                perm.swap(k, p);
                sign = -sign;
            }
            let pivot = lu[(k, k)];
            for i in k + 1..n {
                let f = lu[(i, k)] / pivot;
                lu[(i, k)] = f;
                if f.is_zero() {
                    continue;
                }
                for j in k + 1..n {
                    let u = lu[(k, j)];
                    lu[(i, j)] -= f * u;
                }
            }
        }
        Ok(Lu { lu, perm, sign })
    }

    pub fn det(&self) -> C64 {
        let n = self.lu.n();
        (0..n).fold(C64::new(self.sign, 0.0), |acc, i| acc * self.lu[(i, i)])
    }

    pub fn solve_vec(&self, b: &[C64]) -> Vec<C64> {
        let n = self.lu.n();
        let mut y: Vec<C64> = self.perm.iter().map(|&p| b[p]).collect();
        for i in 0..n {
            for k in 0..i {
                let l = self.lu[(i, k)];
                let yk = y[k];
                y[i] -= l * yk;
            }
        }
        for i in (0..n).rev() {
            for k in i + 1..n {
                let u = self.lu[(i, k)];
                let yk = y[k];
                y[i] -= u * yk;
            }
            y[i] /= self.lu[(i, i)];
        }
        y
    }

    /// Solves `A X = B` column by column.
    pub fn solve(&self, b: &Matrix) -> Matrix {
        let n = b.n();
        let mut out = Matrix::zeros(n);
        for j in 0..n {
            let col: Vec<C64> = (0..n).map(|i| b[(i, j)]).collect();
            let x = self.solve_vec(&col);
            for i in 0..n {
                out[(i, j)] = x[i];
            }
        }
        out
    }

    pub fn inverse(&self) -> Matrix {
        self.solve(&Matrix::identity(self.lu.n()))
    }
}

pub fn inverse(a: &Matrix) -> Result<Matrix> {
    let inv = Lu::new(a)?.inverse();
    if inv.is_finite() {
        Ok(inv)
    } else {
        Err(GzError::Singular)
    }
}

pub fn det(a: &Matrix) -> C64 {
    match Lu::new(a) {
        Ok(lu) => lu.det(),
        Err(_) => C64::zero(),
    }
}

/// Householder vector `v` (with `v[0]` real-normalized form) and scalar
/// `beta` such that `(I - beta v v^H) x = alpha e_1`. Returns `None` when the
/// tail of `x` already vanishes.
fn householder(x: &[C64]) -> Option<(Vec<C64>, f64)> {
    let tail: f64 = x[1..].iter().map(|z| z.norm_sqr()).sum();
    if tail == 0.0 {
        return None;
    }
    let norm = (x[0].norm_sqr() + tail).sqrt();
    let phase = if x[0].norm() == 0.0 {
        C64::new(1.0, 0.0)
    } else {
        x[0] / x[0].norm()
    };
    let alpha = -phase * norm;
    let mut v = x.to_vec();
    v[0] -= alpha;
    let vnorm2: f64 = v.iter().map(|z| z.norm_sqr()).sum();
    Some((v, 2.0 / vnorm2))
}

/// Unitary reduction `A = Q H Q^H` with `H` upper Hessenberg.
pub fn hessenberg(a: &Matrix) -> (Matrix, Matrix) {
    let n = a.n();
    let mut h = a.clone();
    let mut q = Matrix::identity(n);
    if n < 3 {
        return (h, q);
    }
    for k in 0..n - 2 {
        let x: Vec<C64> = (k + 1..n).map(|i| h[(i, k)]).collect();
        let Some((v, beta)) = householder(&x) else {
            continue;
        };
        // H <- P H, rows k+1..n
        for j in k..n {
            let s: C64 = v
                .iter()
                .enumerate()
                .map(|(t, vt)| vt.conj() * h[(k + 1 + t, j)])
                .sum::<C64>()
                * beta;
            for (t, vt) in v.iter().enumerate() {
                h[(k + 1 + t, j)] -= vt * s;
            }
        }
        // H <- H P, columns k+1..n
        for i in 0..n {
            let s: C64 = v
                .iter()
                .enumerate()
                .map(|(t, vt)| h[(i, k + 1 + t)] * vt)
                .sum::<C64>()
                * beta;
            for (t, vt) in v.iter().enumerate() {
                h[(i, k + 1 + t)] -= s * vt.conj();
            }
        }
        for i in 0..n {
            let s: C64 = v
                .iter()
                .enumerate()
                .map(|(t, vt)| q[(i, k + 1 + t)] * vt)
                .sum::<C64>()
                * beta;
            for (t, vt) in v.iter().enumerate() {
                q[(i, k + 1 + t)] -= s * vt.conj();
            }
        }
        for i in k + 2..n {
            h[(i, k)] = C64::zero();
        }
    }
    (h, q)
}

/// Givens pair `(c, s)` with `[c s; -conj(s) c] [a; b] = [r; 0]`.
fn givens(a: C64, b: C64) -> (f64, C64) {
    let bn = b.norm();
    if bn == 0.0 {
        return (1.0, C64::zero());
    }
    let an = a.norm();
    if an == 0.0 {
        return (0.0, b.conj() / bn);
    }
    let rho = an.hypot(bn);
    let c = an / rho;
    let s = (a / an) * b.conj() / rho;
    (c, s)
}

/// Complex Schur decomposition `A = Z T Z^H` with `T` upper triangular.
pub fn schur(a: &Matrix) -> Result<(Matrix, Matrix)> {
    if !a.is_finite() {
        return Err(GzError::NonFinite);
    }
    let n = a.n();
    let (mut h, mut z) = hessenberg(a);
    if n < 2 {
        return Ok((h, z));
    }
    let scale = h.norm_fro().max(f64::MIN_POSITIVE);
    let max_iter = 60 * n;
    let mut hi = n - 1;
    let mut iter = 0usize;
    let mut rots: Vec<(f64, C64)> = Vec::with_capacity(n);
    while hi > 0 {
        let mut l = hi;
        while l > 0 {
            let sub = h[(l, l - 1)].norm();
            let mut diag = h[(l - 1, l - 1)].norm() + h[(l, l)].norm();
            if diag == 0.0 {
                diag = scale;
            }
            if sub <= EPS * diag {
                h[(l, l - 1)] = C64::zero();
                break;
            }
            l -= 1;
        }
        if l == hi {
            hi -= 1;
            iter = 0;
            continue;
        }
        iter += 1;
        if iter > max_iter {
            return Err(GzError::NoConvergence {
                what: "complex Schur QR",
                iterations: iter,
            });
        }
        let mu = if iter.is_multiple_of(11) {
            // exceptional shift
            h[(hi, hi)] + C64::new(0.75 * h[(hi, hi - 1)].norm(), 0.25 * h[(hi, hi - 1)].norm())
        } else {
            let a11 = h[(hi - 1, hi - 1)];
            let a12 = h[(hi - 1, hi)];
            let a21 = h[(hi, hi - 1)];
            let a22 = h[(hi, hi)];
            let half = (a11 - a22) * 0.5;
            let disc = (half * half + a12 * a21).sqrt();
            let mid = (a11 + a22) * 0.5;
            let r1 = mid + disc;
            let r2 = mid - disc;
            if (r1 - a22).norm() <= (r2 - a22).norm() {
                r1
            } else {
                r2
            }
        };
        for i in l..=hi {
            h[(i, i)] -= mu;
        }
        rots.clear();
        for k in l..hi {
            let (c, s) = givens(h[(k, k)], h[(k + 1, k)]);
            for j in k..n {
                let h1 = h[(k, j)];
                let h2 = h[(k + 1, j)];
                h[(k, j)] = h1 * c + s * h2;
                h[(k + 1, j)] = -s.conj() * h1 + h2 * c;
            }
            h[(k + 1, k)] = C64::zero();
            rots.push((c, s));
        }
        for (idx, &(c, s)) in rots.iter().enumerate() {
            let k = l + idx;
            let top = (k + 1).min(hi);
            for i in 0..=top {
                let h1 = h[(i, k)];
                let h2 = h[(i, k + 1)];
                h[(i, k)] = h1 * c + h2 * s.conj();
                h[(i, k + 1)] = -h1 * s + h2 * c;
            }
            for i in 0..n {
                let z1 = z[(i, k)];
                let z2 = z[(i, k + 1)];
                z[(i, k)] = z1 * c + z2 * s.conj();
                z[(i, k + 1)] = -z1 * s + z2 * c;
            }
        }
        for i in l..=hi {
            h[(i, i)] += mu;
        }
        if !h.is_finite() {
            return Err(GzError::NonFinite);
        }
    }
    for i in 1..n {
        for j in 0..i {
            h[(i, j)] = C64::zero();
        }
    }
    Ok((h, z))
}

pub fn eigenvalues(a: &Matrix) -> Result<Vec<C64>> {
    let (t, _) = schur(a)?;
    Ok((0..a.n()).map(|i| t[(i, i)]).collect())
}

/// Eigenvalues and unit-norm right eigenvectors (columns of `vectors`).
#[derive(Debug, Clone)]
pub struct Eigen {
    pub values: Vec<C64>,
    pub vectors: Matrix,
}

pub fn eig(a: &Matrix) -> Result<Eigen> {
    let n = a.n();
    let (t, z) = schur(a)?;
    let values: Vec<C64> = (0..n).map(|i| t[(i, i)]).collect();
    let small = (EPS * t.norm_fro()).max(f64::MIN_POSITIVE);
    let mut vectors = Matrix::zeros(n);
    let mut y = alloc::vec![C64::zero(); n];
    for i in 0..n {
        let lambda = values[i];
        y.iter_mut().for_each(|v| *v = C64::zero());
        y[i] = C64::new(1.0, 0.0);
        for j in (0..i).rev() {
            let mut s = C64::zero();
            for k in j + 1..=i {
                s += t[(j, k)] * y[k];
            }
            let mut denom = t[(j, j)] - lambda;
            if denom.norm() < small {
                denom = C64::new(small, 0.0);
            }
            y[j] = -s / denom;
        }
        let v = z.mul_vec(&y);
        let norm = v.iter().map(|c| c.norm_sqr()).sum::<f64>().sqrt();
        for r in 0..n {
            vectors[(r, i)] = v[r] / norm;
        }
    }
    Ok(Eigen { values, vectors })
}

#[cfg(test)]
mod tests {
    use super::*;

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
    fn lu_inverse_and_det() {
        let a = Matrix::from_real(2, &[1.0, 2.0, 3.0, 4.0]);
        let lu = Lu::new(&a).unwrap();
        assert!((lu.det() - C64::new(-2.0, 0.0)).norm() < 1e-14);
        let inv = lu.inverse();
        assert!(a.matmul(&inv).max_abs_diff(&Matrix::identity(2)) < 1e-14);
        assert_eq!(Lu::new(&Matrix::zeros(3)).err(), Some(GzError::Singular));
    }

    #[test]
    fn hessenberg_is_similarity() {
        for n in 1..7 {
            let a = sample(n, n as u64);
            let (h, q) = hessenberg(&a);
            for i in 0..n {
                for j in 0..i.saturating_sub(1) {
                    assert_eq!(h[(i, j)], C64::zero());
                }
            }
            let back = q.matmul(&h).matmul(&q.conj_transpose());
            assert!(back.max_abs_diff(&a) < 1e-13);
            assert!(
                q.conj_transpose()
                    .matmul(&q)
                    .max_abs_diff(&Matrix::identity(n))
                    < 1e-13
            );
        }
    }

    #[test]
    fn schur_reconstructs() {
        for n in 1..9 {
            let a = sample(n, 100 + n as u64);
            let (t, z) = schur(&a).unwrap();
            let back = z.matmul(&t).matmul(&z.conj_transpose());
            assert!(back.max_abs_diff(&a) < 1e-12, "n={n}");
        }
    }

    #[test]
    fn eigenvectors_satisfy_definition() {
        for n in 1..8 {
            let a = sample(n, 7 * n as u64);
            let e = eig(&a).unwrap();
            for i in 0..n {
                let v: Vec<C64> = (0..n).map(|r| e.vectors[(r, i)]).collect();
                let av = a.mul_vec(&v);
                for r in 0..n {
                    assert!((av[r] - e.values[i] * v[r]).norm() < 1e-11);
                }
            }
        }
    }

    #[test]
    fn nilpotent_and_defective_inputs_converge() {
        let shift = Matrix::from_fn(5, |i, j| {
            if i == j + 1 {
                C64::new(1.0, 0.0)
            } else {
                C64::zero()
            }
        });
        let vals = eigenvalues(&shift).unwrap();
        assert!(vals.iter().all(|v| v.norm() < 1e-12));
        let jordan = Matrix::from_real(2, &[3.0, 1.0, 0.0, 3.0]);
        let vals = eigenvalues(&jordan).unwrap();
        assert!(vals.iter().all(|v| (v - C64::new(3.0, 0.0)).norm() < 1e-12));
    }
}
