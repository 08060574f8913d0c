use alloc::vec;
use alloc::vec::Vec;
use core::fmt;
use core::ops::{Add, Index, IndexMut, Mul, Neg, Sub};

#[allow(unused_imports)] // float math on no_std targets
use num_traits::Float;
use num_traits::Zero;

use crate::error::{GzError, Result};
use crate::C64;

/// Dense square complex matrix stored row-major.
///
/// Indices passed to `Index` are zero-based `(row, col)`. Levels (cutoff
/// sizes) are counts and therefore one-based.
#[derive(Clone, PartialEq)]
pub struct Matrix {
    n: usize,
    data: Vec<C64>,
}

impl Matrix {
    pub fn zeros(n: usize) -> Self {
        Self {
            n,
            data: vec![C64::zero(); n * n],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n);
        for i in 0..n {
            m[(i, i)] = C64::new(1.0, 0.0);
        }
        m
    }

    pub fn from_fn(n: usize, mut f: impl FnMut(usize, usize) -> C64) -> Self {
        let mut data = Vec::with_capacity(n * n);
        for i in 0..n {
            for j in 0..n {
                data.push(f(i, j));
            }
        }
        Self { n, data }
    }

    /// Builds a matrix from row-major data of length `n*n`.
    pub fn from_vec(n: usize, data: Vec<C64>) -> Result<Self> {
        if data.len() != n * n {
            return Err(GzError::DimensionMismatch {
                expected: n * n,
                found: data.len(),
            });
        }
        let m = Self { n, data };
        if !m.is_finite() {
            return Err(GzError::NonFinite);
        }
        Ok(m)
    }

    pub fn from_rows(rows: &[Vec<C64>]) -> Result<Self> {
        let n = rows.len();
        let mut data = Vec::with_capacity(n * n);
        for row in rows {
            if row.len() != n {
                return Err(GzError::DimensionMismatch {
                    expected: n,
                    found: row.len(),
                });
            }
            data.extend_from_slice(row);
        }
        Self::from_vec(n, data)
    }

    /// Real matrix from row-major data. Panics if `data.len() != n*n`.
    pub fn from_real(n: usize, data: &[f64]) -> Self {
        assert_eq!(data.len(), n * n, "from_real: wrong data length");
        Self {
            n,
            data: data.iter().map(|&v| C64::new(v, 0.0)).collect(),
        }
    }

    pub fn diag(values: &[C64]) -> Self {
        let mut m = Self::zeros(values.len());
        for (i, &v) in values.iter().enumerate() {
            m[(i, i)] = v;
        }
        m
    }

    /// Matrix unit with a single one at zero-based `(i, j)`.
    pub fn unit(n: usize, i: usize, j: usize) -> Self {
        let mut m = Self::zeros(n);
        m[(i, j)] = C64::new(1.0, 0.0);
        m
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn as_slice(&self) -> &[C64] {
        &self.data
    }

    pub fn into_vec(self) -> Vec<C64> {
        self.data
    }

    pub fn row(&self, i: usize) -> &[C64] {
        &self.data[i * self.n..(i + 1) * self.n]
    }

    pub fn is_finite(&self) -> bool {
        self.data
            .iter()
            .all(|z| z.re.is_finite() && z.im.is_finite())
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.n, |i, j| self[(j, i)])
    }

    pub fn conj_transpose(&self) -> Self {
        Self::from_fn(self.n, |i, j| self[(j, i)].conj())
    }

    pub fn scale(&self, s: C64) -> Self {
        Self {
            n: self.n,
            data: self.data.iter().map(|&z| z * s).collect(),
        }
    }

    pub fn trace(&self) -> C64 {
        (0..self.n).map(|i| self[(i, i)]).sum()
    }

    pub fn norm_fro(&self) -> f64 {
        self.data.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
    }

    /// Largest entry modulus.
    pub fn norm_max(&self) -> f64 {
        self.data.iter().map(|z| z.norm()).fold(0.0, f64::max)
    }

    /// Maximum absolute column sum.
    pub fn norm_1(&self) -> f64 {
        (0..self.n)
            .map(|j| (0..self.n).map(|i| self[(i, j)].norm()).sum::<f64>())
            .fold(0.0, f64::max)
    }

    pub fn max_abs_diff(&self, other: &Matrix) -> f64 {
        assert_eq!(self.n, other.n, "max_abs_diff: dimension mismatch");
        self.data
            .iter()
            .zip(&other.data)
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max)
    }

    /// Largest imaginary part magnitude over all entries.
    pub fn max_imag(&self) -> f64 {
        self.data.iter().map(|z| z.im.abs()).fold(0.0, f64::max)
    }

    pub fn matmul(&self, rhs: &Matrix) -> Matrix {
        assert_eq!(self.n, rhs.n, "matmul: dimension mismatch");
        let n = self.n;
        let mut out = Matrix::zeros(n);
        for i in 0..n {
            for k in 0..n {
                let a = self.data[i * n + k];
                if a.is_zero() {
                    continue;
                }
                for j in 0..n {
                    out.data[i * n + j] += a * rhs.data[k * n + j];
                }
            }
        }
        out
    }

    pub fn mul_vec(&self, v: &[C64]) -> Vec<C64> {
        assert_eq!(self.n, v.len(), "mul_vec: dimension mismatch");
        (0..self.n)
            .map(|i| self.row(i).iter().zip(v).map(|(a, b)| a * b).sum())
            .collect()
    }

    /// `[self, rhs] = self*rhs - rhs*self`.
    pub fn commutator(&self, rhs: &Matrix) -> Matrix {
        &self.matmul(rhs) - &rhs.matmul(self)
    }

    pub fn pow(&self, k: usize) -> Matrix {
        let mut out = Matrix::identity(self.n);
        for _ in 0..k {
            out = out.matmul(self);
        }
        out
    }

    /// Powers `self^0, self^1, ..., self^(count-1)`.
    pub fn powers(&self, count: usize) -> Vec<Matrix> {
        let mut out = Vec::with_capacity(count);
        let mut p = Matrix::identity(self.n);
        for _ in 0..count {
            let next = p.matmul(self);
            out.push(p);
            p = next;
        }
        out
    }

    /// Upper-left `m x m` block.
    pub fn cutoff(&self, m: usize) -> Result<Matrix> {
        if m == 0 || m > self.n {
            return Err(GzError::IndexOutOfRange {
                what: "cutoff level",
                index: m,
                max: self.n,
            });
        }
        Ok(Matrix::from_fn(m, |i, j| self[(i, j)]))
    }

    /// Places `self` in the upper-left block of an `n x n` zero matrix.
    pub fn embed(&self, n: usize) -> Result<Matrix> {
        if self.n > n {
            return Err(GzError::DimensionMismatch {
                expected: n,
                found: self.n,
            });
        }
        let mut out = Matrix::zeros(n);
        for i in 0..self.n {
            for j in 0..self.n {
                out[(i, j)] = self[(i, j)];
            }
        }
        Ok(out)
    }

    /// Block-diagonal `diag(self, I)` of size `n`; the image of a group
    /// element of `Gl(m)` in `Gl(n)`.
    pub fn embed_with_identity(&self, n: usize) -> Result<Matrix> {
        let mut out = self.embed(n)?;
        for i in self.n..n {
            out[(i, i)] = C64::new(1.0, 0.0);
        }
        Ok(out)
    }

    /// Zeroes the diagonal and everything below it.
    pub fn strict_upper(&self) -> Matrix {
        Matrix::from_fn(
            self.n,
            |i, j| if j > i { self[(i, j)] } else { C64::zero() },
        )
    }

    /// Column `m+1` above the diagonal: `(x_{1,m+1}, ..., x_{m,m+1})`.
    pub fn component_in_y(&self, m: usize) -> Result<Vec<C64>> {
        if m == 0 || m >= self.n {
            return Err(GzError::IndexOutOfRange {
                what: "Y level",
                index: m,
                max: self.n.saturating_sub(1),
            });
        }
        Ok((0..m).map(|i| self[(i, m)]).collect())
    }

    /// Replaces the upper-left block with `block`.
    pub fn set_block(&mut self, block: &Matrix) {
        assert!(block.n <= self.n, "set_block: block too large");
        for i in 0..block.n {
            for j in 0..block.n {
                self[(i, j)] = block[(i, j)];
            }
        }
    }

    /// Similarity by `diag(g, I)` using only block operations:
    /// rows `0..m` are multiplied by `g`, columns `0..m` by `g_inv`.
    pub fn conjugate_by_block(&self, g: &Matrix, g_inv: &Matrix) -> Matrix {
        let m = g.n;
        let n = self.n;
        assert!(m <= n && g_inv.n == m, "conjugate_by_block: bad block");
        let mut left = self.clone();
        for j in 0..n {
            for i in 0..m {
                let mut acc = C64::zero();
                for k in 0..m {
                    acc += g[(i, k)] * self[(k, j)];
                }
                left[(i, j)] = acc;
            }
        }
        let mut out = left.clone();
        for i in 0..n {
            for j in 0..m {
                let mut acc = C64::zero();
                for k in 0..m {
                    acc += left[(i, k)] * g_inv[(k, j)];
                }
                out[(i, j)] = acc;
            }
        }
        out
    }

    pub fn is_symmetric(&self, tol: f64) -> bool {
        (0..self.n).all(|i| (0..i).all(|j| (self[(i, j)] - self[(j, i)]).norm() <= tol))
    }
}

/// The trace form `B(x, y) = tr(xy)`.
pub fn trace_form(x: &Matrix, y: &Matrix) -> Result<C64> {
    if x.n != y.n {
        return Err(GzError::DimensionMismatch {
            expected: x.n,
            found: y.n,
        });
    }
    let n = x.n;
    let mut acc = C64::zero();
    for i in 0..n {
        for k in 0..n {
            acc += x[(i, k)] * y[(k, i)];
        }
    }
    Ok(acc)
}

impl Index<(usize, usize)> for Matrix {
    type Output = C64;
    #[inline]
    fn index(&self, (i, j): (usize, usize)) -> &C64 {
        &self.data[i * self.n + j]
    }
}

impl IndexMut<(usize, usize)> for Matrix {
    #[inline]
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut C64 {
        &mut self.data[i * self.n + j]
    }
}

impl Add for &Matrix {
    type Output = Matrix;
    fn add(self, rhs: &Matrix) -> Matrix {
        assert_eq!(self.n, rhs.n, "add: dimension mismatch");
        Matrix {
            n: self.n,
            data: self
                .data
                .iter()
                .zip(&rhs.data)
                .map(|(a, b)| a + b)
                .collect(),
        }
    }
}

impl Sub for &Matrix {
    type Output = Matrix;
    fn sub(self, rhs: &Matrix) -> Matrix {
        assert_eq!(self.n, rhs.n, "sub: dimension mismatch");
        Matrix {
            n: self.n,
            data: self
                .data
                .iter()
                .zip(&rhs.data)
                .map(|(a, b)| a - b)
                .collect(),
        }
    }
}

impl Mul for &Matrix {
    type Output = Matrix;
    fn mul(self, rhs: &Matrix) -> Matrix {
        self.matmul(rhs)
    }
}

impl Neg for &Matrix {
    type Output = Matrix;
    fn neg(self) -> Matrix {
        self.scale(C64::new(-1.0, 0.0))
    }
}

impl fmt::Debug for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "Matrix({}x{}) [", self.n, self.n)?;
        for i in 0..self.n {
            write!(f, "  ")?;
            for j in 0..self.n {
                let z = self[(i, j)];
                write!(f, "{:>10.4}{:+.4}i ", z.re, z.im)?;
            }
            writeln!(f)?;
        }
        write!(f, "]")
    }
}
