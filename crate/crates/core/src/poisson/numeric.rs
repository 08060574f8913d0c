use alloc::boxed::Box;

use num_traits::Zero;

use super::sympoly::SymPoly;
use crate::coords::trace_invariant;
use crate::error::{GzError, Result};
use crate::flows::GeneratorPoly;
use crate::linalg::Matrix;
use crate::C64;

/// A scalar function on `M(n)` together with its gradient, the matrix
/// `∇f(x)` with `tr(∇f(x) v) = d/ds f(x + s v)` at `s = 0`.
pub trait Observable {
    fn value(&self, x: &Matrix) -> Result<C64>;
    fn gradient(&self, x: &Matrix) -> Result<Matrix>;
}

/// The entry function `a_ij`, 1-based.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Entry {
    pub i: usize,
    pub j: usize,
}

impl Entry {
    fn check(&self, x: &Matrix) -> Result<()> {
        for idx in [self.i, self.j] {
            if idx == 0 || idx > x.n() {
                return Err(GzError::IndexOutOfRange {
                    what: "entry",
                    index: idx,
                    max: x.n(),
                });
            }
        }
        Ok(())
    }
}

impl Observable for Entry {
    fn value(&self, x: &Matrix) -> Result<C64> {
        self.check(x)?;
        Ok(x[(self.i - 1, self.j - 1)])
    }

    fn gradient(&self, x: &Matrix) -> Result<Matrix> {
        self.check(x)?;
        Ok(Matrix::unit(x.n(), self.j - 1, self.i - 1))
    }
}

/// The trace generator `f_(k,m) = tr((x_m)^{m+1-k}) / (m+1-k)`, whose
/// gradient is `(x_m)^{m-k}` embedded in `M(n)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct TraceGenerator {
    pub k: usize,
    pub m: usize,
}

impl Observable for TraceGenerator {
    fn value(&self, x: &Matrix) -> Result<C64> {
        trace_invariant(x, self.k, self.m)
    }

    fn gradient(&self, x: &Matrix) -> Result<Matrix> {
        trace_invariant(x, self.k, self.m)?;
        x.cutoff(self.m)?.pow(self.m - self.k).embed(x.n())
    }
}

impl Observable for SymPoly {
    fn value(&self, x: &Matrix) -> Result<C64> {
        self.eval(x)
    }

    fn gradient(&self, x: &Matrix) -> Result<Matrix> {
        let n = self.n();
        if x.n() != n {
            return Err(GzError::DimensionMismatch {
                expected: n,
                found: x.n(),
            });
        }
        let mut g = Matrix::zeros(n);
        for i in 0..n {
            for j in 0..n {
                g[(j, i)] = self.partial(i + 1, j + 1).eval(x)?;
            }
        }
        Ok(g)
    }
}

impl Observable for GeneratorPoly {
    fn value(&self, x: &Matrix) -> Result<C64> {
        Ok(self.eval(&self.invariant_values(x)?))
    }

    fn gradient(&self, x: &Matrix) -> Result<Matrix> {
        let values = self.invariant_values(x)?;
        let mut g = Matrix::zeros(x.n());
        for &(k, m) in values.keys() {
            let h = self.partial((k, m), &values);
            if !h.is_zero() {
                g = &g + &TraceGenerator { k, m }.gradient(x)?.scale(h);
            }
        }
        Ok(g)
    }
}

/// An arbitrary function with a central-difference gradient.
pub struct FiniteDifference {
    f: Box<dyn Fn(&Matrix) -> C64>,
    pub h: f64,
}

impl FiniteDifference {
    pub fn new(f: impl Fn(&Matrix) -> C64 + 'static, h: f64) -> Self {
        Self { f: Box::new(f), h }
    }
}

impl Observable for FiniteDifference {
    fn value(&self, x: &Matrix) -> Result<C64> {
        Ok((self.f)(x))
    }

    fn gradient(&self, x: &Matrix) -> Result<Matrix> {
        let n = x.n();
        let mut g = Matrix::zeros(n);
        for a in 0..n {
            for b in 0..n {
                let mut fwd = x.clone();
                fwd[(a, b)] += C64::new(self.h, 0.0);
                let mut bwd = x.clone();
                bwd[(a, b)] -= C64::new(self.h, 0.0);
                g[(b, a)] = ((self.f)(&fwd) - (self.f)(&bwd)) / (2.0 * self.h);
            }
        }
        Ok(g)
    }
}

/// Lie-Poisson bracket `{f, g}(x) = tr(x [∇g(x), ∇f(x)])`, normalized so
/// that `{a_12, a_21} = a_11 - a_22`.
pub fn num_bracket(f: &dyn Observable, g: &dyn Observable, x: &Matrix) -> Result<C64> {
    let gf = f.gradient(x)?;
    let gg = g.gradient(x)?;
    Ok(x.matmul(&gg.commutator(&gf)).trace())
}

/// Largest deviation between central differences of `f_(k,m)` along the
/// matrix units and the exact directional derivatives `tr((x_m)^{m-k} v)`.
pub fn gradient_check(key: (usize, usize), x: &Matrix, h: f64) -> Result<f64> {
    if !(1e-6..=1e-3).contains(&h) {
        return Err(GzError::InvalidTolerance);
    }
    let gen = TraceGenerator { k: key.0, m: key.1 };
    let grad = gen.gradient(x)?;
    let n = x.n();
    let mut worst: f64 = 0.0;
    for a in 0..n {
        for b in 0..n {
            let mut fwd = x.clone();
            fwd[(a, b)] += C64::new(h, 0.0);
            let mut bwd = x.clone();
            bwd[(a, b)] -= C64::new(h, 0.0);
            let fd = (gen.value(&fwd)? - gen.value(&bwd)?) / (2.0 * h);
            worst = worst.max((fd - grad[(b, a)]).norm());
        }
    }
    Ok(worst)
}
