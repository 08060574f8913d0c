//! Gelfand-Zeitlin Hamiltonian vector fields, their integrated flows, and
//! the abelian group they generate.
//!
//! The field of the trace generator `f_(k,m)` at `x` is the commutator
//! `[(x_m)^{m-k}, x]` (cutoff power embedded in `M(n)`), and its flow is
//! conjugation by `exp(t (x_m)^{m-k})`. Conjugating by an element of the
//! level-`m` centralizer leaves `x_1, …, x_m` fixed, which is why group words
//! are applied from the top level down.

use alloc::collections::BTreeMap;
use alloc::vec;
use alloc::vec::Vec;

use num_traits::Zero;

use crate::coords::trace_invariant;
use crate::error::{GzError, Result};
use crate::linalg::{inverse, mat_exp, Matrix};
use crate::regularity::is_strongly_regular;
use crate::tol::ToleranceConfig;
use crate::C64;

/// Index `(k, m)` of a non-trivial flow, `1 <= k <= m <= n-1`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct FlowKey {
    pub k: usize,
    pub m: usize,
}

impl FlowKey {
    pub fn new(k: usize, m: usize) -> Self {
        Self { k, m }
    }

    pub fn validate(&self, n: usize) -> Result<()> {
        if self.m == 0 || self.m >= n {
            return Err(GzError::IndexOutOfRange {
                what: "flow level",
                index: self.m,
                max: n.saturating_sub(1),
            });
        }
        if self.k == 0 || self.k > self.m {
            return Err(GzError::IndexOutOfRange {
                what: "flow index",
                index: self.k,
                max: self.m,
            });
        }
        Ok(())
    }

    /// All keys for `M(n)`, level-major.
    pub fn all(n: usize) -> Vec<FlowKey> {
        (1..n)
            .flat_map(|m| (1..=m).map(move |k| FlowKey { k, m }))
            .collect()
    }
}

/// Coordinates of an element of the group `A ≅ C^{d(n-1)}`: for each level
/// `m = 1..n-1` the coefficients `t_k` of `Σ_k t_k (x_m)^{m-k}`.
#[derive(Debug, Clone, PartialEq)]
pub struct GroupWord {
    levels: Vec<Vec<C64>>,
}

impl GroupWord {
    pub fn new(levels: Vec<Vec<C64>>) -> Result<Self> {
        for (idx, l) in levels.iter().enumerate() {
            if l.len() != idx + 1 {
                return Err(GzError::DimensionMismatch {
                    expected: idx + 1,
                    found: l.len(),
                });
            }
        }
        Ok(Self { levels })
    }

    /// The identity element for `M(n)`.
    pub fn zeros(n: usize) -> Self {
        Self {
            levels: (1..n).map(|m| vec![C64::zero(); m]).collect(),
        }
    }

    pub fn single(n: usize, key: FlowKey, t: C64) -> Result<Self> {
        key.validate(n)?;
        let mut w = Self::zeros(n);
        w.levels[key.m - 1][key.k - 1] = t;
        Ok(w)
    }

    /// Ambient matrix size this word acts on.
    pub fn n(&self) -> usize {
        self.levels.len() + 1
    }

    pub fn levels(&self) -> &[Vec<C64>] {
        &self.levels
    }

    pub fn get(&self, key: FlowKey) -> C64 {
        self.levels[key.m - 1][key.k - 1]
    }

    pub fn set(&mut self, key: FlowKey, t: C64) {
        self.levels[key.m - 1][key.k - 1] = t;
    }

    pub fn add(&self, other: &GroupWord) -> GroupWord {
        assert_eq!(self.n(), other.n(), "word size mismatch");
        GroupWord {
            levels: self
                .levels
                .iter()
                .zip(&other.levels)
                .map(|(a, b)| a.iter().zip(b).map(|(x, y)| x + y).collect())
                .collect(),
        }
    }

    pub fn scale(&self, s: C64) -> GroupWord {
        GroupWord {
            levels: self
                .levels
                .iter()
                .map(|l| l.iter().map(|v| v * s).collect())
                .collect(),
        }
    }

    pub fn neg(&self) -> GroupWord {
        self.scale(C64::new(-1.0, 0.0))
    }

    pub fn max_diff(&self, other: &GroupWord) -> f64 {
        if self.n() != other.n() {
            return f64::INFINITY;
        }
        self.levels
            .iter()
            .flatten()
            .zip(other.levels.iter().flatten())
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max)
    }

    fn check(&self, n: usize) -> Result<()> {
        if self.n() != n.max(1) {
            return Err(GzError::DimensionMismatch {
                expected: n,
                found: self.n(),
            });
        }
        Ok(())
    }
}

/// `Σ_k coeffs[k-1] (x_m)^{m-k}` as an `m x m` matrix.
pub fn centralizer_element(x_m: &Matrix, coeffs: &[C64]) -> Matrix {
    let m = x_m.n();
    assert_eq!(coeffs.len(), m, "one coefficient per power");
    let powers = x_m.powers(m);
    let mut z = Matrix::zeros(m);
    for (idx, &t) in coeffs.iter().enumerate() {
        if t.is_zero() {
            continue;
        }
        let k = idx + 1;
        z = &z + &powers[m - k].scale(t);
    }
    z
}

/// Exponential of a centralizer element and its inverse.
fn level_group_element(x_m: &Matrix, coeffs: &[C64]) -> Result<(Matrix, Matrix)> {
    let g = mat_exp(&centralizer_element(x_m, coeffs))?;
    let g_inv = inverse(&g).map_err(|_| GzError::Overflow("group element inverse"))?;
    Ok((g, g_inv))
}

/// The Hamiltonian field of `f_(k,m)` at `x`.
pub fn vector_field(x: &Matrix, key: FlowKey) -> Result<Matrix> {
    key.validate(x.n())?;
    let z = x.cutoff(key.m)?.pow(key.m - key.k).embed(x.n())?;
    Ok(z.commutator(x))
}

/// Time-`t` flow of `f_(k,m)` starting at `x`.
pub fn flow(x: &Matrix, key: FlowKey, t: C64) -> Result<Matrix> {
    act(x, &GroupWord::single(x.n(), key, t)?)
}

/// Action of a group word on `x`:
/// `Ad g(1) ∘ ⋯ ∘ Ad g(n-1) (x)` with `g(m) = exp(Σ_k t_k (x_m)^{m-k})`.
pub fn act(x: &Matrix, w: &GroupWord) -> Result<Matrix> {
    let n = x.n();
    w.check(n)?;
    let mut y = x.clone();
    for m in (1..n).rev() {
        let coeffs = &w.levels[m - 1];
        if coeffs.iter().all(|t| t.is_zero()) {
            continue;
        }
        // The level-m cutoff of y still equals x_m: higher-level factors
        // commute with their own cutoffs.
        let (g, g_inv) = level_group_element(&x.cutoff(m)?, coeffs)?;
        y = y.conjugate_by_block(&g, &g_inv);
        if !y.is_finite() {
            return Err(GzError::Overflow("group action"));
        }
    }
    Ok(y)
}

/// A polynomial in the trace generators `f_(k,m)`, `1 <= k <= m <= n`.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct GeneratorPoly {
    terms: Vec<(C64, BTreeMap<(usize, usize), u32>)>,
}

impl GeneratorPoly {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn constant(c: C64) -> Self {
        Self::new().with_term(c, &[])
    }

    /// The single generator `f_(k,m)`.
    pub fn generator(k: usize, m: usize) -> Self {
        Self::new().with_term(C64::new(1.0, 0.0), &[((k, m), 1)])
    }

    /// Adds `coef · Π f_(k,m)^e`.
    pub fn with_term(mut self, coef: C64, factors: &[((usize, usize), u32)]) -> Self {
        let mut mono = BTreeMap::new();
        for &(key, e) in factors {
            if e > 0 {
                *mono.entry(key).or_insert(0) += e;
            }
        }
        self.terms.push((coef, mono));
        self
    }

    fn variables(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.terms.iter().flat_map(|(_, mono)| mono.keys().copied())
    }

    pub fn eval(&self, values: &BTreeMap<(usize, usize), C64>) -> C64 {
        self.terms
            .iter()
            .map(|(c, mono)| {
                mono.iter()
                    .fold(*c, |acc, (key, &e)| acc * values[key].powu(e))
            })
            .sum()
    }

    /// `∂p/∂f_(k,m)` evaluated at `values`.
    pub fn partial(&self, key: (usize, usize), values: &BTreeMap<(usize, usize), C64>) -> C64 {
        let mut acc = C64::zero();
        for (c, mono) in &self.terms {
            let Some(&e) = mono.get(&key) else { continue };
            let mut term = *c * e as f64;
            for (other, &f) in mono {
                let pow = if *other == key { f - 1 } else { f };
                term *= values[other].powu(pow);
            }
            acc += term;
        }
        acc
    }

    /// Values `f_(k,m)(x)` for every variable appearing in the polynomial.
    pub fn invariant_values(&self, x: &Matrix) -> Result<BTreeMap<(usize, usize), C64>> {
        let mut values = BTreeMap::new();
        for (k, m) in self.variables() {
            if let alloc::collections::btree_map::Entry::Vacant(e) = values.entry((k, m)) {
                e.insert(trace_invariant(x, k, m)?);
            }
        }
        Ok(values)
    }

    /// The word `t · (∂p/∂f_(k,m))(x)` whose action is the time-`t` flow of
    /// the Hamiltonian `p`. Level-`n` variables are Casimirs and drop out.
    pub fn flow_word(&self, x: &Matrix, t: C64) -> Result<GroupWord> {
        let n = x.n();
        let values = self.invariant_values(x)?;
        let mut w = GroupWord::zeros(n);
        for key in FlowKey::all(n) {
            if values.contains_key(&(key.k, key.m)) {
                w.set(key, t * self.partial((key.k, key.m), &values));
            }
        }
        Ok(w)
    }
}

/// Flow of an arbitrary polynomial Hamiltonian in the trace generators.
///
/// The coefficients `∂p/∂f_(k,m)` are evaluated once at `x`; they are
/// constant along the flow because every `f_(k,m)` is.
pub fn flow_general(x: &Matrix, p: &GeneratorPoly, t: C64) -> Result<Matrix> {
    act(x, &p.flow_word(x, t)?)
}

/// Conjugation by `exp(Σ_m s_m I_m)`, the diagonal torus generated by the
/// level-`(m,m)` flows.
pub fn diag_action(x: &Matrix, s: &[C64]) -> Result<Matrix> {
    let n = x.n();
    if s.len() != n.saturating_sub(1) {
        return Err(GzError::DimensionMismatch {
            expected: n.saturating_sub(1),
            found: s.len(),
        });
    }
    // exponent for row i is s_i + s_{i+1} + ... (levels containing i)
    let mut expo = vec![C64::zero(); n];
    for i in (0..n.saturating_sub(1)).rev() {
        expo[i] = expo[i + 1] + s[i];
    }
    let d: Vec<C64> = expo.iter().map(|e| e.exp()).collect();
    let out = Matrix::from_fn(n, |i, j| d[i] * x[(i, j)] / d[j]);
    if out.is_finite() {
        Ok(out)
    } else {
        Err(GzError::Overflow("diagonal action"))
    }
}

/// `‖(a·x)^T - a^{-1}·x^T‖_∞`, the group elements on the right built from
/// the cutoffs of `x^T`.
pub fn transpose_equivariance_defect(x: &Matrix, w: &GroupWord) -> Result<f64> {
    let lhs = act(x, w)?.transpose();
    let rhs = act(&x.transpose(), &w.neg())?;
    Ok(lhs.max_abs_diff(&rhs))
}

pub fn transpose_equivariance_check(
    x: &Matrix,
    w: &GroupWord,
    tol: &ToleranceConfig,
) -> Result<bool> {
    Ok(transpose_equivariance_defect(x, w)? <= tol.eq_tol)
}

/// Sampling check of orbit injectivity at a strongly regular point: two
/// words give the same point exactly when they agree.
pub fn orbit_injectivity_check(
    x: &Matrix,
    w1: &GroupWord,
    w2: &GroupWord,
    tol: &ToleranceConfig,
) -> Result<bool> {
    if !is_strongly_regular(x, tol) {
        return Err(GzError::NotStronglyRegular);
    }
    let p1 = act(x, w1)?;
    let p2 = act(x, w2)?;
    let same_word = w1.max_diff(w2) <= tol.eq_tol;
    let same_point = p1.max_abs_diff(&p2) <= tol.eq_tol;
    Ok(same_word == same_point)
}
