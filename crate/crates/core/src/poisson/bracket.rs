use alloc::vec::Vec;

use super::sympoly::SymPoly;
use crate::error::{GzError, Result};
use crate::tri;

/// Largest matrix size handled by the exact engine.
pub const MAX_SYMBOLIC_N: usize = 4;

/// Exact Lie-Poisson bracket, determined on the entry variables by
/// `{a_ij, a_st} = δ_js a_it - δ_ti a_sj` and extended as a biderivation.
pub fn sym_bracket(f: &SymPoly, g: &SymPoly) -> SymPoly {
    let n = f.n();
    assert_eq!(n, g.n(), "polynomials over different matrix sizes");
    let df: Vec<Vec<SymPoly>> = (1..=n)
        .map(|i| (1..=n).map(|j| f.partial(i, j)).collect())
        .collect();
    let dg: Vec<Vec<SymPoly>> = (1..=n)
        .map(|i| (1..=n).map(|j| g.partial(i, j)).collect())
        .collect();
    let mut out = SymPoly::zero(n);
    for i in 0..n {
        for j in 0..n {
            if df[i][j].is_zero() {
                continue;
            }
            for t in 0..n {
                // j == s: + ∂f/∂a_ij ∂g/∂a_jt a_it
                if !dg[j][t].is_zero() {
                    let a = SymPoly::var(n, i + 1, t + 1).expect("index in range");
                    out = out.add(&df[i][j].mul(&dg[j][t]).mul(&a));
                }
            }
            for s in 0..n {
                // t == i: - ∂f/∂a_ij ∂g/∂a_si a_sj
                if !dg[s][i].is_zero() {
                    let a = SymPoly::var(n, s + 1, j + 1).expect("index in range");
                    out = out.sub(&df[i][j].mul(&dg[s][i]).mul(&a));
                }
            }
        }
    }
    out
}

fn permutations(k: usize) -> Vec<(Vec<usize>, bool)> {
    if k == 0 {
        return alloc::vec![(Vec::new(), true)];
    }
    let mut out = Vec::new();
    for (p, even) in permutations(k - 1) {
        // insert k-1 at position pos; it passes over k-1-pos later entries
        for pos in 0..k {
            let mut q = p.clone();
            q.insert(pos, k - 1);
            let flips = k - 1 - pos;
            out.push((q, even == (flips.is_multiple_of(2))));
        }
    }
    out
}

fn subsets(m: usize, size: usize) -> Vec<Vec<usize>> {
    if size == 0 {
        return alloc::vec![Vec::new()];
    }
    if m < size {
        return Vec::new();
    }
    let mut out = subsets(m - 1, size);
    for mut s in subsets(m - 1, size - 1) {
        s.push(m - 1);
        out.push(s);
    }
    out
}

/// `f_(k,m)` as the sum of the principal minors of size `m-k+1` of `x_m`.
pub fn gz_generator_symbolic(n: usize, k: usize, m: usize) -> Result<SymPoly> {
    if n > MAX_SYMBOLIC_N {
        return Err(GzError::SymbolicLimit {
            n,
            max: MAX_SYMBOLIC_N,
        });
    }
    if m == 0 || m > n || k == 0 || k > m {
        return Err(GzError::IndexOutOfRange {
            what: "generator",
            index: if m == 0 || m > n { m } else { k },
            max: if m == 0 || m > n { n } else { m },
        });
    }
    let size = m - k + 1;
    let perms = permutations(size);
    let mut out = SymPoly::zero(n);
    for rows in subsets(m, size) {
        for (perm, even) in &perms {
            let mut term = SymPoly::one(n);
            for (a, &b) in perm.iter().enumerate() {
                term = term.mul(&SymPoly::var(n, rows[a] + 1, rows[b] + 1)?);
            }
            out = if *even {
                out.add(&term)
            } else {
                out.sub(&term)
            };
        }
    }
    Ok(out)
}

/// All `d(n)` generators, at flat position `d(m-1) + k - 1`.
pub fn gz_generators_symbolic(n: usize) -> Result<Vec<SymPoly>> {
    if n > MAX_SYMBOLIC_N {
        return Err(GzError::SymbolicLimit {
            n,
            max: MAX_SYMBOLIC_N,
        });
    }
    let mut out = Vec::with_capacity(tri(n));
    for m in 1..=n {
        for k in 1..=m {
            out.push(gz_generator_symbolic(n, k, m)?);
        }
    }
    Ok(out)
}

/// Outcome of checking every pair of distinct generators.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CommutativityReport {
    pub n: usize,
    pub pairs: usize,
    /// Pairs `((k,m), (k',m'))` with a nonzero bracket.
    pub nonzero: Vec<((usize, usize), (usize, usize))>,
}

impl CommutativityReport {
    pub fn all_zero(&self) -> bool {
        self.nonzero.is_empty()
    }
}

pub fn gz_commutativity_report(n: usize) -> Result<CommutativityReport> {
    let gens = gz_generators_symbolic(n)?;
    let keys: Vec<(usize, usize)> = (1..=n).flat_map(|m| (1..=m).map(move |k| (k, m))).collect();
    let mut pairs = 0;
    let mut nonzero = Vec::new();
    for a in 0..gens.len() {
        for b in a + 1..gens.len() {
            pairs += 1;
            if !sym_bracket(&gens[a], &gens[b]).is_zero() {
                nonzero.push((keys[a], keys[b]));
            }
        }
    }
    Ok(CommutativityReport { n, pairs, nonzero })
}

/// Whether all generators Poisson-commute exactly.
pub fn verify_gz_commutativity(n: usize) -> Result<bool> {
    Ok(gz_commutativity_report(n)?.all_zero())
}
