//! Gelfand-Zeitlin coordinates: the moment map, spectrum towers, fiber
//! membership and the disjointness / interlacing predicates.

use alloc::vec::Vec;

use crate::error::{GzError, Result};
use crate::linalg::{charpoly, eigenvalues_ordered, lex_sort, Matrix, MonicPoly};
use crate::tol::ToleranceConfig;
use crate::{tri, C64};

/// A point of `C^{d(n)}`. The coordinate `f_{k,m}` (`1 <= k <= m <= n`) is
/// stored at flat position `d(m-1) + k - 1`; it is the elementary symmetric
/// function of degree `m-k+1` in the eigenvalues of the level-`m` cutoff.
#[derive(Debug, Clone, PartialEq)]
pub struct GzCoord {
    n: usize,
    values: Vec<C64>,
}

#[inline]
fn flat_index(k: usize, m: usize) -> usize {
    tri(m - 1) + k - 1
}

#[inline]
fn sign(e: usize) -> f64 {
    if e.is_multiple_of(2) {
        1.0
    } else {
        -1.0
    }
}

impl GzCoord {
    pub fn new(n: usize, values: Vec<C64>) -> Result<Self> {
        if values.len() != tri(n) {
            return Err(GzError::DimensionMismatch {
                expected: tri(n),
                found: values.len(),
            });
        }
        if values
            .iter()
            .any(|z| !z.re.is_finite() || !z.im.is_finite())
        {
            return Err(GzError::NonFinite);
        }
        Ok(Self { n, values })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn values(&self) -> &[C64] {
        &self.values
    }

    /// `f_{k,m}`; panics if the pair is out of range.
    pub fn get(&self, k: usize, m: usize) -> C64 {
        assert!(
            1 <= k && k <= m && m <= self.n,
            "coordinate ({k},{m}) out of range"
        );
        self.values[flat_index(k, m)]
    }

    /// Level-`m` polynomial `λ^m + Σ_k (-1)^{m-k+1} f_{k,m} λ^{k-1}`.
    pub fn level_poly(&self, m: usize) -> MonicPoly {
        assert!(1 <= m && m <= self.n, "level {m} out of range");
        MonicPoly::new((1..=m).map(|k| self.get(k, m) * sign(m - k + 1)).collect())
    }

    /// Inverse of [`GzCoord::level_poly`] over all levels; `polys[m-1]` must
    /// have degree `m`.
    pub fn from_level_polys(polys: &[MonicPoly]) -> Result<Self> {
        let n = polys.len();
        let mut values = Vec::with_capacity(tri(n));
        for (idx, p) in polys.iter().enumerate() {
            let m = idx + 1;
            if p.degree() != m {
                return Err(GzError::DimensionMismatch {
                    expected: m,
                    found: p.degree(),
                });
            }
            for k in 1..=m {
                values.push(p.coeffs()[k - 1] * sign(m - k + 1));
            }
        }
        Self::new(n, values)
    }

    pub fn level_polys(&self) -> Vec<MonicPoly> {
        (1..=self.n).map(|m| self.level_poly(m)).collect()
    }

    /// `‖self - other‖_∞`; infinite when dimensions differ.
    pub fn max_diff(&self, other: &GzCoord) -> f64 {
        if self.n != other.n {
            return f64::INFINITY;
        }
        self.values
            .iter()
            .zip(&other.values)
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max)
    }
}

/// Lexicographically ordered eigenvalues of each level, `levels[m-1]`
/// holding the `m` values of level `m`.
#[derive(Debug, Clone, PartialEq)]
pub struct SpectrumTower {
    levels: Vec<Vec<C64>>,
}

impl SpectrumTower {
    /// Validates sizes and sorts each level with the default tie tolerance.
    pub fn new(levels: Vec<Vec<C64>>) -> Result<Self> {
        Self::with_tie_tol(levels, ToleranceConfig::default().eq_tol)
    }

    pub fn with_tie_tol(mut levels: Vec<Vec<C64>>, tie_tol: f64) -> Result<Self> {
        for (idx, level) in levels.iter_mut().enumerate() {
            if level.len() != idx + 1 {
                return Err(GzError::DimensionMismatch {
                    expected: idx + 1,
                    found: level.len(),
                });
            }
            if level.iter().any(|z| !z.re.is_finite() || !z.im.is_finite()) {
                return Err(GzError::NonFinite);
            }
            lex_sort(level, tie_tol);
        }
        Ok(Self { levels })
    }

    /// Real tower convenience constructor.
    pub fn from_real(levels: &[&[f64]]) -> Result<Self> {
        Self::new(
            levels
                .iter()
                .map(|l| l.iter().map(|&v| C64::new(v, 0.0)).collect())
                .collect(),
        )
    }

    pub fn n(&self) -> usize {
        self.levels.len()
    }

    pub fn levels(&self) -> &[Vec<C64>] {
        &self.levels
    }

    /// Level `m` (one-based).
    pub fn level(&self, m: usize) -> &[C64] {
        &self.levels[m - 1]
    }

    pub fn max_diff(&self, other: &SpectrumTower) -> f64 {
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

    /// First level `m` violating eigenvalue disjointness: a near-collision
    /// inside level `m` or between levels `m` and `m+1`.
    pub fn disjointness_violation(&self, tol: &ToleranceConfig) -> Option<usize> {
        let sep = tol.disjoint_tol;
        for (idx, level) in self.levels.iter().enumerate() {
            for i in 0..level.len() {
                for j in i + 1..level.len() {
                    if (level[i] - level[j]).norm() <= sep {
                        return Some(idx + 1);
                    }
                }
            }
            if let Some(next) = self.levels.get(idx + 1) {
                if level
                    .iter()
                    .any(|a| next.iter().any(|b| (a - b).norm() <= sep))
                {
                    return Some(idx + 1);
                }
            }
        }
        None
    }

    pub fn is_disjoint(&self, tol: &ToleranceConfig) -> bool {
        self.disjointness_violation(tol).is_none()
    }

    /// First level `m` at which the strict real interlacing chain between
    /// levels `m` and `m+1` fails, or `Some(m)` for a level carrying a
    /// non-real value.
    pub fn interlacing_violation(&self, tol: &ToleranceConfig) -> Option<usize> {
        for (idx, level) in self.levels.iter().enumerate() {
            if level.iter().any(|z| z.im.abs() > tol.eq_tol) {
                return Some(idx + 1);
            }
        }
        let gap = tol.disjoint_tol;
        for (idx, pair) in self.levels.windows(2).enumerate() {
            let (lo, hi) = (&pair[0], &pair[1]);
            for i in 0..lo.len() {
                if !(lo[i].re - hi[i].re > gap && hi[i + 1].re - lo[i].re > gap) {
                    return Some(idx + 1);
                }
            }
        }
        None
    }

    pub fn is_interlacing(&self, tol: &ToleranceConfig) -> bool {
        self.interlacing_violation(tol).is_none()
    }
}

/// The moment map `Φ_n`.
pub fn phi(x: &Matrix) -> GzCoord {
    let n = x.n();
    let polys: Vec<MonicPoly> = (1..=n)
        .map(|m| charpoly(&x.cutoff(m).expect("level in range")))
        .collect();
    GzCoord::from_level_polys(&polys).expect("charpoly degrees match levels")
}

pub fn tower_from_coord(c: &GzCoord, tol: &ToleranceConfig) -> Result<SpectrumTower> {
    let levels = (1..=c.n())
        .map(|m| eigenvalues_ordered(&c.level_poly(m), tol))
        .collect::<Result<Vec<_>>>()?;
    Ok(SpectrumTower { levels })
}

pub fn coord_from_tower(t: &SpectrumTower) -> GzCoord {
    let polys: Vec<MonicPoly> = t.levels.iter().map(|l| MonicPoly::from_roots(l)).collect();
    GzCoord::from_level_polys(&polys).expect("tower levels have matching sizes")
}

pub fn tower_from_matrix(x: &Matrix, tol: &ToleranceConfig) -> Result<SpectrumTower> {
    tower_from_coord(&phi(x), tol)
}

/// Trace generator `f_(k,m)(x) = tr((x_m)^{m+1-k}) / (m+1-k)`.
pub fn trace_invariant(x: &Matrix, k: usize, m: usize) -> Result<C64> {
    if m == 0 || m > x.n() {
        return Err(GzError::IndexOutOfRange {
            what: "level",
            index: m,
            max: x.n(),
        });
    }
    if k == 0 || k > m {
        return Err(GzError::IndexOutOfRange {
            what: "power index",
            index: k,
            max: m,
        });
    }
    let e = m + 1 - k;
    Ok(x.cutoff(m)?.pow(e).trace() / e as f64)
}

/// Whether `x` and `y` lie in the same fiber of `Φ_n`.
pub fn same_fiber(x: &Matrix, y: &Matrix, tol: &ToleranceConfig) -> bool {
    x.n() == y.n() && phi(x).max_diff(&phi(y)) <= tol.eq_tol
}

/// Membership of `c` in the eigenvalue-disjoint locus.
pub fn is_disjoint(c: &GzCoord, tol: &ToleranceConfig) -> Result<bool> {
    Ok(tower_from_coord(c, tol)?.is_disjoint(tol))
}

pub fn is_interlacing(c: &GzCoord, tol: &ToleranceConfig) -> Result<bool> {
    Ok(tower_from_coord(c, tol)?.is_interlacing(tol))
}
