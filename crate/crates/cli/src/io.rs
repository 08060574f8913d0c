//! JSON wire formats. Complex scalars are `[re, im]` pairs everywhere.

use std::path::Path;

use gz_core::flows::GroupWord;
use gz_core::orthopoly::{DiscreteMeasure, ThreeTermRecurrence};
use gz_core::{GzCoord, GzError, Matrix, MonicPoly, SpectrumTower, C64};
use serde::de::DeserializeOwned;
use serde::{Deserialize, Serialize};

use crate::error::{CliError, CliResult};

pub type Pair = [f64; 2];

fn pair(z: C64) -> Pair {
    [z.re, z.im]
}

fn complex(p: &Pair) -> C64 {
    C64::new(p[0], p[1])
}

fn pairs(zs: &[C64]) -> Vec<Pair> {
    zs.iter().copied().map(pair).collect()
}

fn complexes(ps: &[Pair]) -> CliResult<Vec<C64>> {
    let out: Vec<C64> = ps.iter().map(complex).collect();
    if out.iter().all(|z| z.re.is_finite() && z.im.is_finite()) {
        Ok(out)
    } else {
        Err(GzError::NonFinite.into())
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MatrixJson {
    pub n: usize,
    pub entries: Vec<Vec<Pair>>,
}

impl MatrixJson {
    pub fn from_matrix(x: &Matrix) -> Self {
        let n = x.n();
        Self {
            n,
            entries: (0..n).map(|i| pairs(x.row(i))).collect(),
        }
    }

    pub fn to_matrix(&self) -> CliResult<Matrix> {
        if self.entries.len() != self.n {
            return Err(GzError::DimensionMismatch {
                expected: self.n,
                found: self.entries.len(),
            }
            .into());
        }
        let rows = self
            .entries
            .iter()
            .map(|r| complexes(r))
            .collect::<CliResult<Vec<_>>>()?;
        Ok(Matrix::from_rows(&rows)?)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PolyJson {
    pub degree: usize,
    pub coeffs: Vec<Pair>,
}

impl PolyJson {
    pub fn from_poly(p: &MonicPoly) -> Self {
        Self {
            degree: p.degree(),
            coeffs: pairs(p.coeffs()),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CoordJson {
    pub n: usize,
    pub values: Vec<Pair>,
}

impl CoordJson {
    pub fn from_coord(c: &GzCoord) -> Self {
        Self {
            n: c.n(),
            values: pairs(c.values()),
        }
    }

    pub fn to_coord(&self) -> CliResult<GzCoord> {
        Ok(GzCoord::new(self.n, complexes(&self.values)?)?)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TowerJson {
    pub n: usize,
    pub levels: Vec<Vec<Pair>>,
}

impl TowerJson {
    pub fn from_tower(t: &SpectrumTower) -> Self {
        Self {
            n: t.n(),
            levels: t.levels().iter().map(|l| pairs(l)).collect(),
        }
    }

    pub fn to_tower(&self) -> CliResult<SpectrumTower> {
        if self.levels.len() != self.n {
            return Err(GzError::DimensionMismatch {
                expected: self.n,
                found: self.levels.len(),
            }
            .into());
        }
        let levels = self
            .levels
            .iter()
            .map(|l| complexes(l))
            .collect::<CliResult<Vec<_>>>()?;
        Ok(SpectrumTower::new(levels)?)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct WordJson {
    pub levels: Vec<Vec<Pair>>,
}

impl WordJson {
    pub fn from_word(w: &GroupWord) -> Self {
        Self {
            levels: w.levels().iter().map(|l| pairs(l)).collect(),
        }
    }

    pub fn to_word(&self) -> CliResult<GroupWord> {
        let levels = self
            .levels
            .iter()
            .map(|l| complexes(l))
            .collect::<CliResult<Vec<_>>>()?;
        Ok(GroupWord::new(levels)?)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MeasureJson {
    pub nodes: Vec<f64>,
    pub weights: Vec<f64>,
}

impl MeasureJson {
    pub fn from_measure(mu: &DiscreteMeasure) -> Self {
        Self {
            nodes: mu.nodes().to_vec(),
            weights: mu.weights().to_vec(),
        }
    }

    pub fn to_measure(&self) -> CliResult<DiscreteMeasure> {
        Ok(DiscreteMeasure::new(
            self.nodes.clone(),
            self.weights.clone(),
        )?)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RecurrenceJson {
    pub n: usize,
    pub diag: Vec<f64>,
    pub offdiag: Vec<f64>,
}

impl RecurrenceJson {
    pub fn from_recurrence(r: &ThreeTermRecurrence) -> Self {
        Self {
            n: r.n(),
            diag: r.diag.clone(),
            offdiag: r.offdiag.clone(),
        }
    }
}

/// A subdiagonal, given either as a bare list of pairs or as `{"values": [...]}`.
#[derive(Debug, Clone, PartialEq, Deserialize)]
#[serde(untagged)]
pub enum VectorJson {
    Bare(Vec<Pair>),
    Wrapped { values: Vec<Pair> },
}

impl VectorJson {
    pub fn to_vec(&self) -> CliResult<Vec<C64>> {
        match self {
            VectorJson::Bare(v) | VectorJson::Wrapped { values: v } => complexes(v),
        }
    }
}

/// Parses a complex scalar written as `"re,im"` or `"re"`.
pub fn parse_complex(s: &str) -> CliResult<C64> {
    let bad = || CliError::Usage(format!("expected a complex number \"re,im\", got {s:?}"));
    let mut parts = s.split(',').map(str::trim);
    let re: f64 = parts.next().ok_or_else(bad)?.parse().map_err(|_| bad())?;
    let im: f64 = match parts.next() {
        Some(p) => p.parse().map_err(|_| bad())?,
        None => 0.0,
    };
    if parts.next().is_some() || !re.is_finite() || !im.is_finite() {
        return Err(bad());
    }
    Ok(C64::new(re, im))
}

/// Parses a generator key written as `"k,m"`.
pub fn parse_key(s: &str) -> CliResult<(usize, usize)> {
    let bad = || CliError::Usage(format!("expected a key \"k,m\", got {s:?}"));
    let (k, m) = s.split_once(',').ok_or_else(bad)?;
    Ok((
        k.trim().parse().map_err(|_| bad())?,
        m.trim().parse().map_err(|_| bad())?,
    ))
}

pub fn read_json<T: DeserializeOwned>(path: &Path) -> CliResult<T> {
    let text = std::fs::read_to_string(path).map_err(|e| CliError::Io {
        path: path.display().to_string(),
        message: e.to_string(),
    })?;
    serde_json::from_str(&text).map_err(|e| CliError::Json(format!("{}: {e}", path.display())))
}

pub fn read_matrix(path: &Path) -> CliResult<Matrix> {
    read_json::<MatrixJson>(path)?.to_matrix()
}

pub fn read_coord(path: &Path) -> CliResult<GzCoord> {
    read_json::<CoordJson>(path)?.to_coord()
}
