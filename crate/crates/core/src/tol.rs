use crate::error::{GzError, Result};

/// Numerical thresholds shared by every classifier and comparison.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ToleranceConfig {
    /// Relative singular-value cutoff for numerical rank.
    pub rank_tol: f64,
    /// Entrywise comparison tolerance.
    pub eq_tol: f64,
    /// Minimum eigenvalue separation for membership in the disjoint locus.
    pub disjoint_tol: f64,
}

impl Default for ToleranceConfig {
    fn default() -> Self {
        Self {
            rank_tol: 1e-9,
            eq_tol: 1e-8,
            disjoint_tol: 1e-7,
        }
    }
}

impl ToleranceConfig {
    pub fn new(rank_tol: f64, eq_tol: f64, disjoint_tol: f64) -> Result<Self> {
        let cfg = Self {
            rank_tol,
            eq_tol,
            disjoint_tol,
        };
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn validate(&self) -> Result<()> {
        let ok = |t: f64| t.is_finite() && t > 0.0;
        if ok(self.rank_tol) && ok(self.eq_tol) && ok(self.disjoint_tol) {
            Ok(())
        } else {
            Err(GzError::InvalidTolerance)
        }
    }

    pub fn with_eq_tol(mut self, eq_tol: f64) -> Self {
        self.eq_tol = eq_tol;
        self
    }
}
