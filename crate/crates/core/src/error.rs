use alloc::string::String;

/// Errors raised by the Gelfand-Zeitlin toolkit.
#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum GzError {
    #[error("{what} index {index} out of range 1..={max}")]
    IndexOutOfRange {
        what: &'static str,
        index: usize,
        max: usize,
    },
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("malformed input: {0}")]
    Malformed(String),
    #[error("non-finite entry encountered")]
    NonFinite,
    #[error("{what} did not converge after {iterations} iterations")]
    NoConvergence {
        what: &'static str,
        iterations: usize,
    },
    #[error("matrix is numerically singular")]
    Singular,
    #[error("overflow in {0}")]
    Overflow(&'static str),
    #[error("invalid tolerance: all tolerances must be finite and strictly positive")]
    InvalidTolerance,
    #[error("coordinates are not eigenvalue disjoint (level {level})")]
    NotDisjoint { level: usize },
    #[error("tower is not eigenvalue interlacing (level {level})")]
    NotInterlacing { level: usize },
    #[error("level {level} column is not cyclic: eigen-coordinate {index} vanishes")]
    NotCyclic { level: usize, index: usize },
    #[error("subdiagonal entry {index} is zero")]
    ZeroSubdiagonal { index: usize },
    #[error("matrix is not strongly regular")]
    NotStronglyRegular,
    #[error("complex-orthogonal normalization failed at level {level}: v^T v = {magnitude:e}")]
    IsotropicEigenvector { level: usize, magnitude: f64 },
    #[error("measure support has {found} nodes, {needed} required")]
    InsufficientSupport { needed: usize, found: usize },
    #[error("invalid measure: {0}")]
    InvalidMeasure(&'static str),
    #[error("symbolic engine limited to n <= {max}, got {n}")]
    SymbolicLimit { n: usize, max: usize },
    #[error("parse error at {pos}: {msg}")]
    Parse { pos: usize, msg: String },
    #[error("enumeration limited to n <= {max}, got {n}")]
    EnumerationLimit { n: usize, max: usize },
    #[error("{what} check failed: deviation {deviation:e}")]
    VerificationFailed { what: &'static str, deviation: f64 },
}

/// Coarse classification used by front ends to pick exit codes.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ErrorClass {
    /// The input itself is malformed or inconsistent.
    Input,
    /// The input is well formed but outside the mathematical domain.
    Domain,
    /// A numerical routine failed or hit a degenerate configuration.
    Numerical,
}

impl GzError {
    pub fn class(&self) -> ErrorClass {
        use GzError::*;
        match self {
            IndexOutOfRange { .. }
            | DimensionMismatch { .. }
            | Malformed(_)
            | NonFinite
            | InvalidTolerance
            | InvalidMeasure(_)
            | Parse { .. } => ErrorClass::Input,
            NotDisjoint { .. }
            | NotInterlacing { .. }
            | NotCyclic { .. }
            | ZeroSubdiagonal { .. }
            | NotStronglyRegular
            | InsufficientSupport { .. }
            | SymbolicLimit { .. }
            | EnumerationLimit { .. } => ErrorClass::Domain,
            NoConvergence { .. }
            | Singular
            | Overflow(_)
            | IsotropicEigenvector { .. }
            | VerificationFailed { .. } => ErrorClass::Numerical,
        }
    }

    /// Stable machine-readable code.
    pub fn code(&self) -> &'static str {
        use GzError::*;
        match self {
            IndexOutOfRange { .. } => "index_out_of_range",
            DimensionMismatch { .. } => "dimension_mismatch",
            Malformed(_) => "malformed",
            NonFinite => "non_finite",
            NoConvergence { .. } => "no_convergence",
            Singular => "singular",
            Overflow(_) => "overflow",
            InvalidTolerance => "invalid_tolerance",
            NotDisjoint { .. } => "not_disjoint",
            NotInterlacing { .. } => "not_interlacing",
            NotCyclic { .. } => "not_cyclic",
            ZeroSubdiagonal { .. } => "zero_subdiagonal",
            NotStronglyRegular => "not_strongly_regular",
            IsotropicEigenvector { .. } => "isotropic_eigenvector",
            InsufficientSupport { .. } => "insufficient_support",
            InvalidMeasure(_) => "invalid_measure",
            SymbolicLimit { .. } => "symbolic_limit",
            Parse { .. } => "parse",
            EnumerationLimit { .. } => "enumeration_limit",
            VerificationFailed { .. } => "verification_failed",
        }
    }
}

pub type Result<T> = core::result::Result<T, GzError>;
