use thiserror::Error;

/// Errors reported by the toolkit.
#[derive(Debug, Clone, Error, PartialEq)]
pub enum Error {
    #[error("matrix must be square, got {rows}x{cols}")]
    NonSquare { rows: usize, cols: usize },

    #[error("dimension mismatch: {context}")]
    DimMismatch { context: String },

    #[error("matrix contains a non-finite entry")]
    NonFinite,

    #[error("matrix is singular to working precision (pivot {pivot:.3e} below tolerance)")]
    SingularMatrix { pivot: f64 },

    #[error("argument out of domain: {context}")]
    DomainError { context: String },

    #[error("iteration did not converge: {context}")]
    NoConvergence { context: String },

    #[error("no similarity to a contraction exists: spectral radius estimate {rho:.6} >= 1")]
    Infeasible { rho: f64 },

    #[error("operator norm {norm:.6} exceeds 1; a contraction is required")]
    NormTooLarge { norm: f64 },

    #[error("numerical radius {radius:.6} exceeds 1")]
    RadiusTooLarge { radius: f64 },

    #[error("polynomial must vanish at 0, got |p(0)| = {value:.3e}")]
    NonvanishingAtZero { value: f64 },

    #[error("polynomial sup norm estimate {sup:.3e} is numerically zero")]
    DegenerateF { sup: f64 },

    #[error("matrix polynomial is not normalized: sampled sup {sup:.8} differs from 1")]
    UnnormalizedA { sup: f64 },

    #[error("point set is empty")]
    EmptySet,
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    pub fn domain(context: impl Into<String>) -> Self {
        Error::DomainError {
            context: context.into(),
        }
    }

    pub fn dim(context: impl Into<String>) -> Self {
        Error::DimMismatch {
            context: context.into(),
        }
    }

    /// Short machine-readable tag, stable across releases.
    pub fn kind(&self) -> &'static str {
        match self {
            Error::NonSquare { .. } => "non_square",
            Error::DimMismatch { .. } => "dim_mismatch",
            Error::NonFinite => "non_finite",
            Error::SingularMatrix { .. } => "singular_matrix",
            Error::DomainError { .. } => "domain_error",
            Error::NoConvergence { .. } => "no_convergence",
            Error::Infeasible { .. } => "infeasible",
            Error::NormTooLarge { .. } => "norm_too_large",
            Error::RadiusTooLarge { .. } => "radius_too_large",
            Error::NonvanishingAtZero { .. } => "nonvanishing_at_zero",
            Error::DegenerateF { .. } => "degenerate_f",
            Error::UnnormalizedA { .. } => "unnormalized_a",
            Error::EmptySet => "empty_set",
        }
    }
}
