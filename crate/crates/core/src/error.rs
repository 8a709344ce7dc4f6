use crate::symmetry::SymmetryGroup;
use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("non-finite value encountered: {0}")]
    NonFinite(String),

    #[error("singular matrix: pivot {pivot:e} below threshold {threshold:e}")]
    SingularMatrix { pivot: f64, threshold: f64 },

    #[error("no closed form for {group} with delta = {delta}; closed forms require delta <= 2")]
    ClosedFormUnavailable { group: SymmetryGroup, delta: f64 },

    #[error("{group} with delta = {delta} is outside the supported range (delta <= 2)")]
    UnsupportedRange { group: SymmetryGroup, delta: f64 },

    #[error("no root found: {0}")]
    NoRoot(String),

    #[error("zero denominator: {0}")]
    ZeroDenominator(String),

    #[error("w = {w} lies within the removable-singularity threshold of +-1/(4 pi)")]
    SingularAuxPoint { w: num_complex::Complex64 },
}

impl Error {
    /// Domain errors are requests outside what the library supports, as opposed
    /// to numerical failures inside a supported computation.
    pub fn is_domain_error(&self) -> bool {
        matches!(
            self,
            Error::ClosedFormUnavailable { .. }
                | Error::UnsupportedRange { .. }
                | Error::InvalidArgument(_)
        )
    }
}
