use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// An argument outside the domain of the operation.
    #[error("{what} out of domain: {value:e}")]
    Domain { what: &'static str, value: f64 },

    /// The zero Matsubara frequency has no finite permittivity; use the
    /// analytic zero-frequency reflection coefficients instead.
    #[error("zero Matsubara frequency requires the analytic zero-frequency branch")]
    ZeroFrequency,

    /// Only the evanescent region (k_perp > omega/c) is evaluated on the real axis.
    #[error("real-axis reflection coefficients are only evaluated for evanescent waves (w = {w:e})")]
    PropagatingRegion { w: f64 },

    #[error("invalid material `{name}`: {reason}")]
    InvalidMaterial { name: String, reason: String },

    #[error("invalid numerics configuration: {0}")]
    InvalidNumerics(String),

    #[error(
        "Matsubara sum not converged after {terms} terms: partial sum {partial_sum:e}, \
         last relative term {achieved:e}"
    )]
    MatsubaraNotConverged {
        terms: usize,
        partial_sum: f64,
        achieved: f64,
    },

    #[error(
        "quadrature did not converge within {panels} panels: estimate {estimate:e}, \
         error bound {error_bound:e}"
    )]
    QuadratureNotConverged {
        panels: usize,
        estimate: f64,
        error_bound: f64,
    },
}

impl Error {
    pub(crate) fn domain(what: &'static str, value: f64) -> Self {
        Error::Domain { what, value }
    }

    /// True for failures of the numerical engines, as opposed to bad input.
    pub fn is_numerical(&self) -> bool {
        matches!(
            self,
            Error::MatsubaraNotConverged { .. } | Error::QuadratureNotConverged { .. }
        )
    }
}
