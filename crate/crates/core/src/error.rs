use thiserror::Error;

use crate::quadrature::QuadResult;

/// Failure modes shared by every evaluator in the crate.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// An argument violates a documented precondition.
    #[error("{0}")]
    Domain(String),
    /// The requested point lies within resolution of a pole.
    #[error("pole: {0}")]
    Pole(String),
    /// The requested point lies within resolution of a zero where a finite
    /// nonzero value was required.
    #[error("zero: {0}")]
    Zero(String),
    #[error("infinite product did not reach tolerance within {0} terms")]
    NonConvergence(usize),
    #[error("integrand is singular on the contour near {0}")]
    PoleOnContour(String),
    #[error("quadrature tolerance not met (estimate {:e}{:+e}i, error {:e})", .0.value.re, .0.value.im, .0.error_estimate)]
    ToleranceNotMet(QuadResult),
    #[error("line truncation impossible: {0}")]
    Truncation(String),
}

impl Error {
    /// Stable short name used in reports and CLI diagnostics.
    pub fn kind(&self) -> &'static str {
        match self {
            Error::Domain(_) => "domain",
            Error::Pole(_) => "pole",
            Error::Zero(_) => "zero",
            Error::NonConvergence(_) => "non_convergence",
            Error::PoleOnContour(_) => "pole_on_contour",
            Error::ToleranceNotMet(_) => "tolerance_not_met",
            Error::Truncation(_) => "truncation",
        }
    }

    /// True for errors caused by invalid input rather than numerical trouble.
    pub fn is_input_error(&self) -> bool {
        matches!(self, Error::Domain(_) | Error::Truncation(_))
    }
}

pub type Result<T> = std::result::Result<T, Error>;
