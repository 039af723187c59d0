//! Numerical toolkit for the elliptic gamma function family and the exact
//! beta-integral evaluations built from it.

// `!(x > 0.0)` is used on purpose so that NaN inputs are rejected too
#![allow(clippy::neg_cmp_op_on_partial_ord)]
// quadrature nodes are kept at the precision they are published with
#![allow(clippy::excessive_precision)]

pub mod cplx;
pub mod error;
pub mod gammas;
pub mod qseries;
pub mod quadrature;
pub mod identities;
pub mod suite;
pub mod cli;

pub use error::{Error, Result};
pub use num_complex::Complex64;
