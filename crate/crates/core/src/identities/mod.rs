//! Exact integral evaluations: integrands, closed-form right-hand sides,
//! verification reports and admissible-parameter samplers.

use num_complex::Complex64;

use crate::quadrature::QuadResult;

mod elliptic;
mod ellipticity;
mod hyperbolic;
mod modified;
pub mod params;
pub mod rho;
pub mod sample;
mod verify;

pub use elliptic::*;
pub use ellipticity::*;
pub use hyperbolic::*;
pub use modified::*;
pub use params::*;
pub use rho::*;
pub use verify::*;

/// Both sides of an identity together with the quadrature record of the
/// integral side.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Sides {
    pub lhs: Complex64,
    pub rhs: Complex64,
    pub quad: QuadResult,
}
