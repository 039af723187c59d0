//! The ratio `R(u) = Δ(u+ω₁)/Δ(u)` of the additive-form integrand is an
//! elliptic function with periods `ω₂`, `ω₃`. `R` can be written with theta
//! functions or computed from either integrand (elliptic gamma or modified
//! elliptic gamma) directly.

use num_complex::Complex64;
use serde::Serialize;

use crate::cplx::e2pi;
use crate::error::Result;
use crate::gammas::{elliptic_gamma, elliptic_gamma_reflection_inverse, reciprocal_elliptic_gamma, QuasiPeriods};
use crate::qseries::{theta, Base, PrecisionPolicy};

use super::modified::unit_circle_integrand;
use super::params::{AdditiveParams, UnitCircleBetaParams};

/// How `R(u)` is computed.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum RatioBuilder {
    /// Closed theta-function expression.
    Theta,
    /// `Δ(u+ω₁)/Δ(u)` with `Δ` built from `Γ(·;q,p)`; needs `|q| < 1`.
    Gamma,
    /// `Δ(u+ω₁)/Δ(u)` with `Δ` the modified elliptic gamma integrand.
    ModifiedGamma,
}

/// `R(u)` from theta functions with `p = e^{2πiω₃/ω₂}`:
/// `e^{2πiω₁/ω₂} θ(e^{4πi(u+ω₁)/ω₂}) θ(e^{2πi(u+ω₁-𝒜)/ω₂}) / (θ(e^{4πiu/ω₂}) θ(e^{2πi(u+𝒜)/ω₂}))
/// × ∏ θ(e^{2πi(u+g_n)/ω₂}) / θ(e^{2πi(u+ω₁-g_n)/ω₂})`.
pub fn ratio_theta(u: Complex64, params: &AdditiveParams, policy: &PrecisionPolicy) -> Result<Complex64> {
    let w = &params.omegas;
    let (w1, w2) = (w.omega1(), w.omega2());
    let p = w.p_base();
    let a = params.a();
    let th = |x: Complex64| theta(e2pi(x / w2), p, policy);
    let mut v = e2pi(w1 / w2) * th(2.0 * (u + w1))? * th(u + w1 - a)? / (th(2.0 * u)? * th(u + a)?);
    for gn in &params.g {
        v *= th(u + gn)? / th(u + w1 - gn)?;
    }
    Ok(v)
}

/// Additive-form elliptic-gamma integrand
/// `∏Γ(e^{2πi(g_n±u)/ω₂}) / Γ(e^{±4πiu/ω₂}, e^{2πi(𝒜±u)/ω₂})`.
pub fn additive_gamma_integrand(u: Complex64, params: &AdditiveParams, policy: &PrecisionPolicy) -> Result<Complex64> {
    let w = &params.omegas;
    let (q, p): (Base, Base) = (w.q_base()?, w.p_base());
    let w2 = w.omega2();
    let e = |x: Complex64| e2pi(x / w2);
    let a = params.a();
    let mut v = elliptic_gamma_reflection_inverse(e(2.0 * u), q, p, policy)?
        * reciprocal_elliptic_gamma(e(a + u), q, p, policy)?
        * reciprocal_elliptic_gamma(e(a - u), q, p, policy)?;
    for gn in &params.g {
        v *= elliptic_gamma(e(gn + u), q, p, policy)? * elliptic_gamma(e(gn - u), q, p, policy)?;
    }
    Ok(v)
}

/// `R(u)` with the requested builder.
pub fn ratio(u: Complex64, params: &AdditiveParams, builder: RatioBuilder, policy: &PrecisionPolicy) -> Result<Complex64> {
    let w1 = params.omegas.omega1();
    match builder {
        RatioBuilder::Theta => ratio_theta(u, params, policy),
        RatioBuilder::Gamma => {
            Ok(additive_gamma_integrand(u + w1, params, policy)? / additive_gamma_integrand(u, params, policy)?)
        }
        RatioBuilder::ModifiedGamma => {
            let p = UnitCircleBetaParams { g: params.g, omegas: params.omegas };
            Ok(unit_circle_integrand(u + w1, &p, policy)? / unit_circle_integrand(u, &p, policy)?)
        }
    }
}

/// `max(|R(u+ω₂) - R(u)|, |R(u+ω₃) - R(u)|) / |R(u)|`.
pub fn ellipticity_residual(u: Complex64, params: &AdditiveParams, builder: RatioBuilder, policy: &PrecisionPolicy) -> Result<f64> {
    let w = &params.omegas;
    let r0 = ratio(u, params, builder, policy)?;
    let r2 = ratio(u + w.omega2(), params, builder, policy)?;
    let r3 = ratio(u + w.omega3(), params, builder, policy)?;
    Ok((r2 - r0).norm().max((r3 - r0).norm()) / r0.norm())
}

/// `|R(u+ω₁) - R(u)| / |R(u)|`; `R` has no period `ω₁`, so this is a
/// negative control that should be of order one.
pub fn omega1_shift_residual(u: Complex64, params: &AdditiveParams, builder: RatioBuilder, policy: &PrecisionPolicy) -> Result<f64> {
    let r0 = ratio(u, params, builder, policy)?;
    let r1 = ratio(u + params.omegas.omega1(), params, builder, policy)?;
    Ok((r1 - r0).norm() / r0.norm())
}

/// Convenience constructor.
pub fn additive_params(g: [Complex64; 5], omegas: QuasiPeriods) -> AdditiveParams {
    AdditiveParams { g, omegas }
}
