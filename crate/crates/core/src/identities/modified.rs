//! Integrals of the modified elliptic gamma function along the segment
//! `[-ω₃/2, ω₃/2]`, valid for `Im(ω₁/ω₂) ≥ 0` including `|q| = 1`.

use num_complex::Complex64;
use serde::Serialize;

use crate::cplx::{epi, I, ONE};
use crate::error::{Error, Result};
use crate::gammas::{modified_gamma, modified_gamma_reflection_inverse, reciprocal_modified_gamma, QuasiPeriods, Regime};
use crate::qseries::{qpochhammer, Base, PrecisionPolicy};
use crate::quadrature::{integrate, integrate2, Contour};

use super::params::{MultiModifiedParams, UnitCircleBetaParams};
use super::Sides;

/// The three equivalent expressions for the constant `κ`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum KappaForm {
    /// `-2(q̃;q̃)∞ / ((q;q)∞(p;p)∞(r;r)∞)`; needs `|q| < 1`.
    Direct,
    /// `-2 √(ω₁/(iω₂)) e^{πi(ω₁/ω₂ + ω₂/ω₁)/12} / ((r;r)∞(p;p)∞)`.
    Intermediate,
    /// `2ω₃ e^{πi(Σω)(Σ1/ω)/12} / (ω₂(r̃;r̃)∞(p̃;p̃)∞)`.
    Modular,
}

fn poch_self(b: Base, policy: &PrecisionPolicy) -> Result<Complex64> {
    qpochhammer(b.value(), b, policy)
}

/// `κ` in the requested form.
pub fn kappa_form(omegas: &QuasiPeriods, form: KappaForm, policy: &PrecisionPolicy) -> Result<Complex64> {
    let [w1, w2, w3] = omegas.omegas();
    match form {
        KappaForm::Direct => {
            let q = omegas.q_base()?;
            let qt = omegas.q_tilde_base()?;
            let den = poch_self(q, policy)? * poch_self(omegas.p_base(), policy)? * poch_self(omegas.r_base(), policy)?;
            Ok(-2.0 * poch_self(qt, policy)? / den)
        }
        KappaForm::Intermediate => {
            let den = poch_self(omegas.r_base(), policy)? * poch_self(omegas.p_base(), policy)?;
            Ok(-2.0 * (w1 / (I * w2)).sqrt() * epi((w1 / w2 + w2 / w1) / 12.0) / den)
        }
        KappaForm::Modular => {
            let s = w1 + w2 + w3;
            let h = ONE / w1 + ONE / w2 + ONE / w3;
            let den = w2 * poch_self(omegas.r_tilde_base(), policy)? * poch_self(omegas.p_tilde_base(), policy)?;
            Ok(2.0 * w3 * epi(s * h / 12.0) / den)
        }
    }
}

/// `κ`: the direct product form when `|q| < 1`, otherwise the modular form.
pub fn kappa_constant(omegas: &QuasiPeriods, policy: &PrecisionPolicy) -> Result<Complex64> {
    match omegas.regime() {
        Regime::StrictlyElliptic => kappa_form(omegas, KappaForm::Direct, policy),
        Regime::UnitCircle => kappa_form(omegas, KappaForm::Modular, policy),
    }
}

fn g_pm(a: Complex64, u: Complex64, w: &QuasiPeriods, policy: &PrecisionPolicy) -> Result<Complex64> {
    Ok(modified_gamma(a + u, w, policy)? * modified_gamma(a - u, w, policy)?)
}

fn recip_g_pm(a: Complex64, u: Complex64, w: &QuasiPeriods, policy: &PrecisionPolicy) -> Result<Complex64> {
    Ok(reciprocal_modified_gamma(a + u, w, policy)? * reciprocal_modified_gamma(a - u, w, policy)?)
}

fn weight(u: Complex64, g: &[Complex64; 5], b: Complex64, w: &QuasiPeriods, policy: &PrecisionPolicy) -> Result<Complex64> {
    let mut v = modified_gamma_reflection_inverse(2.0 * u, w, policy)? * recip_g_pm(b, u, w, policy)?;
    for gn in g {
        v *= g_pm(*gn, u, w, policy)?;
    }
    Ok(v)
}

fn cross(u1: Complex64, u2: Complex64, g: Complex64, w: &QuasiPeriods, policy: &PrecisionPolicy) -> Result<Complex64> {
    let num = g_pm(g + u1, u2, w, policy)? * g_pm(g - u1, u2, w, policy)?;
    let den_inv = modified_gamma_reflection_inverse(u1 + u2, w, policy)?
        * modified_gamma_reflection_inverse(u1 - u2, w, policy)?;
    Ok(num * den_inv)
}

/// Integrand `∏G(g_n ± u) / G(±2u, 𝒜 ± u)` of the unit-circle beta integral.
pub fn unit_circle_integrand(u: Complex64, params: &UnitCircleBetaParams, policy: &PrecisionPolicy) -> Result<Complex64> {
    weight(u, &params.g, params.a(), &params.omegas, policy)
}

/// `κ ∏_{n<m} G(g_n + g_m) / ∏ G(𝒜 - g_n)`.
pub fn unit_circle_rhs(params: &UnitCircleBetaParams, policy: &PrecisionPolicy) -> Result<Complex64> {
    let w = &params.omegas;
    let a = params.a();
    let g = &params.g;
    let mut v = kappa_constant(w, policy)?;
    for n in 0..5 {
        for m in n + 1..5 {
            v *= modified_gamma(g[n] + g[m], w, policy)?;
        }
        v *= reciprocal_modified_gamma(a - g[n], w, policy)?;
    }
    Ok(v)
}

fn segment(w: &QuasiPeriods) -> Result<Contour> {
    Contour::segment(-w.omega3() / 2.0, w.omega3() / 2.0)
}

/// Both sides of the unit-circle beta integral (`du/ω₂` along the segment).
pub fn unit_circle_beta_sides(params: &UnitCircleBetaParams, policy: &PrecisionPolicy) -> Result<Sides> {
    params.validate()?;
    let w2 = params.omegas.omega2();
    let quad = integrate(|u| Ok(unit_circle_integrand(u, params, policy)? / w2), &segment(&params.omegas)?, policy)?;
    let rhs = unit_circle_rhs(params, policy)?;
    Ok(Sides { lhs: quad.value, rhs, quad })
}

/// Integrand of the `N`-fold modified integral (`N ≤ 2`), without the measure.
pub fn multiple_modified_integrand(u: &[Complex64], params: &MultiModifiedParams, policy: &PrecisionPolicy) -> Result<Complex64> {
    let w = &params.omegas;
    let b = params.b();
    let mut v = ONE;
    for (j, uj) in u.iter().enumerate() {
        v *= weight(*uj, &params.g_n, b, w, policy)?;
        for uk in &u[j + 1..] {
            v *= cross(*uj, *uk, params.g, w, policy)?;
        }
    }
    Ok(v)
}

/// `κ^N N! ∏_j G(jg)/G(g) ∏_{n<m} G((j-1)g + g_n + g_m) / ∏_n G((1-j)g + ℬ - g_n)`.
pub fn multiple_modified_rhs(params: &MultiModifiedParams, policy: &PrecisionPolicy) -> Result<Complex64> {
    let w = &params.omegas;
    let (g, gn, b) = (params.g, &params.g_n, params.b());
    let n = params.n;
    let fact: f64 = (1..=n).map(|k| k as f64).product();
    let mut v = kappa_constant(w, policy)?.powi(n as i32) * fact;
    let gg = if n > 1 { modified_gamma(g, w, policy)? } else { ONE };
    for j in 1..=n {
        let jf = j as f64;
        if j > 1 {
            v *= modified_gamma(g * jf, w, policy)? / gg;
        }
        for a in 0..5 {
            for m in a + 1..5 {
                v *= modified_gamma(g * (jf - 1.0) + gn[a] + gn[m], w, policy)?;
            }
            v *= reciprocal_modified_gamma(g * (1.0 - jf) + b - gn[a], w, policy)?;
        }
    }
    Ok(v)
}

/// Both sides of the multiple modified integral for `N ∈ {1, 2}`.
pub fn multiple_modified_sides(params: &MultiModifiedParams, policy: &PrecisionPolicy) -> Result<Sides> {
    params.validate()?;
    let w2 = params.omegas.omega2();
    let contour = segment(&params.omegas)?;
    let quad = match params.n {
        1 => integrate(|u| Ok(multiple_modified_integrand(&[u], params, policy)? / w2), &contour, policy)?,
        2 => integrate2(
            |u1, u2| Ok(multiple_modified_integrand(&[u1, u2], params, policy)? / (w2 * w2)),
            &contour,
            policy,
        )?,
        n => return Err(Error::Domain(format!("numerical verification supports N <= 2, got N={n}"))),
    };
    let rhs = multiple_modified_rhs(params, policy)?;
    Ok(Sides { lhs: quad.value, rhs, quad })
}
