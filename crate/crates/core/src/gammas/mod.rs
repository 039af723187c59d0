//! The gamma-function family: the elliptic gamma function `Γ(z;q,p)`, the
//! modified elliptic gamma function `G(u;ω)` and the double sine `S(u;ω₁,ω₂)`.
//!
//! `G` is always evaluated through its modular representation
//! `G(u;ω) = e^{-πiP(u)} Γ(e^{-2πiu/ω₃}; r̃, p̃)`, which only needs
//! `|r̃|, |p̃| < 1` and therefore stays valid when `ω₁/ω₂` is real
//! (`|q| = 1`). The four-fold product definition is kept as
//! [`modified_gamma_product`] for cross-checks where `|q| < 1`.

mod double_sine;
mod quasi;

use num_complex::Complex64;

use crate::cplx::{e2pi, epi, ONE};
use crate::error::{Error, Result};
use crate::qseries::{theta, Base, PrecisionPolicy};

pub use double_sine::{
    double_sine, double_sine_integral_form, double_sine_limit_check, double_sine_modular_form,
    double_sine_product_form, ln_double_sine, SinePair, SineRegime,
};
pub(crate) use double_sine::ln_double_sine_raw;
pub use quasi::{QuasiPeriods, Regime};

/// Evaluates `∏_{j,k≥0} (1 - z⁻¹ q^{j+1} p^{k+1}) / (1 - z q^j p^k)` or its
/// reciprocal. Only the factors that end up in the denominator are checked
/// against the pole threshold.
fn gamma_rows(z: Complex64, q: Base, p: Base, reciprocal: bool, policy: &PrecisionPolicy) -> Result<Complex64> {
    if z.re == 0.0 && z.im == 0.0 {
        return Err(Error::Domain("z=0 outside domain".into()));
    }
    let (qv, pv) = (q.value(), p.value());
    let (qgap, pgap) = (1.0 - q.norm(), 1.0 - p.norm());
    let zi = ONE / z;
    let tol = policy.product_tol;
    let mut result = ONE;
    let mut pk = ONE;
    for _ in 0..policy.max_terms {
        // row k: numerator argument zi q p^{k+1}, denominator argument z p^k
        let mut b = z * pk;
        let mut a = zi * qv * pk * pv;
        if (a.norm() + b.norm()) / (qgap * pgap) < tol {
            return Ok(result);
        }
        let mut num = ONE;
        let mut den = ONE;
        let mut done = false;
        for _ in 0..policy.max_terms {
            if a.norm().max(b.norm()) / qgap < tol {
                done = true;
                break;
            }
            let fa = ONE - a;
            let fb = ONE - b;
            let guarded = if reciprocal { fa } else { fb };
            if guarded.norm() < policy.pole_tol {
                return Err(Error::Pole(format!(
                    "elliptic gamma argument {z} lies on its {} lattice",
                    if reciprocal { "zero" } else { "pole" }
                )));
            }
            num *= fa;
            den *= fb;
            a *= qv;
            b *= qv;
        }
        if !done {
            return Err(Error::NonConvergence(policy.max_terms));
        }
        result *= if reciprocal { den / num } else { num / den };
        pk *= pv;
    }
    Err(Error::NonConvergence(policy.max_terms))
}

/// Elliptic gamma function
/// `Γ(z;q,p) = ∏_{j,k≥0} (1 - z⁻¹q^{j+1}p^{k+1}) / (1 - z q^j p^k)`.
pub fn elliptic_gamma(z: Complex64, q: Base, p: Base, policy: &PrecisionPolicy) -> Result<Complex64> {
    gamma_rows(z, q, p, false, policy)
}

/// `1/Γ(z;q,p)`, finite on the pole lattice of `Γ`.
pub fn reciprocal_elliptic_gamma(z: Complex64, q: Base, p: Base, policy: &PrecisionPolicy) -> Result<Complex64> {
    gamma_rows(z, q, p, true, policy)
}

/// `1 / (Γ(z;q,p) Γ(z⁻¹;q,p)) = θ(z;p) θ(z⁻¹;q)`, an entire function of `z ≠ 0`.
pub fn elliptic_gamma_reflection_inverse(z: Complex64, q: Base, p: Base, policy: &PrecisionPolicy) -> Result<Complex64> {
    Ok(theta(z, p, policy)? * theta(ONE / z, q, policy)?)
}

/// `B₂,₂(u;ω) = u²/(ω₁ω₂) - u/ω₁ - u/ω₂ + ω₁/(6ω₂) + ω₂/(6ω₁) + 1/2`.
pub fn b22(u: Complex64, omegas: &QuasiPeriods) -> Complex64 {
    b22_pair(u, omegas.omega1(), omegas.omega2())
}

pub fn b22_pair(u: Complex64, w1: Complex64, w2: Complex64) -> Complex64 {
    u * u / (w1 * w2) - u / w1 - u / w2 + w1 / (6.0 * w2) + w2 / (6.0 * w1) + 0.5
}

/// The cubic `P(u)` of the modular representation of `G`:
/// `(u - s/2)(u² - u s + (ω₁ω₂ω₃/2) Σ 1/ωₙ) / (3ω₁ω₂ω₃)` with `s = Σ ωₙ`.
pub fn p_cubic(u: Complex64, omegas: &QuasiPeriods) -> Complex64 {
    let [w1, w2, w3] = omegas.omegas();
    let s = w1 + w2 + w3;
    let prod = w1 * w2 * w3;
    let h = ONE / w1 + ONE / w2 + ONE / w3;
    (u - s / 2.0) * (u * u - u * s + prod * h / 2.0) / (3.0 * prod)
}

/// `G(u;ω)` from the four-fold product. Requires `|q| < 1`, i.e. the
/// strictly elliptic regime; it equals `Γ(e^{2πiu/ω₂};q,p) Γ(r e^{-2πiu/ω₁};q̃,r)`.
pub fn modified_gamma_product(u: Complex64, omegas: &QuasiPeriods, policy: &PrecisionPolicy) -> Result<Complex64> {
    let q = omegas.q_base()?;
    let qt = omegas.q_tilde_base()?;
    let first = elliptic_gamma(e2pi(u / omegas.omega2()), q, omegas.p_base(), policy)?;
    let second = elliptic_gamma(omegas.r() * e2pi(-u / omegas.omega1()), qt, omegas.r_base(), policy)?;
    Ok(first * second)
}

/// `G(u;ω) = e^{-πiP(u)} Γ(e^{-2πiu/ω₃}; r̃, p̃)`, valid for `Im(ω₁/ω₂) ≥ 0`.
pub fn modified_gamma(u: Complex64, omegas: &QuasiPeriods, policy: &PrecisionPolicy) -> Result<Complex64> {
    let z = e2pi(-u / omegas.omega3());
    let g = elliptic_gamma(z, omegas.r_tilde_base(), omegas.p_tilde_base(), policy)
        .map_err(|e| relabel_pole(e, u))?;
    Ok(epi(-p_cubic(u, omegas)) * g)
}

/// `1/G(u;ω)`, finite where `G` has poles.
pub fn reciprocal_modified_gamma(u: Complex64, omegas: &QuasiPeriods, policy: &PrecisionPolicy) -> Result<Complex64> {
    let z = e2pi(-u / omegas.omega3());
    let g = reciprocal_elliptic_gamma(z, omegas.r_tilde_base(), omegas.p_tilde_base(), policy)
        .map_err(|e| relabel_pole(e, u))?;
    Ok(epi(p_cubic(u, omegas)) * g)
}

/// `1/(G(u;ω) G(-u;ω)) = e^{πi(P(u)+P(-u))} θ(w;p̃) θ(w⁻¹;r̃)` with
/// `w = e^{-2πiu/ω₃}`; pole free in `u`.
pub fn modified_gamma_reflection_inverse(u: Complex64, omegas: &QuasiPeriods, policy: &PrecisionPolicy) -> Result<Complex64> {
    let w = e2pi(-u / omegas.omega3());
    let th = theta(w, omegas.p_tilde_base(), policy)? * theta(ONE / w, omegas.r_tilde_base(), policy)?;
    Ok(epi(p_cubic(u, omegas) + p_cubic(-u, omegas)) * th)
}

fn relabel_pole(e: Error, u: Complex64) -> Error {
    match e {
        Error::Pole(_) => Error::Pole(format!("modified gamma singular at u={u}")),
        other => other,
    }
}
