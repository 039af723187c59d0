//! The elliptic beta integral on the unit circle and its `C_N`
//! generalisation, for `|q|, |p| < 1`.

use num_complex::Complex64;

use crate::cplx::{I, ONE};
use crate::error::{Error, Result};
use crate::gammas::{elliptic_gamma, elliptic_gamma_reflection_inverse, reciprocal_elliptic_gamma};
use crate::qseries::{qpochhammer, Base, PrecisionPolicy};
use crate::quadrature::{integrate, integrate2, Contour};

use super::params::{EllipticBetaParams, MultiEllipticParams};
use super::Sides;

fn gamma_pm(a: Complex64, z: Complex64, q: Base, p: Base, policy: &PrecisionPolicy) -> Result<Complex64> {
    Ok(elliptic_gamma(a * z, q, p, policy)? * elliptic_gamma(a / z, q, p, policy)?)
}

fn recip_gamma_pm(a: Complex64, z: Complex64, q: Base, p: Base, policy: &PrecisionPolicy) -> Result<Complex64> {
    Ok(reciprocal_elliptic_gamma(a * z, q, p, policy)? * reciprocal_elliptic_gamma(a / z, q, p, policy)?)
}

/// Single-variable weight `∏Γ(t_n z^±) / Γ(z^{±2}, B z^±)`.
fn weight(z: Complex64, t: &[Complex64; 5], b: Complex64, q: Base, p: Base, policy: &PrecisionPolicy) -> Result<Complex64> {
    let mut v = elliptic_gamma_reflection_inverse(z * z, q, p, policy)? * recip_gamma_pm(b, z, q, p, policy)?;
    for tn in t {
        v *= gamma_pm(*tn, z, q, p, policy)?;
    }
    Ok(v)
}

/// Cross factor `Γ(t z_j^± z_k^±) / Γ(z_j^± z_k^±)`.
fn cross(z1: Complex64, z2: Complex64, t: Complex64, q: Base, p: Base, policy: &PrecisionPolicy) -> Result<Complex64> {
    let num = gamma_pm(t * z1, z2, q, p, policy)? * gamma_pm(t / z1, z2, q, p, policy)?;
    let den_inv = elliptic_gamma_reflection_inverse(z1 * z2, q, p, policy)?
        * elliptic_gamma_reflection_inverse(z1 / z2, q, p, policy)?;
    Ok(num * den_inv)
}

/// Integrand `Δ(z)` of the elliptic beta integral (without `dz/(2πiz)`).
pub fn elliptic_beta_integrand(z: Complex64, params: &EllipticBetaParams, policy: &PrecisionPolicy) -> Result<Complex64> {
    weight(z, &params.t, params.a(), params.q, params.p, policy)
}

/// `2 ∏_{n<m} Γ(t_n t_m) / ((q;q)∞ (p;p)∞ ∏ Γ(A/t_n))`.
pub fn elliptic_beta_rhs(params: &EllipticBetaParams, policy: &PrecisionPolicy) -> Result<Complex64> {
    let (q, p, t) = (params.q, params.p, &params.t);
    let a = params.a();
    let mut v = Complex64::new(2.0, 0.0)
        / (qpochhammer(q.value(), q, policy)? * qpochhammer(p.value(), p, policy)?);
    for n in 0..5 {
        for m in n + 1..5 {
            v *= elliptic_gamma(t[n] * t[m], q, p, policy)?;
        }
        v *= reciprocal_elliptic_gamma(a / t[n], q, p, policy)?;
    }
    Ok(v)
}

/// Both sides of the elliptic beta integral; the left side by quadrature
/// along the positively oriented unit circle.
pub fn elliptic_beta_sides(params: &EllipticBetaParams, policy: &PrecisionPolicy) -> Result<Sides> {
    params.validate()?;
    let quad = integrate(
        |z| Ok(elliptic_beta_integrand(z, params, policy)? / (2.0 * std::f64::consts::PI * I * z)),
        &Contour::unit_circle(),
        policy,
    )?;
    let rhs = elliptic_beta_rhs(params, policy)?;
    Ok(Sides { lhs: quad.value, rhs, quad })
}

/// Integrand of the `N`-fold integral at `z ∈ 𝕋^N` (`N ≤ 2`), without the measure.
pub fn multiple_elliptic_integrand(z: &[Complex64], params: &MultiEllipticParams, policy: &PrecisionPolicy) -> Result<Complex64> {
    let (q, p, b) = (params.q, params.p, params.b());
    let mut v = ONE;
    for (j, zj) in z.iter().enumerate() {
        v *= weight(*zj, &params.t_n, b, q, p, policy)?;
        for zk in &z[j + 1..] {
            v *= cross(*zj, *zk, params.t, q, p, policy)?;
        }
    }
    Ok(v)
}

/// `2^N N! / ((p;p)^N (q;q)^N) ∏_j Γ(t^j)/Γ(t) ∏_{n<m} Γ(t^{j-1}t_n t_m) / ∏_n Γ(t^{1-j} B / t_n)`.
pub fn multiple_elliptic_rhs(params: &MultiEllipticParams, policy: &PrecisionPolicy) -> Result<Complex64> {
    let (q, p, t, tn, b) = (params.q, params.p, params.t, &params.t_n, params.b());
    let n = params.n as i32;
    let fact: f64 = (1..=params.n).map(|k| k as f64).product();
    let poch = qpochhammer(q.value(), q, policy)? * qpochhammer(p.value(), p, policy)?;
    let mut v = Complex64::new(2f64.powi(n) * fact, 0.0) / poch.powi(n);
    let gt = elliptic_gamma(t, q, p, policy)?;
    for j in 1..=n {
        v *= elliptic_gamma(t.powi(j), q, p, policy)? / gt;
        let tj = t.powi(j - 1);
        for a in 0..5 {
            for m in a + 1..5 {
                v *= elliptic_gamma(tj * tn[a] * tn[m], q, p, policy)?;
            }
            v *= reciprocal_elliptic_gamma(b / (tj * tn[a]), q, p, policy)?;
        }
    }
    Ok(v)
}

/// Both sides of the multiple elliptic beta integral for `N ∈ {1, 2}`.
pub fn multiple_elliptic_sides(params: &MultiEllipticParams, policy: &PrecisionPolicy) -> Result<Sides> {
    params.validate()?;
    let two_pi_i = 2.0 * std::f64::consts::PI * I;
    let quad = match params.n {
        1 => integrate(
            |z| Ok(multiple_elliptic_integrand(&[z], params, policy)? / (two_pi_i * z)),
            &Contour::unit_circle(),
            policy,
        )?,
        2 => integrate2(
            |z1, z2| Ok(multiple_elliptic_integrand(&[z1, z2], params, policy)? / (two_pi_i * two_pi_i * z1 * z2)),
            &Contour::unit_circle(),
            policy,
        )?,
        n => return Err(Error::Domain(format!("numerical verification supports N <= 2, got N={n}"))),
    };
    let rhs = multiple_elliptic_rhs(params, policy)?;
    Ok(Sides { lhs: quad.value, rhs, quad })
}
