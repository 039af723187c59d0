//! Hyperbolic integrals of Nassrallah–Rahman and Askey–Wilson type along
//! `𝕃 = iω₂ℝ`, with integrands assembled from `ln S` so that the large and
//! small factors far out on the line cannot overflow.

use num_complex::Complex64;

use crate::cplx::ONE;
use crate::error::{Error, Result};
use crate::gammas::{ln_double_sine_raw, SinePair, SineRegime};
use crate::qseries::{modular_eta_ratio, qpochhammer, Base, PrecisionPolicy};
use crate::quadrature::{integrate, integrate2, line_truncation, Contour, QuadResult};

use super::params::{HyperbolicKind, HyperbolicParams};
use super::Sides;

fn ln_s(u: Complex64, pair: &SinePair, policy: &PrecisionPolicy) -> Result<Complex64> {
    ln_double_sine_raw(u, pair, policy)
}

fn ln_s_pm(a: Complex64, u: Complex64, pair: &SinePair, policy: &PrecisionPolicy) -> Result<Complex64> {
    Ok(ln_s(a + u, pair, policy)? + ln_s(a - u, pair, policy)?)
}

/// `ln Δ(u)`; a zero of the integrand gives real part `-∞`.
pub fn hyperbolic_ln_integrand(u: &[Complex64], params: &HyperbolicParams, policy: &PrecisionPolicy) -> Result<Complex64> {
    let pair = &params.pair;
    let b = params.b();
    let mut acc = Complex64::new(0.0, 0.0);
    for (j, uj) in u.iter().enumerate() {
        acc += ln_s(2.0 * uj, pair, policy)? + ln_s(-2.0 * uj, pair, policy)?;
        if params.kind == HyperbolicKind::NassrallahRahman {
            acc += ln_s_pm(b, *uj, pair, policy)?;
        }
        for gn in &params.g_n {
            acc -= ln_s_pm(*gn, *uj, pair, policy)?;
        }
        for uk in &u[j + 1..] {
            for (s1, s2) in [(1.0, 1.0), (1.0, -1.0), (-1.0, 1.0), (-1.0, -1.0)] {
                let v = *uj * s1 + *uk * s2;
                acc += ln_s(v, pair, policy)? - ln_s(params.g + v, pair, policy)?;
            }
        }
    }
    Ok(acc)
}

/// `Δ(u)` itself.
pub fn hyperbolic_integrand(u: &[Complex64], params: &HyperbolicParams, policy: &PrecisionPolicy) -> Result<Complex64> {
    let l = hyperbolic_ln_integrand(u, params, policy)?;
    if l.re == f64::NEG_INFINITY {
        return Ok(Complex64::new(0.0, 0.0));
    }
    Ok(l.exp())
}

/// `(q̃;q̃)∞ / (q;q)∞`, from the products when they converge and from the
/// Dedekind law on the real axis.
pub fn eta_ratio(pair: &SinePair, policy: &PrecisionPolicy) -> Result<Complex64> {
    match pair.regime() {
        SineRegime::ProductRegime => {
            let q = Base::new(pair.q())?;
            let qt = Base::new(pair.q_tilde())?;
            Ok(qpochhammer(qt.value(), qt, policy)? / qpochhammer(q.value(), q, policy)?)
        }
        SineRegime::RealRatio => modular_eta_ratio(pair.tau()),
    }
}

/// Closed-form right-hand side `𝒩(g)`.
pub fn hyperbolic_rhs(params: &HyperbolicParams, policy: &PrecisionPolicy) -> Result<Complex64> {
    let pair = &params.pair;
    let (g, gn, b) = (params.g, &params.g_n, params.b());
    let n = params.n;
    let fact: f64 = (1..=n).map(|k| k as f64).product();
    let mut ln = Complex64::new(0.0, 0.0);
    for j in 1..=n {
        let jf = j as f64;
        if j > 1 {
            ln += ln_s(g, pair, policy)? - ln_s(g * jf, pair, policy)?;
        }
        let shift = g * (jf - 1.0);
        for a in 0..gn.len() {
            for m in a + 1..gn.len() {
                ln -= ln_s(shift + gn[a] + gn[m], pair, policy)?;
            }
        }
        match params.kind {
            HyperbolicKind::NassrallahRahman => {
                for gk in gn {
                    ln += ln_s(b - shift - gk, pair, policy)?;
                }
            }
            HyperbolicKind::AskeyWilson => ln += ln_s(b - shift, pair, policy)?,
        }
    }
    if ln.re == f64::NEG_INFINITY {
        return Err(Error::Zero("right-hand side vanishes at these parameters".into()));
    }
    let prefactor = Complex64::new((-2f64).powi(n as i32) * fact, 0.0) * eta_ratio(pair, policy)?.powi(n as i32);
    Ok(prefactor * ln.exp())
}

/// Exponential decay rate in `x` of `Δ` along `u_j = iω₂x`, `|x| → ∞`, with
/// the other variables fixed: `2π Re(1 + ω₂/ω₁)` for the Nassrallah–Rahman
/// integrand and `2π Re(1 + ω₂/ω₁ - ℬ/ω₁)` for the Askey–Wilson one. The
/// coupling terms `±2(N-1)g/ω₁` of the single-variable factor and of the
/// cross factors cancel.
pub fn decay_rate(params: &HyperbolicParams) -> f64 {
    let (w1, w2) = (params.pair.omega1(), params.pair.omega2());
    let base = ONE + w2 / w1;
    let e = match params.kind {
        HyperbolicKind::NassrallahRahman => base,
        HyperbolicKind::AskeyWilson => base - params.b() / w1,
    };
    2.0 * std::f64::consts::PI * e.re
}

fn boundary_magnitude(x: f64, params: &HyperbolicParams, policy: &PrecisionPolicy) -> Result<f64> {
    let d = crate::cplx::I * params.pair.omega2();
    let mut worst = 0.0f64;
    match params.n {
        1 => {
            for s in [-1.0, 1.0] {
                worst = worst.max(hyperbolic_integrand(&[d * (s * x)], params, policy)?.norm());
            }
        }
        _ => {
            for s in [-1.0, 1.0] {
                for y in [-0.83, -0.41, 0.13, 0.52, 0.97] {
                    let v = hyperbolic_integrand(&[d * (s * x), d * (y * x)], params, policy)?;
                    worst = worst.max(v.norm());
                }
            }
        }
    }
    Ok(worst)
}

fn integrate_on_line(params: &HyperbolicParams, x: f64, policy: &PrecisionPolicy) -> Result<QuadResult> {
    let w2 = params.pair.omega2();
    let line = Contour::line(crate::cplx::I * w2, x)?;
    match params.n {
        1 => integrate(|u| Ok(hyperbolic_integrand(&[u], params, policy)? / w2), &line, policy),
        2 => integrate2(|u1, u2| Ok(hyperbolic_integrand(&[u1, u2], params, policy)? / (w2 * w2)), &line, policy),
        n => Err(Error::Domain(format!("numerical verification supports N <= 2, got N={n}"))),
    }
}

/// Both sides of the hyperbolic identity; the line is truncated at the
/// half-width given by [`decay_rate`] and widened while the integrand at the
/// cut is not negligible.
pub fn hyperbolic_sides(params: &HyperbolicParams, policy: &PrecisionPolicy) -> Result<Sides> {
    params.validate()?;
    let rate = decay_rate(params);
    let mut x = line_truncation(rate, policy).map_err(|e| Error::Truncation(e.to_string()))?;
    let mut quad = integrate_on_line(params, x, policy)?;
    for _ in 0..3 {
        let tail = boundary_magnitude(x, params, policy)? * params.pair.omega2().norm().recip() / rate;
        if tail <= policy.quad_rel_tol * quad.value.norm() {
            break;
        }
        x *= 2.0;
        quad = integrate_on_line(params, x, policy)?;
    }
    let rhs = hyperbolic_rhs(params, policy)?;
    Ok(Sides { lhs: quad.value, rhs, quad })
}

/// Nassrallah–Rahman type identity (five `g_n`).
pub fn hyperbolic_nr_sides(params: &HyperbolicParams, policy: &PrecisionPolicy) -> Result<Sides> {
    if params.kind != HyperbolicKind::NassrallahRahman {
        return Err(Error::Domain("expected Nassrallah-Rahman parameters".into()));
    }
    hyperbolic_sides(params, policy)
}

/// Askey–Wilson type identity (four `g_n`).
pub fn hyperbolic_aw_sides(params: &HyperbolicParams, policy: &PrecisionPolicy) -> Result<Sides> {
    if params.kind != HyperbolicKind::AskeyWilson {
        return Err(Error::Domain("expected Askey-Wilson parameters".into()));
    }
    hyperbolic_sides(params, policy)
}
