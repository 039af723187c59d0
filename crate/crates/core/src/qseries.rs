//! q-series kernels: infinite Pochhammer products, the Jacobi type theta
//! function `θ(z;p) = (z;p)∞ (p/z;p)∞`, the classical `θ₁(u|τ)` and the
//! Dedekind product block `e^{πiτ/12} (e^{2πiτ}; e^{2πiτ})∞`.
//!
//! Every product stops once the geometric bound on the remaining tail drops
//! below [`PrecisionPolicy::product_tol`] in relative terms.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::cplx::{e2pi, epi, I, ONE};
use crate::error::{Error, Result};

/// Truncation and quadrature controls shared by all evaluators.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct PrecisionPolicy {
    /// Relative tail bound at which infinite products stop.
    pub product_tol: f64,
    /// Hard cap on factors per product (and rows per double product).
    pub max_terms: usize,
    /// Target relative error for adaptive quadrature.
    pub quad_rel_tol: f64,
    /// Maximum number of panels an adaptive integration may use.
    pub quad_max_panels: usize,
    /// A denominator factor `1 - x` with `|1 - x|` below this is a pole.
    pub pole_tol: f64,
}

impl Default for PrecisionPolicy {
    fn default() -> Self {
        PrecisionPolicy {
            product_tol: 1e-15,
            max_terms: 1_000_000,
            quad_rel_tol: 1e-10,
            quad_max_panels: 4000,
            pole_tol: 1e-10,
        }
    }
}

impl PrecisionPolicy {
    pub fn validate(&self) -> Result<()> {
        if !(self.product_tol > 0.0) {
            return Err(Error::Domain("policy: product_tol must be > 0".into()));
        }
        if self.max_terms < 1 {
            return Err(Error::Domain("policy: max_terms must be >= 1".into()));
        }
        if !(self.quad_rel_tol > 0.0) {
            return Err(Error::Domain("policy: quad_rel_tol must be > 0".into()));
        }
        if self.quad_max_panels < 1 {
            return Err(Error::Domain("policy: quad_max_panels must be >= 1".into()));
        }
        if !(self.pole_tol >= 0.0) {
            return Err(Error::Domain("policy: pole_tol must be >= 0".into()));
        }
        Ok(())
    }

    pub fn with_quad_rel_tol(mut self, tol: f64) -> Self {
        self.quad_rel_tol = tol;
        self
    }

    /// Values below `10 * product_tol` in magnitude are reported as zeros.
    pub fn is_at_zero(&self, v: Complex64) -> bool {
        v.norm() < 10.0 * self.product_tol
    }
}

/// A base of an infinite product: a complex number strictly inside the unit
/// disc.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Base(Complex64);

impl Base {
    pub fn new(value: Complex64) -> Result<Self> {
        if !(value.re.is_finite() && value.im.is_finite()) {
            return Err(Error::Domain(format!("base {value} is not finite")));
        }
        if value.norm() >= 1.0 {
            return Err(Error::Domain(format!(
                "base {value} violates |base| < 1 (|base| = {})",
                value.norm()
            )));
        }
        Ok(Base(value))
    }

    pub fn real(x: f64) -> Result<Self> {
        Base::new(Complex64::new(x, 0.0))
    }

    pub fn zero() -> Self {
        Base(Complex64::new(0.0, 0.0))
    }

    pub fn value(&self) -> Complex64 {
        self.0
    }

    pub fn norm(&self) -> f64 {
        self.0.norm()
    }
}

/// `(a; p)∞ = ∏_{n≥0} (1 - a pⁿ)`.
pub fn qpochhammer(a: Complex64, p: Base, policy: &PrecisionPolicy) -> Result<Complex64> {
    if a.re == 0.0 && a.im == 0.0 {
        return Ok(ONE);
    }
    let pv = p.value();
    let gap = 1.0 - p.norm();
    let mut prod = ONE;
    let mut x = a;
    for _ in 0..policy.max_terms {
        if x.norm() / gap < policy.product_tol {
            return Ok(prod);
        }
        prod *= ONE - x;
        x *= pv;
    }
    Err(Error::NonConvergence(policy.max_terms))
}

/// Logarithm of `(a; p)∞` accumulated in chunks so that huge leading
/// factors cannot overflow. An exact zero factor yields `-∞` real part.
pub(crate) fn ln_qpochhammer(a: Complex64, p: Base, policy: &PrecisionPolicy) -> Result<Complex64> {
    if a.re == 0.0 && a.im == 0.0 {
        return Ok(Complex64::new(0.0, 0.0));
    }
    let pv = p.value();
    let gap = 1.0 - p.norm();
    let mut acc = Complex64::new(0.0, 0.0);
    let mut chunk = ONE;
    let mut x = a;
    for n in 0..policy.max_terms {
        if x.norm() / gap < policy.product_tol {
            return Ok(acc + chunk.ln());
        }
        let f = ONE - x;
        if f.re == 0.0 && f.im == 0.0 {
            return Ok(Complex64::new(f64::NEG_INFINITY, 0.0));
        }
        if !(1e-100..=1e100).contains(&f.norm()) {
            acc += f.ln();
            x *= pv;
            continue;
        }
        chunk *= f;
        let m = chunk.norm();
        if n % 16 == 15 || !(1e-120..=1e120).contains(&m) {
            acc += chunk.ln();
            chunk = ONE;
        }
        x *= pv;
    }
    Err(Error::NonConvergence(policy.max_terms))
}

/// `θ(z; p) = (z; p)∞ (p z⁻¹; p)∞`.
pub fn theta(z: Complex64, p: Base, policy: &PrecisionPolicy) -> Result<Complex64> {
    if z.re == 0.0 && z.im == 0.0 {
        return Err(Error::Domain("z=0 outside domain of theta".into()));
    }
    let a = qpochhammer(z, p, policy)?;
    let b = qpochhammer(p.value() / z, p, policy)?;
    Ok(a * b)
}

fn nome(tau: Complex64) -> Result<Base> {
    if !(tau.im > 0.0) {
        return Err(Error::Domain(format!("tau={tau} violates Im(tau) > 0")));
    }
    Base::new(e2pi(tau))
}

/// Jacobi `θ₁(u|τ) = i p^{1/8} e^{-πiu} (p;p)∞ θ(e^{2πiu}; p)` with
/// `p = e^{2πiτ}` and `p^{1/8} = e^{πiτ/4}`.
pub fn theta1(u: Complex64, tau: Complex64, policy: &PrecisionPolicy) -> Result<Complex64> {
    let p = nome(tau)?;
    let pp = qpochhammer(p.value(), p, policy)?;
    let th = theta(e2pi(u), p, policy)?;
    Ok(I * epi(tau / 4.0 - u) * pp * th)
}

/// `θ₁(u|τ)` from its defining bilateral series
/// `-i Σ (-1)ⁿ p^{(2n+1)²/8} e^{πi(2n+1)u}`.
pub fn theta1_series(u: Complex64, tau: Complex64, policy: &PrecisionPolicy) -> Result<Complex64> {
    nome(tau)?;
    let mut sum = Complex64::new(0.0, 0.0);
    let mut scale = 0.0f64;
    for k in 0..policy.max_terms {
        // terms n = k and n = -k-1 share the exponent (2n+1)^2 = (2k+1)^2
        let m = (2 * k + 1) as f64;
        let w = tau * (m * m / 4.0);
        let sign = if k % 2 == 0 { 1.0 } else { -1.0 };
        let plus = epi(w + u * m);
        let minus = epi(w - u * m);
        // (-1)^{-k-1} = -(-1)^k
        let term = (plus - minus) * sign;
        sum += term;
        scale = scale.max(term.norm());
        if k > 0 && term.norm() <= policy.product_tol * scale.max(sum.norm()) * 1e-2 {
            return Ok(-I * sum);
        }
    }
    Err(Error::NonConvergence(policy.max_terms))
}

/// `e^{πiτ/12} (e^{2πiτ}; e^{2πiτ})∞`, the Dedekind η building block.
pub fn eta_product(tau: Complex64, policy: &PrecisionPolicy) -> Result<Complex64> {
    let p = nome(tau)?;
    Ok(epi(tau / 12.0) * qpochhammer(p.value(), p, policy)?)
}

/// Ratio `(q̃;q̃)∞ / (q;q)∞` for `q = e^{2πiτ}`, `q̃ = e^{-2πi/τ}` written
/// through the Dedekind law as `(-iτ)^{1/2} e^{πi(τ + 1/τ)/12}`.
///
/// The closed form stays finite for real `τ > 0`, where both products
/// diverge.
pub fn modular_eta_ratio(tau: Complex64) -> Result<Complex64> {
    if tau.im < 0.0 || !(tau.norm() > 0.0) || (tau.im == 0.0 && tau.re <= 0.0) {
        return Err(Error::Domain(format!(
            "tau={tau} must lie in the closed upper half plane, away from the negative axis"
        )));
    }
    Ok((-I * tau).sqrt() * epi((tau + ONE / tau) / 12.0))
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn pol() -> PrecisionPolicy {
        PrecisionPolicy::default()
    }

    // direct truncated product, the oracle for (a;p)∞
    fn brute_poch(a: Complex64, p: Complex64, terms: usize) -> Complex64 {
        let mut prod = ONE;
        let mut x = a;
        for _ in 0..terms {
            prod *= ONE - x;
            x *= p;
        }
        prod
    }

    #[test]
    fn poch_trivial_values() {
        assert_eq!(qpochhammer(c(0.0, 0.0), Base::real(0.5).unwrap(), &pol()).unwrap(), ONE);
        // a = p = 0
        assert_eq!(qpochhammer(c(0.0, 0.0), Base::zero(), &pol()).unwrap(), ONE);
    }

    #[test]
    fn poch_matches_brute_product() {
        let p = Base::real(0.5).unwrap();
        let got = qpochhammer(c(0.5, 0.0), p, &pol()).unwrap();
        let want = brute_poch(c(0.5, 0.0), c(0.5, 0.0), 200);
        assert!((got - want).norm() < 1e-12 * want.norm());
        let p = Base::new(c(0.3, 0.55)).unwrap();
        let got = qpochhammer(c(-1.3, 0.4), p, &pol()).unwrap();
        let want = brute_poch(c(-1.3, 0.4), p.value(), 400);
        assert!((got - want).norm() < 1e-13 * want.norm());
    }

    #[test]
    fn poch_nonconvergence_is_reported() {
        let tight = PrecisionPolicy { max_terms: 3, ..pol() };
        let r = qpochhammer(c(0.5, 0.0), Base::real(0.9).unwrap(), &tight);
        assert_eq!(r, Err(Error::NonConvergence(3)));
    }

    #[test]
    fn ln_poch_agrees_and_survives_overflow() {
        let p = Base::new(c(0.2, 0.1)).unwrap();
        for a in [c(0.4, -0.3), c(3.0, 2.0), c(-20.0, 5.0)] {
            let direct = qpochhammer(a, p, &pol()).unwrap();
            let viaexp = ln_qpochhammer(a, p, &pol()).unwrap().exp();
            assert!((direct - viaexp).norm() < 1e-13 * direct.norm());
        }
        // 1e200 leading factor: direct product overflows, log stays finite
        let big = ln_qpochhammer(c(1e200, 0.0), Base::real(0.5).unwrap(), &pol()).unwrap();
        assert!(big.re.is_finite() && big.re > 1e4);
        let z = ln_qpochhammer(ONE, Base::real(0.5).unwrap(), &pol()).unwrap();
        assert_eq!(z.re, f64::NEG_INFINITY);
    }

    #[test]
    fn theta_basic_values() {
        let t = theta(c(0.3, 0.0), Base::zero(), &pol()).unwrap();
        assert!((t - c(0.7, 0.0)).norm() < 1e-15);
        let t = theta(c(0.4, 0.0), Base::real(0.4).unwrap(), &pol()).unwrap();
        assert!(t.norm() < pol().product_tol);
        assert!(pol().is_at_zero(t));
        assert!(matches!(theta(c(0.0, 0.0), Base::real(0.1).unwrap(), &pol()), Err(Error::Domain(_))));
    }

    #[test]
    fn theta_quasiperiodicity_example() {
        let z = c(0.2, 0.1);
        let p = Base::real(0.35).unwrap();
        let lhs = theta(p.value() * z, p, &pol()).unwrap();
        let rhs = -theta(z, p, &pol()).unwrap() / z;
        assert!((lhs - rhs).norm() < 1e-12 * rhs.norm());
    }

    #[test]
    fn theta1_examples() {
        let t = theta1(c(0.0, 0.0), c(0.0, 0.8), &pol()).unwrap();
        assert!(t.norm() < 1e-15);
        let u = c(0.17, 0.05);
        let tau = c(0.1, 0.8);
        let a = theta1(u, tau, &pol()).unwrap();
        let b = theta1_series(u, tau, &pol()).unwrap();
        assert!((a - b).norm() < 1e-11 * b.norm(), "{a} vs {b}");
        let u = c(0.3, 0.0);
        let tau = c(0.0, 0.9);
        let a = theta1(u + 1.0, tau, &pol()).unwrap();
        let b = -theta1(u, tau, &pol()).unwrap();
        assert!((a - b).norm() < 1e-12 * b.norm());
        assert!(theta1(u, c(0.2, 0.0), &pol()).is_err());
    }

    // independent oracle: straight summation over n = -K..K of the series
    #[test]
    fn theta1_series_matches_plain_summation() {
        let u = c(0.17, 0.05);
        let tau = c(0.1, 0.8);
        let mut s = Complex64::new(0.0, 0.0);
        for n in -40i64..=40 {
            let m = (2 * n + 1) as f64;
            let sign = if n.rem_euclid(2) == 0 { 1.0 } else { -1.0 };
            s += sign * (I * PI * tau * m * m / 4.0).exp() * (I * PI * m * u).exp();
        }
        let want = -I * s;
        let got = theta1_series(u, tau, &pol()).unwrap();
        assert!((got - want).norm() < 1e-13 * want.norm());
    }

    #[test]
    fn eta_examples() {
        let tau = c(0.0, 1.0);
        let r = eta_product(-ONE / tau, &pol()).unwrap() / eta_product(tau, &pol()).unwrap();
        assert!((r - ONE).norm() < 1e-14);
        let tau = c(0.0, 0.8);
        let lhs = eta_product(-ONE / tau, &pol()).unwrap();
        let rhs = (-I * tau).sqrt() * eta_product(tau, &pol()).unwrap();
        assert!((lhs - rhs).norm() < 1e-12);
        let tau = c(0.3, 0.9);
        let q = (2.0 * PI * I * tau).exp();
        let want = (I * PI * tau / 12.0).exp() * brute_poch(q, q, 500);
        assert!((eta_product(tau, &pol()).unwrap() - want).norm() < 1e-12);
        assert!(eta_product(c(1.0, -0.1), &pol()).is_err());
    }

    #[test]
    fn eta_ratio_closed_form_matches_products() {
        let tau = c(0.7, 0.4);
        let q = Base::new(e2pi(tau)).unwrap();
        let qt = Base::new(e2pi(-ONE / tau)).unwrap();
        let direct = qpochhammer(qt.value(), qt, &pol()).unwrap() / qpochhammer(q.value(), q, &pol()).unwrap();
        let closed = modular_eta_ratio(tau).unwrap();
        assert!((direct - closed).norm() < 1e-12 * direct.norm());
        assert!(modular_eta_ratio(c(2.0f64.sqrt(), 0.0)).unwrap().norm().is_finite());
        assert!(modular_eta_ratio(c(-1.0, 0.0)).is_err());
    }
}
