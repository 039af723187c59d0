//! The double sine `S(u;ω₁,ω₂)`.
//!
//! For `Im(ω₁/ω₂) > 0` it is the ratio of q-products
//! `(e^{2πiu/ω₂};q)∞ / (e^{2πiu/ω₁}q̃;q̃)∞`. For real `ω₁/ω₂ > 0` both products
//! diverge; there `S` is computed from Faddeev's integral for the quantum
//! dilogarithm `Φ_b`, which converges on a strip of width `Re(b + 1/b)`, and
//! the functional equations carry the argument into that strip.

use std::f64::consts::PI;

use num_complex::Complex64;
use serde::Serialize;

use crate::cplx::{e2pi, epi, I, ONE, ZERO};
use crate::error::{Error, Result};
use crate::qseries::{ln_qpochhammer, Base, PrecisionPolicy};
use crate::quadrature::{adaptive, AdaptiveOptions};

use super::{b22_pair, elliptic_gamma, QuasiPeriods};

/// How `S` is evaluated for a given pair.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum SineRegime {
    /// `Im(ω₁/ω₂) > 0`: convergent q-products.
    ProductRegime,
    /// `ω₁/ω₂ > 0` real: integral representation.
    RealRatio,
}

/// The quasiperiod pair `(ω₁, ω₂)` of the double sine.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SinePair {
    omega1: Complex64,
    omega2: Complex64,
    regime: SineRegime,
}

const REAL_RATIO_EPS: f64 = 1e-13;

impl SinePair {
    pub fn new(omega1: Complex64, omega2: Complex64) -> Result<Self> {
        for (k, w) in [omega1, omega2].iter().enumerate() {
            if !(w.re.is_finite() && w.im.is_finite()) || w.norm() == 0.0 {
                return Err(Error::Domain(format!("omega{} must be finite and nonzero", k + 1)));
            }
        }
        let tau = omega1 / omega2;
        let regime = if tau.im.abs() <= REAL_RATIO_EPS * tau.norm() {
            if !(tau.re > 0.0) {
                return Err(Error::Domain("real omega1/omega2 must be positive".into()));
            }
            SineRegime::RealRatio
        } else if tau.im > 0.0 {
            SineRegime::ProductRegime
        } else {
            return Err(Error::Domain("double sine needs Im(omega1/omega2) >= 0".into()));
        };
        Ok(SinePair { omega1, omega2, regime })
    }

    pub fn omega1(&self) -> Complex64 {
        self.omega1
    }
    pub fn omega2(&self) -> Complex64 {
        self.omega2
    }
    pub fn regime(&self) -> SineRegime {
        self.regime
    }
    /// `τ = ω₁/ω₂`.
    pub fn tau(&self) -> Complex64 {
        self.omega1 / self.omega2
    }
    /// `q = e^{2πiω₁/ω₂}`.
    pub fn q(&self) -> Complex64 {
        e2pi(self.tau())
    }
    /// `q̃ = e^{-2πiω₂/ω₁}`.
    pub fn q_tilde(&self) -> Complex64 {
        e2pi(-ONE / self.tau())
    }

    fn bases(&self) -> Result<(Base, Base)> {
        match self.regime {
            SineRegime::ProductRegime => Ok((Base::new(self.q())?, Base::new(self.q_tilde())?)),
            SineRegime::RealRatio => Err(Error::Domain(
                "the q-product form of S needs Im(omega1/omega2) > 0".into(),
            )),
        }
    }

    fn resolution(&self) -> f64 {
        1e-10 * self.omega1.norm().max(self.omega2.norm())
    }
}

/// Is `x` within `tol` of `nτ + m` for some integers `n, m ≥ 0`?
fn near_lattice(x: Complex64, tau: Complex64, tol: f64) -> bool {
    let mut n = 0u32;
    loop {
        let y = x - tau * n as f64;
        if y.re < -0.5 {
            return false;
        }
        let m = y.re.round().max(0.0);
        if (y - m).norm() < tol {
            return true;
        }
        n += 1;
        if n > 1_000_000 || tau.re <= 0.0 && n > 64 {
            return false;
        }
    }
}

enum Lattice {
    Zero,
    Pole,
    Regular,
}

fn classify(u: Complex64, pair: &SinePair) -> Lattice {
    let v = u / pair.omega2;
    let tau = pair.tau();
    let tol = pair.resolution() / pair.omega2.norm();
    if near_lattice(-v, tau, tol) {
        Lattice::Zero
    } else if near_lattice(v - tau - ONE, tau, tol) {
        Lattice::Pole
    } else {
        Lattice::Regular
    }
}

fn ln_product(u: Complex64, pair: &SinePair, policy: &PrecisionPolicy) -> Result<Complex64> {
    let (q, qt) = pair.bases()?;
    let x = e2pi(u / pair.omega2);
    let xt = e2pi(u / pair.omega1);
    Ok(ln_qpochhammer(x, q, policy)? - ln_qpochhammer(xt * qt.value(), qt, policy)?)
}

fn ln_modular(u: Complex64, pair: &SinePair, policy: &PrecisionPolicy) -> Result<Complex64> {
    let (q, qt) = pair.bases()?;
    let num = ln_qpochhammer(e2pi(-u / pair.omega1), qt, policy)?;
    let den = ln_qpochhammer(e2pi(-u / pair.omega2) * q.value(), q, policy)?;
    Ok(-PI * I * b22_pair(u, pair.omega1, pair.omega2) + num - den)
}

/// `S(u) = (e^{2πiu/ω₂};q)∞ / (e^{2πiu/ω₁}q̃;q̃)∞`.
pub fn double_sine_product_form(u: Complex64, pair: &SinePair, policy: &PrecisionPolicy) -> Result<Complex64> {
    Ok(ln_product(u, pair, policy)?.exp())
}

/// `S(u) = e^{-πiB₂,₂(u)} (e^{-2πiu/ω₁};q̃)∞ / (e^{-2πiu/ω₂}q;q)∞`.
pub fn double_sine_modular_form(u: Complex64, pair: &SinePair, policy: &PrecisionPolicy) -> Result<Complex64> {
    Ok(ln_modular(u, pair, policy)?.exp())
}

fn sinc_m1(x: Complex64) -> Complex64 {
    // 1 - sin(x)/x
    if x.norm() < 1.0 {
        let x2 = x * x;
        let mut term = x2 / 6.0;
        let mut sum = term;
        for k in 2..14 {
            term *= -x2 / ((2 * k) as f64 * (2 * k + 1) as f64);
            sum += term;
        }
        sum
    } else {
        ONE - x.sin() / x
    }
}

fn shc_m1(x: Complex64) -> Complex64 {
    // sinh(x)/x - 1
    if x.norm() < 1.0 {
        let x2 = x * x;
        let mut term = x2 / 6.0;
        let mut sum = term;
        for k in 2..14 {
            term *= x2 / ((2 * k) as f64 * (2 * k + 1) as f64);
            sum += term;
        }
        sum
    } else {
        x.sinh() / x - ONE
    }
}

/// `ln Φ_b(z)` for `|Im z| < Re(b + 1/b)/2` from
/// `∫₀^∞ [iz/w² - i sin(2zw) / (2w sinh(bw) sinh(w/b))] dw + iπz²/2 + iπ(b² + b⁻²)/24`.
fn ln_faddeev(z: Complex64, b: Complex64, policy: &PrecisionPolicy) -> Result<Complex64> {
    let bi = ONE / b;
    let beta = b + bi;
    let constant = I * PI * z * z / 2.0 + I * PI * (b * b + bi * bi) / 24.0;
    if z == ZERO {
        return Ok(constant);
    }
    let decay = beta.re - 2.0 * z.im.abs();
    if !(decay > 0.0) {
        return Err(Error::Domain(format!("z={z} outside the strip of the integral representation")));
    }
    let kernel = |w: f64| -> Result<Complex64> {
        if w <= 2.0 {
            let one_minus_a = sinc_m1(2.0 * z * w);
            let h1 = shc_m1(b * w);
            let h2 = shc_m1(bi * w);
            let hh = h1 * h2 + h1 + h2;
            let one_minus_c = hh / (ONE + hh);
            let one_minus_ac = one_minus_a + (ONE - one_minus_a) * one_minus_c;
            Ok(I * z * one_minus_ac / (w * w))
        } else {
            let num = ((2.0 * I * z - beta) * w).exp() - ((-2.0 * I * z - beta) * w).exp();
            let den = 2.0 * I * (ONE - (-2.0 * b * w).exp()) * (ONE - (-2.0 * bi * w).exp());
            let ratio = 4.0 * num / den;
            Ok(I * z / (w * w) - I * ratio / (2.0 * w))
        }
    };
    let upper = (40.0 / decay).max(4.0);
    let oscillations = (2.0 * z.re.abs() * upper / (2.0 * PI)).ceil() as usize;
    let opts = AdaptiveOptions {
        rel_tol: 1e-15,
        abs_tol: 2e-15,
        max_panels: policy.quad_max_panels.max(2000),
        initial_panels: (8 + 2 * oscillations).min(4000),
        parallel: false,
        prescan_per_panel: 0,
    };
    let r = adaptive(&kernel, 0.0, upper, &opts).or_else(|e| match e {
        // the best estimate is still far below any tolerance used downstream
        Error::ToleranceNotMet(best) if best.error_estimate < 1e-11 => Ok(best),
        other => Err(other),
    })?;
    Ok(r.value + I * z / upper + constant)
}

/// `ln S(u)` through the integral representation; zero of `S` gives `-∞`.
fn ln_integral(u: Complex64, pair: &SinePair, policy: &PrecisionPolicy) -> Result<Complex64> {
    let tau = pair.tau();
    let b = tau.sqrt();
    let mut v = u / pair.omega2;
    // Im z = Re(v/b) - Re(b + 1/b)/2; step along τ moves it by Re(b), along 1 by Re(1/b)
    let half = (b + ONE / b).re / 2.0;
    let (step, shift, use_tau) = if b.re <= (ONE / b).re { (b.re, tau, true) } else { ((ONE / b).re, ONE, false) };
    let k = (((v / b).re - half) / step).round();
    let factor = |w: Complex64| -> Complex64 {
        if use_tau {
            ONE - e2pi(w)
        } else {
            ONE - e2pi(w / tau)
        }
    };
    let mut acc = ZERO;
    if k.abs() > 1e6 {
        return Err(Error::Domain(format!("u={u} too far from the fundamental strip")));
    }
    let steps = k.abs() as usize;
    if k > 0.0 {
        // S(v) = S(v - k s) / ∏_{i<k} (1 - E(v - k s + i s))
        let base = v - shift * k;
        for i in 0..steps {
            let f = factor(base + shift * i as f64);
            if f.norm() < policy.pole_tol {
                return Err(Error::Pole(format!("double sine singular at u={u}")));
            }
            acc -= f.ln();
        }
        v = base;
    } else if k < 0.0 {
        // S(v) = S(v + |k| s) ∏_{i<|k|} (1 - E(v + i s))
        for i in 0..steps {
            let f = factor(v + shift * i as f64);
            if f == ZERO {
                return Ok(Complex64::new(f64::NEG_INFINITY, 0.0));
            }
            acc += f.ln();
        }
        v += shift * steps as f64;
    }
    let z = I * v / b - I * (b + ONE / b) / 2.0;
    Ok(acc + ln_faddeev(z, b, policy)?)
}

/// `S(u;ω₁,ω₂)` from the integral representation; works in both regimes.
pub fn double_sine_integral_form(u: Complex64, pair: &SinePair, policy: &PrecisionPolicy) -> Result<Complex64> {
    match classify(u, pair) {
        Lattice::Zero => Ok(ZERO),
        Lattice::Pole => Err(Error::Pole(format!("double sine has a pole at u={u}"))),
        Lattice::Regular => Ok(ln_integral(u, pair, policy)?.exp()),
    }
}

/// `ln S(u)` without lattice errors for zeros: a zero returns `-∞` real
/// part so that integrands with zeros of `S` in the numerator stay finite.
pub(crate) fn ln_double_sine_raw(u: Complex64, pair: &SinePair, policy: &PrecisionPolicy) -> Result<Complex64> {
    match classify(u, pair) {
        Lattice::Zero => return Ok(Complex64::new(f64::NEG_INFINITY, 0.0)),
        Lattice::Pole => return Err(Error::Pole(format!("double sine has a pole at u={u}"))),
        Lattice::Regular => {}
    }
    match pair.regime {
        SineRegime::RealRatio => ln_integral(u, pair, policy),
        SineRegime::ProductRegime => {
            let lx = (2.0 * PI * I * u / pair.omega2).re;
            let lxt = (2.0 * PI * I * u / pair.omega1).re;
            // ln|x| and ln|x̃|: the product form converges fastest when both are negative
            if lx.max(lxt) <= (-lx).max(-lxt) {
                ln_product(u, pair, policy)
            } else {
                ln_modular(u, pair, policy)
            }
        }
    }
}

/// A branch of `ln S(u)`; errors on the zero and pole lattices.
pub fn ln_double_sine(u: Complex64, pair: &SinePair, policy: &PrecisionPolicy) -> Result<Complex64> {
    if let Lattice::Zero = classify(u, pair) {
        return Err(Error::Zero(format!("double sine vanishes at u={u}")));
    }
    ln_double_sine_raw(u, pair, policy)
}

/// `S(u;ω₁,ω₂)` in either regime.
pub fn double_sine(u: Complex64, pair: &SinePair, policy: &PrecisionPolicy) -> Result<Complex64> {
    Ok(ln_double_sine(u, pair, policy)?.exp())
}

/// Relative distance between the two sides of
/// `e^{-πiω₃(2u-ω₁-ω₂)/(12ω₁ω₂)} Γ(e^{-2πiu/ω₃}; r̃, p̃)` and
/// `e^{-πi(3(2u-ω₁-ω₂)² - ω₁² - ω₂²)/(24ω₁ω₂)} / S(u;ω₁,ω₂)`
/// for `ω₃ = i·t_scale·ω₂`. The two agree in the limit `t_scale → ∞`.
pub fn double_sine_limit_check(
    u: Complex64,
    omegas: &QuasiPeriods,
    t_scale: f64,
    policy: &PrecisionPolicy,
) -> Result<f64> {
    if !(t_scale > 0.0) {
        return Err(Error::Domain("t_scale must be positive".into()));
    }
    let [w1, w2, w3] = omegas.omegas();
    let expected = Complex64::new(0.0, t_scale) * w2;
    if (w3 - expected).norm() > 1e-12 * expected.norm() {
        return Err(Error::Domain("omega3 must equal i*t_scale*omega2".into()));
    }
    let pair = omegas.sine_pair()?;
    let gamma = elliptic_gamma(e2pi(-u / w3), omegas.r_tilde_base(), omegas.p_tilde_base(), policy)?;
    let s = 2.0 * u - w1 - w2;
    let lhs = epi(-w3 * s / (12.0 * w1 * w2)) * gamma;
    let rhs = epi(-(3.0 * s * s - w1 * w1 - w2 * w2) / (24.0 * w1 * w2)) / double_sine(u, &pair, policy)?;
    Ok((lhs - rhs).norm() / rhs.norm())
}
