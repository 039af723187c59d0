use num_complex::Complex64;
use serde::Serialize;

use crate::cplx::e2pi;
use crate::error::{Error, Result};
use crate::qseries::Base;

use super::double_sine::SinePair;

/// Whether `q = e^{2πiω₁/ω₂}` lies inside the unit disc or on the circle.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Regime {
    /// `Im(ω₁/ω₂) > 0`, so `|q|, |q̃| < 1`.
    StrictlyElliptic,
    /// `ω₁/ω₂ > 0` real, so `|q| = |q̃| = 1`.
    UnitCircle,
}

/// Three quasiperiods together with the six bases they generate:
/// `q = e^{2πiω₁/ω₂}`, `p = e^{2πiω₃/ω₂}`, `r = e^{2πiω₃/ω₁}` and the modular
/// partners `q̃ = e^{-2πiω₂/ω₁}`, `p̃ = e^{-2πiω₂/ω₃}`, `r̃ = e^{-2πiω₁/ω₃}`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuasiPeriods {
    omega: [Complex64; 3],
    q: Complex64,
    p: Base,
    r: Base,
    q_tilde: Complex64,
    p_tilde: Base,
    r_tilde: Base,
    regime: Regime,
    commensurate: bool,
}

/// Relative size of `Im(ω₁/ω₂)` below which the ratio is treated as real.
const REAL_RATIO_EPS: f64 = 1e-13;

impl QuasiPeriods {
    pub fn new(omega1: Complex64, omega2: Complex64, omega3: Complex64) -> Result<Self> {
        for (k, w) in [omega1, omega2, omega3].iter().enumerate() {
            if !(w.re.is_finite() && w.im.is_finite()) || w.norm() == 0.0 {
                return Err(Error::Domain(format!("omega{} must be finite and nonzero", k + 1)));
            }
        }
        if !((omega3 / omega1).im > 0.0) {
            return Err(Error::Domain("quasiperiods violate Im(omega3/omega1) > 0".into()));
        }
        if !((omega3 / omega2).im > 0.0) {
            return Err(Error::Domain("quasiperiods violate Im(omega3/omega2) > 0".into()));
        }
        let ratio = omega1 / omega2;
        let regime = if ratio.im.abs() <= REAL_RATIO_EPS * ratio.norm() {
            if !(ratio.re > 0.0) {
                return Err(Error::Domain("real omega1/omega2 must be positive".into()));
            }
            Regime::UnitCircle
        } else if ratio.im > 0.0 {
            Regime::StrictlyElliptic
        } else {
            return Err(Error::Domain("quasiperiods violate Im(omega1/omega2) >= 0".into()));
        };
        let commensurate = regime == Regime::UnitCircle && is_small_rational(ratio.re);
        Ok(QuasiPeriods {
            omega: [omega1, omega2, omega3],
            q: e2pi(ratio),
            p: Base::new(e2pi(omega3 / omega2))?,
            r: Base::new(e2pi(omega3 / omega1))?,
            q_tilde: e2pi(-omega2 / omega1),
            p_tilde: Base::new(e2pi(-omega2 / omega3))?,
            r_tilde: Base::new(e2pi(-omega1 / omega3))?,
            regime,
            commensurate,
        })
    }

    /// `(ω₁, ω₂, i·t·ω₂)`, the family used for the `p, r → 0` degeneration.
    pub fn with_scaled_third(omega1: Complex64, omega2: Complex64, t_scale: f64) -> Result<Self> {
        QuasiPeriods::new(omega1, omega2, Complex64::new(0.0, t_scale) * omega2)
    }

    pub fn omegas(&self) -> [Complex64; 3] {
        self.omega
    }
    pub fn omega1(&self) -> Complex64 {
        self.omega[0]
    }
    pub fn omega2(&self) -> Complex64 {
        self.omega[1]
    }
    pub fn omega3(&self) -> Complex64 {
        self.omega[2]
    }
    pub fn regime(&self) -> Regime {
        self.regime
    }
    /// Set when `ω₁/ω₂` is a rational number with a small denominator. The
    /// formulas remain defined but the quasiperiods are not independent.
    pub fn is_commensurate(&self) -> bool {
        self.commensurate
    }

    pub fn q(&self) -> Complex64 {
        self.q
    }
    pub fn p(&self) -> Complex64 {
        self.p.value()
    }
    pub fn r(&self) -> Complex64 {
        self.r.value()
    }
    pub fn q_tilde(&self) -> Complex64 {
        self.q_tilde
    }
    pub fn p_tilde(&self) -> Complex64 {
        self.p_tilde.value()
    }
    pub fn r_tilde(&self) -> Complex64 {
        self.r_tilde.value()
    }

    pub fn p_base(&self) -> Base {
        self.p
    }
    pub fn r_base(&self) -> Base {
        self.r
    }
    pub fn p_tilde_base(&self) -> Base {
        self.p_tilde
    }
    pub fn r_tilde_base(&self) -> Base {
        self.r_tilde
    }

    pub fn q_base(&self) -> Result<Base> {
        match self.regime {
            Regime::StrictlyElliptic => Base::new(self.q),
            Regime::UnitCircle => Err(Error::Domain("|q| = 1: the q-product diverges in the unit-circle regime".into())),
        }
    }

    pub fn q_tilde_base(&self) -> Result<Base> {
        match self.regime {
            Regime::StrictlyElliptic => Base::new(self.q_tilde),
            Regime::UnitCircle => Err(Error::Domain("|q~| = 1: the q~-product diverges in the unit-circle regime".into())),
        }
    }

    /// The pair `(ω₁, ω₂)` that parametrises the double sine.
    pub fn sine_pair(&self) -> Result<SinePair> {
        SinePair::new(self.omega1(), self.omega2())
    }

    /// All quasiperiods multiplied by `λ`; every base is unchanged.
    pub fn scaled(&self, lambda: Complex64) -> Result<Self> {
        QuasiPeriods::new(self.omega[0] * lambda, self.omega[1] * lambda, self.omega[2] * lambda)
    }

    /// `(ω₁+ω₂+ω₃)/2`, where `G` equals one.
    pub fn half_sum(&self) -> Complex64 {
        (self.omega[0] + self.omega[1] + self.omega[2]) / 2.0
    }
}

fn is_small_rational(x: f64) -> bool {
    (1..=16).any(|d| {
        let y = x * d as f64;
        (y - y.round()).abs() < 1e-10 * d as f64
    })
}
