//! Parameter records for the integral identities and their admissibility
//! checks. Records can be built without validation (so that a verifier can
//! report *why* a parameter set is rejected); `validate` enforces the
//! theorem hypotheses.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::gammas::{QuasiPeriods, SinePair};
use crate::qseries::Base;

/// Five `t_n` with `|t_n| < 1` and bases `q`, `p` with `|pq| < |A|`, `A = ∏t_n`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EllipticBetaParams {
    pub t: [Complex64; 5],
    pub q: Base,
    pub p: Base,
}

impl EllipticBetaParams {
    pub fn new(t: [Complex64; 5], q: Base, p: Base) -> Result<Self> {
        let s = EllipticBetaParams { t, q, p };
        s.validate()?;
        Ok(s)
    }

    pub fn a(&self) -> Complex64 {
        self.t.iter().product()
    }

    pub fn validate(&self) -> Result<()> {
        check_moduli(&self.t, "t")?;
        check_pq(self.q, self.p, self.a(), "A")
    }
}

/// Five `g_n` with `Im(g_n/ω₃) < 0` and `Im((𝒜 - ω₁ - ω₂)/ω₃) > 0`, `𝒜 = Σg_n`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct UnitCircleBetaParams {
    pub g: [Complex64; 5],
    pub omegas: QuasiPeriods,
}

impl UnitCircleBetaParams {
    pub fn new(g: [Complex64; 5], omegas: QuasiPeriods) -> Result<Self> {
        let s = UnitCircleBetaParams { g, omegas };
        s.validate()?;
        Ok(s)
    }

    pub fn a(&self) -> Complex64 {
        self.g.iter().sum()
    }

    pub fn validate(&self) -> Result<()> {
        check_below_omega3(&self.g, "g", &self.omegas)?;
        check_balance(self.a(), "A", &self.omegas)
    }
}

/// Coupling `t`, five `t_n`, bases and dimension `N`; `B = t^{2N-2} ∏t_n`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MultiEllipticParams {
    pub t: Complex64,
    pub t_n: [Complex64; 5],
    pub q: Base,
    pub p: Base,
    pub n: usize,
}

impl MultiEllipticParams {
    pub fn new(t: Complex64, t_n: [Complex64; 5], q: Base, p: Base, n: usize) -> Result<Self> {
        let s = MultiEllipticParams { t, t_n, q, p, n };
        s.validate()?;
        Ok(s)
    }

    pub fn b(&self) -> Complex64 {
        self.t.powi(2 * self.n as i32 - 2) * self.t_n.iter().product::<Complex64>()
    }

    pub fn validate(&self) -> Result<()> {
        check_n(self.n)?;
        check_moduli(&[self.t], "t")?;
        check_moduli(&self.t_n, "t_n")?;
        check_pq(self.q, self.p, self.b(), "B")
    }
}

/// Coupling `g`, five `g_n`, quasiperiods and `N`; `ℬ = (2N-2)g + Σg_n`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MultiModifiedParams {
    pub g: Complex64,
    pub g_n: [Complex64; 5],
    pub omegas: QuasiPeriods,
    pub n: usize,
}

impl MultiModifiedParams {
    pub fn new(g: Complex64, g_n: [Complex64; 5], omegas: QuasiPeriods, n: usize) -> Result<Self> {
        let s = MultiModifiedParams { g, g_n, omegas, n };
        s.validate()?;
        Ok(s)
    }

    pub fn b(&self) -> Complex64 {
        self.g * (2 * self.n) as f64 - 2.0 * self.g + self.g_n.iter().sum::<Complex64>()
    }

    pub fn validate(&self) -> Result<()> {
        check_n(self.n)?;
        check_below_omega3(&[self.g], "g", &self.omegas)?;
        check_below_omega3(&self.g_n, "g_n", &self.omegas)?;
        check_balance(self.b(), "B", &self.omegas)
    }
}

/// Which hyperbolic identity a [`HyperbolicParams`] record belongs to.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum HyperbolicKind {
    /// Nassrallah–Rahman type, five `g_n`.
    NassrallahRahman,
    /// Askey–Wilson type, four `g_n`.
    AskeyWilson,
}

/// Parameters of the hyperbolic integrals along `𝕃 = iω₂ℝ`.
#[derive(Debug, Clone, PartialEq)]
pub struct HyperbolicParams {
    pub kind: HyperbolicKind,
    pub g: Complex64,
    pub g_n: Vec<Complex64>,
    pub pair: SinePair,
    pub n: usize,
}

impl HyperbolicParams {
    pub fn nassrallah_rahman(g: Complex64, g_n: [Complex64; 5], pair: SinePair, n: usize) -> Result<Self> {
        let s = HyperbolicParams { kind: HyperbolicKind::NassrallahRahman, g, g_n: g_n.to_vec(), pair, n };
        s.validate()?;
        Ok(s)
    }

    pub fn askey_wilson(g: Complex64, g_n: [Complex64; 4], pair: SinePair, n: usize) -> Result<Self> {
        let s = HyperbolicParams { kind: HyperbolicKind::AskeyWilson, g, g_n: g_n.to_vec(), pair, n };
        s.validate()?;
        Ok(s)
    }

    /// `ℬ = (2N-2)g + Σg_n`.
    pub fn b(&self) -> Complex64 {
        self.g * (2 * self.n) as f64 - 2.0 * self.g + self.g_n.iter().sum::<Complex64>()
    }

    pub fn validate(&self) -> Result<()> {
        check_n(self.n)?;
        let want = match self.kind {
            HyperbolicKind::NassrallahRahman => 5,
            HyperbolicKind::AskeyWilson => 4,
        };
        if self.g_n.len() != want {
            return Err(Error::Domain(format!("expected {want} parameters g_n, got {}", self.g_n.len())));
        }
        let (w1, w2) = (self.pair.omega1(), self.pair.omega2());
        if !((w1 / w2).re > 0.0) {
            return Err(Error::Domain("hyperbolic integrals need Re(omega1/omega2) > 0".into()));
        }
        if self.n > 1 && !((self.g / w1).re > 0.0 && (self.g / w2).re > 0.0) {
            return Err(Error::Domain("constraint Re(g/omega1), Re(g/omega2) > 0 violated".into()));
        }
        for (k, gk) in self.g_n.iter().enumerate() {
            if !((gk / w2).re > 0.0) {
                return Err(Error::Domain(format!("constraint Re(g_{k}/omega2) > 0 violated")));
            }
        }
        let b = self.b();
        match self.kind {
            HyperbolicKind::NassrallahRahman if !(((b - w1) / w2).re < 1.0) => {
                Err(Error::Domain("constraint Re((B-omega1)/omega2) < 1 violated".into()))
            }
            HyperbolicKind::AskeyWilson if !(((b - w2) / w1).re < 1.0) => {
                Err(Error::Domain("constraint Re((B-omega2)/omega1) < 1 violated".into()))
            }
            _ => Ok(()),
        }
    }
}

/// Parameters of the additive-form integrand used by the ellipticity check:
/// five `g_n`, `𝒜 = Σg_n`, and quasiperiods giving `q = e^{2πiω₁/ω₂}`,
/// `p = e^{2πiω₃/ω₂}`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AdditiveParams {
    pub g: [Complex64; 5],
    pub omegas: QuasiPeriods,
}

impl AdditiveParams {
    pub fn a(&self) -> Complex64 {
        self.g.iter().sum()
    }
}

fn check_n(n: usize) -> Result<()> {
    if n == 0 {
        return Err(Error::Domain("dimension N must be at least 1".into()));
    }
    Ok(())
}

fn check_moduli(t: &[Complex64], name: &str) -> Result<()> {
    for (k, tk) in t.iter().enumerate() {
        if !(tk.norm() < 1.0) {
            return Err(Error::Domain(format!("constraint |{name}_{k}| < 1 violated (|{name}_{k}| = {})", tk.norm())));
        }
        if tk.norm() == 0.0 {
            return Err(Error::Domain(format!("{name}_{k} must be nonzero")));
        }
    }
    Ok(())
}

fn check_pq(q: Base, p: Base, a: Complex64, name: &str) -> Result<()> {
    if !(q.norm() * p.norm() < a.norm()) {
        return Err(Error::Domain(format!("constraint |pq| < |{name}| violated")));
    }
    Ok(())
}

fn check_below_omega3(g: &[Complex64], name: &str, w: &QuasiPeriods) -> Result<()> {
    for (k, gk) in g.iter().enumerate() {
        if !((gk / w.omega3()).im < 0.0) {
            return Err(Error::Domain(format!("constraint Im({name}_{k}/omega3) < 0 violated")));
        }
    }
    Ok(())
}

fn check_balance(a: Complex64, name: &str, w: &QuasiPeriods) -> Result<()> {
    if !(((a - w.omega1() - w.omega2()) / w.omega3()).im > 0.0) {
        return Err(Error::Domain(format!("constraint Im(({name}-omega1-omega2)/omega3) > 0 violated")));
    }
    Ok(())
}
