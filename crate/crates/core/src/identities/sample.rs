//! Seeded rejection samplers for admissible parameters. Every open
//! constraint is enforced with a margin (10% of the natural scale) so that
//! poles of the integrands stay away from the contours.

use std::f64::consts::PI;

use num_complex::Complex64;
use rand::Rng;

use crate::error::{Error, Result};
use crate::gammas::{QuasiPeriods, Regime, SinePair};
use crate::qseries::Base;

use super::params::{
    AdditiveParams, EllipticBetaParams, HyperbolicKind, HyperbolicParams, MultiEllipticParams, MultiModifiedParams,
    UnitCircleBetaParams,
};
use super::verify::IdentityParams;

const SLACK: f64 = 0.1;
const MAX_TRIES: usize = 100_000;

fn polar<R: Rng>(rng: &mut R, r: (f64, f64), phase: (f64, f64)) -> Complex64 {
    Complex64::from_polar(rng.gen_range(r.0..r.1), rng.gen_range(phase.0..phase.1))
}

fn boxed<R: Rng>(rng: &mut R, re: (f64, f64), im: (f64, f64)) -> Complex64 {
    Complex64::new(rng.gen_range(re.0..re.1), rng.gen_range(im.0..im.1))
}

fn retry<T, R: Rng>(rng: &mut R, mut f: impl FnMut(&mut R) -> Option<T>) -> Result<T> {
    for _ in 0..MAX_TRIES {
        if let Some(v) = f(rng) {
            return Ok(v);
        }
    }
    Err(Error::Domain("sampler exhausted its rejection budget".into()))
}

fn small_base<R: Rng>(rng: &mut R, r: (f64, f64)) -> Base {
    Base::new(polar(rng, r, (-0.6, 0.6))).expect("radius below one")
}

/// `|t_n| ∈ [0.45, 0.85]`, `|q| ∈ [0.1, 0.4]`, `|p| ∈ [0.05, 0.35]`, `|pq| ≤ 0.9|A|`.
pub fn sample_elliptic_beta<R: Rng>(rng: &mut R) -> Result<EllipticBetaParams> {
    retry(rng, |rng| {
        let t: [Complex64; 5] = std::array::from_fn(|_| polar(rng, (0.45, 0.85), (-PI, PI)));
        let q = small_base(rng, (0.1, 0.4));
        let p = small_base(rng, (0.05, 0.35));
        let s = EllipticBetaParams { t, q, p };
        (q.norm() * p.norm() <= (1.0 - SLACK) * s.a().norm()).then_some(s)
    })
}

/// Quasiperiods of the requested regime: `(1, ρ, iσ)` with `ρ ∈ [1.2, 1.8]`
/// on the unit circle, `(1 + iα, 1, iσ)` with `α ∈ [0.2, 0.5]` otherwise.
pub fn sample_omegas<R: Rng>(rng: &mut R, regime: Regime) -> Result<QuasiPeriods> {
    retry(rng, |rng| {
        let w = match regime {
            Regime::UnitCircle => QuasiPeriods::new(
                Complex64::new(1.0, 0.0),
                Complex64::new(rng.gen_range(1.2..1.8), 0.0),
                Complex64::new(0.0, rng.gen_range(0.8..1.2)),
            ),
            Regime::StrictlyElliptic => QuasiPeriods::new(
                Complex64::new(1.0, rng.gen_range(0.2..0.5)),
                Complex64::new(1.0, 0.0),
                Complex64::new(0.0, rng.gen_range(1.5..2.5)),
            ),
        }
        .ok()?;
        (!w.is_commensurate()).then_some(w)
    })
}

fn below_omega3(g: Complex64, w: &QuasiPeriods) -> bool {
    -(g / w.omega3()).im >= SLACK * (w.omega1() / w.omega3()).norm()
}

fn balanced(a: Complex64, w: &QuasiPeriods) -> bool {
    let scale = ((w.omega1() + w.omega2()) / w.omega3()).norm();
    ((a - w.omega1() - w.omega2()) / w.omega3()).im >= SLACK * scale
}

fn sample_g<R: Rng>(rng: &mut R, w: &QuasiPeriods) -> Complex64 {
    // real part along ω₁ pushes g off the segment [-ω₃/2, ω₃/2]
    let s = rng.gen_range(0.1..0.45);
    let y = rng.gen_range(-0.3..0.3);
    w.omega1() * s + w.omega3() / w.omega3().norm() * y
}

pub fn sample_unit_circle_beta<R: Rng>(rng: &mut R, regime: Regime) -> Result<UnitCircleBetaParams> {
    let omegas = sample_omegas(rng, regime)?;
    retry(rng, |rng| {
        let g: [Complex64; 5] = std::array::from_fn(|_| sample_g(rng, &omegas));
        let s = UnitCircleBetaParams { g, omegas };
        (g.iter().all(|x| below_omega3(*x, &omegas)) && balanced(s.a(), &omegas)).then_some(s)
    })
}

pub fn sample_multi_elliptic<R: Rng>(rng: &mut R, n: usize) -> Result<MultiEllipticParams> {
    retry(rng, |rng| {
        let t = polar(rng, (0.3, 0.6), (-0.5, 0.5));
        let t_n: [Complex64; 5] = std::array::from_fn(|_| polar(rng, (0.5, 0.85), (-PI, PI)));
        let q = small_base(rng, (0.05, 0.3));
        let p = small_base(rng, (0.05, 0.3));
        let s = MultiEllipticParams { t, t_n, q, p, n };
        (q.norm() * p.norm() <= (1.0 - SLACK) * s.b().norm()).then_some(s)
    })
}

pub fn sample_multi_modified<R: Rng>(rng: &mut R, n: usize, regime: Regime) -> Result<MultiModifiedParams> {
    let omegas = sample_omegas(rng, regime)?;
    retry(rng, |rng| {
        let g = omegas.omega1() * rng.gen_range(0.05..0.2)
            + omegas.omega3() / omegas.omega3().norm() * rng.gen_range(-0.2..0.2);
        let g_n: [Complex64; 5] = std::array::from_fn(|_| sample_g(rng, &omegas));
        let s = MultiModifiedParams { g, g_n, omegas, n };
        let ok = below_omega3(g, &omegas) && g_n.iter().all(|x| below_omega3(*x, &omegas)) && balanced(s.b(), &omegas);
        ok.then_some(s)
    })
}

/// `ω = (1 + iα, 1)` with `α ∈ [0.2, 0.5]`, so `Im(ω₁/ω₂) > 0`.
pub fn sample_sine_pair<R: Rng>(rng: &mut R) -> Result<SinePair> {
    SinePair::new(Complex64::new(1.0, rng.gen_range(0.2..0.5)), Complex64::new(1.0, 0.0))
}

pub fn sample_hyperbolic<R: Rng>(rng: &mut R, kind: HyperbolicKind, n: usize) -> Result<HyperbolicParams> {
    let pair = sample_sine_pair(rng)?;
    let (w1, w2) = (pair.omega1(), pair.omega2());
    let count = match kind {
        HyperbolicKind::NassrallahRahman => 5,
        HyperbolicKind::AskeyWilson => 4,
    };
    retry(rng, |rng| {
        let g = if n > 1 { boxed(rng, (0.1, 0.3), (-0.1, 0.1)) } else { Complex64::new(0.0, 0.0) };
        let g_n: Vec<Complex64> = (0..count).map(|_| boxed(rng, (0.1, 0.4), (-0.2, 0.2)) * w2).collect();
        let s = HyperbolicParams { kind, g, g_n, pair, n };
        let b = s.b();
        let ok_g = n == 1 || ((g / w1).re >= SLACK / 2.0 && (g / w2).re >= SLACK / 2.0);
        let ok_n = s.g_n.iter().all(|x| (x / w2).re >= SLACK);
        let ok_b = match kind {
            HyperbolicKind::NassrallahRahman => ((b - w1) / w2).re <= 1.0 - SLACK,
            HyperbolicKind::AskeyWilson => ((b - w2) / w1).re <= 1.0 - SLACK,
        };
        (ok_g && ok_n && ok_b).then_some(s)
    })
}

/// Additive-form parameters for the ellipticity check; `|q| < 1` needs the
/// strictly elliptic regime when the elliptic-gamma builder is used.
pub fn sample_additive<R: Rng>(rng: &mut R, regime: Regime) -> Result<AdditiveParams> {
    let omegas = sample_omegas(rng, regime)?;
    let g: [Complex64; 5] = std::array::from_fn(|_| boxed(rng, (0.05, 0.45), (-0.3, 0.3)));
    Ok(AdditiveParams { g, omegas })
}

/// A random point in the box `[-0.5, 0.5] × [-0.3, 0.3]`.
pub fn sample_point<R: Rng>(rng: &mut R) -> Complex64 {
    boxed(rng, (-0.5, 0.5), (-0.3, 0.3))
}

/// One admissible draw for the given identity and dimension. `regime`
/// selects the quasiperiod family where it applies.
pub fn sample_identity<R: Rng>(
    rng: &mut R,
    id: super::verify::IdentityId,
    n: usize,
    regime: Regime,
) -> Result<IdentityParams> {
    use super::verify::IdentityId as Id;
    Ok(match id {
        Id::EllipticBeta => IdentityParams::EllipticBeta(sample_elliptic_beta(rng)?),
        Id::UnitCircleBeta => IdentityParams::UnitCircleBeta(sample_unit_circle_beta(rng, regime)?),
        Id::MultipleElliptic => IdentityParams::MultipleElliptic(sample_multi_elliptic(rng, n)?),
        Id::MultipleModified => IdentityParams::MultipleModified(sample_multi_modified(rng, n, regime)?),
        Id::HyperbolicNr => IdentityParams::Hyperbolic(sample_hyperbolic(rng, HyperbolicKind::NassrallahRahman, n)?),
        Id::HyperbolicAw => IdentityParams::Hyperbolic(sample_hyperbolic(rng, HyperbolicKind::AskeyWilson, n)?),
    })
}
