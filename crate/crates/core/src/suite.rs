//! Seeded batteries of checks. Each check draws its own parameters from a
//! ChaCha8 stream, so a fixed seed reproduces every number except timings.

use std::time::Instant;

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::cplx::{e2pi, epi, rel_diff, I, ONE};
use crate::error::{Error, Result};
use crate::gammas::{
    b22, b22_pair, double_sine, double_sine_limit_check, double_sine_modular_form, double_sine_product_form,
    elliptic_gamma, modified_gamma, modified_gamma_product, modified_gamma_reflection_inverse, QuasiPeriods, Regime,
    SinePair,
};
use crate::identities::sample::{sample_additive, sample_identity, sample_omegas, sample_point};
use crate::identities::{
    ellipticity_residual, omega1_shift_residual, rho_brute, rho_closed, rho_tilde_brute, rho_tilde_closed, verify,
    IdentityId, RatioBuilder,
};
use crate::qseries::{eta_product, theta, theta1, Base, PrecisionPolicy};

/// Named batteries.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum SuiteName {
    Functions,
    Identities1d,
    Identities2d,
    Rho,
    All,
}

impl SuiteName {
    pub const ALL: [SuiteName; 5] =
        [SuiteName::Functions, SuiteName::Identities1d, SuiteName::Identities2d, SuiteName::Rho, SuiteName::All];

    pub fn name(&self) -> &'static str {
        match self {
            SuiteName::Functions => "functions",
            SuiteName::Identities1d => "identities-1d",
            SuiteName::Identities2d => "identities-2d",
            SuiteName::Rho => "rho",
            SuiteName::All => "all",
        }
    }

    pub fn parse(s: &str) -> Option<Self> {
        SuiteName::ALL.iter().copied().find(|n| n.name() == s)
    }
}

/// Whether a check passes when its statistic is below or above the threshold.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Expect {
    /// Every draw must stay at or below the threshold; `worst` is the maximum.
    Below,
    /// Every draw must exceed the threshold; `worst` is the minimum.
    Above,
}

/// Result of one check over all of its draws.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CaseSummary {
    pub name: String,
    pub draws: usize,
    pub failures: usize,
    /// Largest error (or smallest value for [`Expect::Above`]); `None` when
    /// no draw produced a number.
    pub worst: Option<f64>,
    pub threshold: f64,
    pub expect: Expect,
    pub passed: bool,
    pub wall_time_s: f64,
    pub errors: Vec<String>,
}

impl CaseSummary {
    fn from_values(name: &str, values: Vec<Result<f64>>, threshold: f64, expect: Expect, start: Instant) -> Self {
        let draws = values.len();
        let mut worst: Option<f64> = None;
        let mut failures = 0;
        let mut errors = Vec::new();
        for v in values {
            match v {
                Ok(x) => {
                    let ok = match expect {
                        Expect::Below => x <= threshold,
                        Expect::Above => x > threshold,
                    };
                    if !ok {
                        failures += 1;
                    }
                    worst = Some(match (worst, expect) {
                        (None, _) => x,
                        (Some(w), Expect::Below) => w.max(x),
                        (Some(w), Expect::Above) => w.min(x),
                    });
                }
                Err(e) => {
                    failures += 1;
                    errors.push(e.to_string());
                }
            }
        }
        CaseSummary {
            name: name.to_string(),
            draws,
            failures,
            worst,
            threshold,
            expect,
            passed: failures == 0 && draws > 0,
            wall_time_s: start.elapsed().as_secs_f64(),
            errors,
        }
    }
}

/// Output of [`run_suite`].
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SuiteSummary {
    pub schema: &'static str,
    pub suite: SuiteName,
    pub seed: u64,
    pub cases: Vec<CaseSummary>,
    pub cases_passed: usize,
    pub cases_failed: usize,
    pub passed: bool,
    pub wall_time_s: f64,
}

fn rng_for(seed: u64, stream: u64) -> ChaCha8Rng {
    let mut r = ChaCha8Rng::seed_from_u64(seed);
    r.set_stream(stream);
    r
}

fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

fn boxed(rng: &mut ChaCha8Rng, re: (f64, f64), im: (f64, f64)) -> Complex64 {
    c(rng.gen_range(re.0..re.1), rng.gen_range(im.0..im.1))
}

fn base(rng: &mut ChaCha8Rng, r: (f64, f64)) -> Base {
    Base::new(Complex64::from_polar(rng.gen_range(r.0..r.1), rng.gen_range(-3.0..3.0))).expect("modulus below one")
}

/// Strictly elliptic quasiperiods with `|q| ≤ 0.7`.
fn strict_omegas(rng: &mut ChaCha8Rng) -> QuasiPeriods {
    loop {
        let w1 = c(rng.gen_range(0.8..1.2), rng.gen_range(0.06..0.5));
        let w3 = c(rng.gen_range(-0.2..0.2), rng.gen_range(1.2..2.5));
        if let Ok(w) = QuasiPeriods::new(w1, ONE, w3) {
            if w.regime() == Regime::StrictlyElliptic && w.q().norm() <= 0.7 {
                return w;
            }
        }
    }
}

/// A point between the origin pole of `G` and the first zero.
fn gamma_point(rng: &mut ChaCha8Rng) -> Complex64 {
    boxed(rng, (0.15, 0.85), (-0.3, 0.3))
}

fn max_of(v: impl IntoIterator<Item = f64>) -> f64 {
    v.into_iter().fold(0.0, f64::max)
}

/// `G` from the product versus the modular representation.
pub fn check_modified_gamma_forms(seed: u64, draws: usize, threshold: f64, policy: &PrecisionPolicy) -> CaseSummary {
    let start = Instant::now();
    let mut rng = rng_for(seed, 1);
    let inputs: Vec<_> = (0..draws).map(|_| (strict_omegas(&mut rng), gamma_point(&mut rng))).collect();
    let values = inputs
        .par_iter()
        .map(|(w, u)| Ok(rel_diff(modified_gamma(*u, w, policy)?, modified_gamma_product(*u, w, policy)?)))
        .collect();
    CaseSummary::from_values("modified-gamma-product-vs-continuation", values, threshold, Expect::Below, start)
}

/// `θ(pz) = -θ(z)/z` and `θ(p/z) = θ(z)`.
pub fn check_theta_quasiperiodicity(seed: u64, draws: usize, threshold: f64, policy: &PrecisionPolicy) -> CaseSummary {
    let start = Instant::now();
    let mut rng = rng_for(seed, 2);
    let values = (0..draws)
        .map(|_| {
            let p = base(&mut rng, (0.05, 0.8));
            let z = Complex64::from_polar(rng.gen_range(0.3..2.0), rng.gen_range(-3.0..3.0));
            let t = theta(z, p, policy)?;
            Ok(rel_diff(theta(p.value() * z, p, policy)?, -t / z).max(rel_diff(theta(p.value() / z, p, policy)?, t)))
        })
        .collect();
    CaseSummary::from_values("theta-quasiperiodicity", values, threshold, Expect::Below, start)
}

fn tau_draw(rng: &mut ChaCha8Rng) -> Complex64 {
    boxed(rng, (-0.5, 0.5), (0.6, 1.5))
}

/// Quasiperiodicity of `θ₁` in `u` and its laws under `τ → τ+1`, `τ → -1/τ`.
pub fn check_theta1_modular(seed: u64, draws: usize, threshold: f64, policy: &PrecisionPolicy) -> CaseSummary {
    let start = Instant::now();
    let mut rng = rng_for(seed, 3);
    let values = (0..draws)
        .map(|_| {
            let tau = tau_draw(&mut rng);
            let u = boxed(&mut rng, (-0.5, 0.5), (-0.3, 0.3));
            let t = theta1(u, tau, policy)?;
            let shift1 = rel_diff(theta1(u + 1.0, tau, policy)?, -t);
            let shift_tau = rel_diff(theta1(u + tau, tau, policy)?, -epi(-tau - 2.0 * u) * t);
            let plus_one = rel_diff(theta1(u, tau + 1.0, policy)?, epi(c(0.25, 0.0)) * t);
            let inv = theta1(u / tau, -ONE / tau, policy)?;
            let s = rel_diff(inv, -I * (-I * tau).sqrt() * epi(u * u / tau) * t);
            Ok(max_of([shift1, shift_tau, plus_one, s]))
        })
        .collect();
    CaseSummary::from_values("theta1-modular-laws", values, threshold, Expect::Below, start)
}

/// `η(-1/τ) = (-iτ)^{1/2} η(τ)`.
pub fn check_dedekind(seed: u64, draws: usize, threshold: f64, policy: &PrecisionPolicy) -> CaseSummary {
    let start = Instant::now();
    let mut rng = rng_for(seed, 4);
    let values = (0..draws)
        .map(|_| {
            let tau = tau_draw(&mut rng);
            Ok(rel_diff(eta_product(-ONE / tau, policy)?, (-I * tau).sqrt() * eta_product(tau, policy)?))
        })
        .collect();
    CaseSummary::from_values("dedekind-eta", values, threshold, Expect::Below, start)
}

/// `θ(e^{2πiu/τ}; e^{-2πi/τ}) = -i e^{πi(u²/τ + τ/6 + 1/(6τ) + u/τ - u)} θ(e^{2πiu}; e^{2πiτ})`.
pub fn check_theta_modular(seed: u64, draws: usize, threshold: f64, policy: &PrecisionPolicy) -> CaseSummary {
    let start = Instant::now();
    let mut rng = rng_for(seed, 5);
    let values = (0..draws)
        .map(|_| {
            let tau = tau_draw(&mut rng);
            let u = boxed(&mut rng, (-0.5, 0.5), (-0.3, 0.3));
            let lhs = theta(e2pi(u / tau), Base::new(e2pi(-ONE / tau))?, policy)?;
            let phase = u * u / tau + tau / 6.0 + ONE / (6.0 * tau) + u / tau - u;
            let rhs = -I * epi(phase) * theta(e2pi(u), Base::new(e2pi(tau))?, policy)?;
            Ok(rel_diff(lhs, rhs))
        })
        .collect();
    CaseSummary::from_values("theta-modular", values, threshold, Expect::Below, start)
}

/// `Γ(qz) = θ(z;p)Γ(z)`, `Γ(pz) = θ(z;q)Γ(z)` and `Γ(z)Γ(pq/z) = 1`.
pub fn check_gamma_equations(seed: u64, draws: usize, threshold: f64, policy: &PrecisionPolicy) -> CaseSummary {
    let start = Instant::now();
    let mut rng = rng_for(seed, 6);
    let inputs: Vec<_> = (0..draws)
        .map(|_| {
            let q = base(&mut rng, (0.05, 0.7));
            let p = base(&mut rng, (0.05, 0.7));
            let z = Complex64::from_polar(rng.gen_range(0.3..1.5), rng.gen_range(0.2..6.0));
            (q, p, z)
        })
        .collect();
    let values = inputs
        .par_iter()
        .map(|&(q, p, z)| {
            let g = elliptic_gamma(z, q, p, policy)?;
            let a = rel_diff(elliptic_gamma(q.value() * z, q, p, policy)?, theta(z, p, policy)? * g);
            let b = rel_diff(elliptic_gamma(p.value() * z, q, p, policy)?, theta(z, q, policy)? * g);
            let r = rel_diff(g * elliptic_gamma(q.value() * p.value() / z, q, p, policy)?, ONE);
            Ok(max_of([a, b, r]))
        })
        .collect();
    CaseSummary::from_values("elliptic-gamma-difference-reflection", values, threshold, Expect::Below, start)
}

fn g_residuals(u: Complex64, w: &QuasiPeriods, policy: &PrecisionPolicy) -> Result<f64> {
    let [w1, w2, w3] = w.omegas();
    let g = |x| modified_gamma(x, w, policy);
    let g0 = g(u)?;
    let d1 = rel_diff(g(u + w1)?, theta(e2pi(u / w2), w.p_base(), policy)? * g0);
    let d2 = rel_diff(g(u + w2)?, theta(e2pi(u / w1), w.r_base(), policy)? * g0);
    let d3 = rel_diff(g(u + w3)?, epi(-b22(u, w)) * g0);
    let refl = rel_diff(modified_gamma_reflection_inverse(u, w, policy)? * g0 * g(-u)?, ONE);
    Ok(max_of([d1, d2, d3, refl]))
}

/// The three difference equations of `G` and its reflection law in the
/// requested regime.
pub fn check_modified_gamma_equations(
    seed: u64,
    regime: Regime,
    draws: usize,
    threshold: f64,
    policy: &PrecisionPolicy,
) -> CaseSummary {
    let start = Instant::now();
    let stream = if regime == Regime::UnitCircle { 7 } else { 8 };
    let mut rng = rng_for(seed, stream);
    let inputs: Vec<_> = (0..draws)
        .map(|_| {
            let w = match regime {
                Regime::StrictlyElliptic => strict_omegas(&mut rng),
                Regime::UnitCircle => sample_omegas(&mut rng, regime).expect("unit-circle sampler"),
            };
            (w, gamma_point(&mut rng))
        })
        .collect();
    let values = inputs.par_iter().map(|(w, u)| g_residuals(*u, w, policy)).collect();
    let name = match regime {
        Regime::StrictlyElliptic => "modified-gamma-equations-strict",
        Regime::UnitCircle => "modified-gamma-equations-unit-circle",
    };
    CaseSummary::from_values(name, values, threshold, Expect::Below, start)
}

fn sine_pair(rng: &mut ChaCha8Rng, real_ratio: bool) -> SinePair {
    let im = if real_ratio { 0.0 } else { rng.gen_range(0.05..0.6) };
    SinePair::new(c(rng.gen_range(0.5..1.5), im), ONE).expect("Im(tau) >= 0")
}

/// `S(u+ω₁) = S(u)/(1 - e^{2πiu/ω₂})` and `S(u+ω₂) = S(u)/(1 - e^{2πiu/ω₁})`.
pub fn check_double_sine_equations(
    seed: u64,
    real_ratio: bool,
    draws: usize,
    threshold: f64,
    policy: &PrecisionPolicy,
) -> CaseSummary {
    let start = Instant::now();
    let mut rng = rng_for(seed, if real_ratio { 9 } else { 10 });
    let inputs: Vec<_> = (0..draws)
        .map(|_| (sine_pair(&mut rng, real_ratio), boxed(&mut rng, (0.1, 0.9), (-0.3, 0.3))))
        .collect();
    let values = inputs
        .par_iter()
        .map(|(sp, u)| {
            let s = |x| double_sine(x, sp, policy);
            let s0 = s(*u)?;
            let a = rel_diff(s(u + sp.omega1())? * (ONE - e2pi(u / sp.omega2())), s0);
            let b = rel_diff(s(u + sp.omega2())? * (ONE - e2pi(u / sp.omega1())), s0);
            Ok(a.max(b))
        })
        .collect();
    let name = if real_ratio { "double-sine-equations-real-ratio" } else { "double-sine-equations" };
    CaseSummary::from_values(name, values, threshold, Expect::Below, start)
}

/// Product form versus modular-inverse form of `S`.
pub fn check_double_sine_forms(seed: u64, draws: usize, threshold: f64, policy: &PrecisionPolicy) -> CaseSummary {
    let start = Instant::now();
    let mut rng = rng_for(seed, 11);
    let values = (0..draws)
        .map(|_| {
            let sp = sine_pair(&mut rng, false);
            let u = boxed(&mut rng, (-0.9, 0.9), (-0.6, 0.6));
            Ok(rel_diff(double_sine_product_form(u, &sp, policy)?, double_sine_modular_form(u, &sp, policy)?))
        })
        .collect();
    CaseSummary::from_values("double-sine-product-vs-modular", values, threshold, Expect::Below, start)
}

/// `|S(u) - 1|` at `u = 10i(ω₁+ω₂)` and `|e^{πiB₂,₂(u)}S(u) - 1|` at `u = -10i(ω₁+ω₂)`.
pub fn check_double_sine_asymptotics(seed: u64, draws: usize, threshold: f64, policy: &PrecisionPolicy) -> CaseSummary {
    let start = Instant::now();
    let mut rng = rng_for(seed, 12);
    let inputs: Vec<_> = (0..draws).map(|k| sine_pair(&mut rng, k % 2 == 1)).collect();
    let values = inputs
        .par_iter()
        .map(|sp| {
            let u = 10.0 * I * (sp.omega1() + sp.omega2());
            let up = (double_sine(u, sp, policy)? - ONE).norm();
            let down = (epi(b22_pair(-u, sp.omega1(), sp.omega2())) * double_sine(-u, sp, policy)? - ONE).norm();
            Ok(up.max(down))
        })
        .collect();
    CaseSummary::from_values("double-sine-asymptotics", values, threshold, Expect::Below, start)
}

/// The limit residual at `u = 0.3+0.1i`, `ω = (1+0.4i, 1, i·t_scale)`.
pub fn check_double_sine_limit(t_scale: f64, threshold: f64, policy: &PrecisionPolicy) -> CaseSummary {
    let start = Instant::now();
    let value = QuasiPeriods::with_scaled_third(c(1.0, 0.4), ONE, t_scale)
        .and_then(|w| double_sine_limit_check(c(0.3, 0.1), &w, t_scale, policy));
    CaseSummary::from_values(&format!("double-sine-limit-t{t_scale}"), vec![value], threshold, Expect::Below, start)
}

/// `draws` admissible parameter sets verified against the tolerance schedule.
pub fn check_identity(
    seed: u64,
    id: IdentityId,
    n: usize,
    regime: Regime,
    draws: usize,
    policy: &PrecisionPolicy,
) -> CaseSummary {
    let start = Instant::now();
    let stream = 100 + 10 * IdentityId::ALL.iter().position(|x| *x == id).unwrap_or(0) as u64 + 2 * n as u64
        + u64::from(regime == Regime::UnitCircle);
    let mut rng = rng_for(seed, stream);
    let params: Vec<_> = (0..draws).map(|_| sample_identity(&mut rng, id, n, regime)).collect();
    let reports: Vec<Result<(f64, f64)>> = params
        .par_iter()
        .map(|p| {
            let p = p.as_ref().map_err(Clone::clone)?;
            let rep = verify(p, policy);
            match (rep.rel_error, rep.diagnostic) {
                (Some(e), _) => Ok((e, rep.tolerance)),
                (None, Some(d)) => Err(Error::Domain(format!("{}: {}", d.kind, d.message))),
                (None, None) => Err(Error::Domain("empty report".into())),
            }
        })
        .collect();
    let threshold = reports.iter().flatten().map(|r| r.1).next().unwrap_or(f64::NAN);
    let values = reports.into_iter().map(|r| r.map(|x| x.0)).collect();
    let mut name = format!("{}-n{n}", id.name());
    if matches!(id, IdentityId::UnitCircleBeta | IdentityId::MultipleModified) {
        name.push_str(match regime {
            Regime::UnitCircle => "-unit-circle",
            Regime::StrictlyElliptic => "-strict",
        });
    }
    CaseSummary::from_values(&name, values, threshold, Expect::Below, start)
}

fn builder_name(b: RatioBuilder) -> &'static str {
    match b {
        RatioBuilder::Theta => "theta",
        RatioBuilder::Gamma => "gamma",
        RatioBuilder::ModifiedGamma => "modified-gamma",
    }
}

/// Periodicity of `R(u)` in `ω₂` and `ω₃` at random `u`.
pub fn check_ellipticity(
    seed: u64,
    builder: RatioBuilder,
    draws: usize,
    threshold: f64,
    policy: &PrecisionPolicy,
) -> CaseSummary {
    let start = Instant::now();
    let mut rng = rng_for(seed, 200 + builder as u64);
    let inputs: Vec<_> = (0..draws)
        .map(|k| {
            let regime = if builder == RatioBuilder::ModifiedGamma && k % 2 == 1 {
                Regime::UnitCircle
            } else {
                Regime::StrictlyElliptic
            };
            (sample_additive(&mut rng, regime), sample_point(&mut rng))
        })
        .collect();
    let values = inputs
        .par_iter()
        .map(|(p, u)| ellipticity_residual(*u, p.as_ref().map_err(Clone::clone)?, builder, policy))
        .collect();
    CaseSummary::from_values(&format!("ellipticity-{}", builder_name(builder)), values, threshold, Expect::Below, start)
}

/// `R(u+ω₁)` differs from `R(u)`: each draw must exceed `threshold`.
pub fn check_omega1_control(seed: u64, draws: usize, threshold: f64, policy: &PrecisionPolicy) -> CaseSummary {
    let start = Instant::now();
    let mut rng = rng_for(seed, 210);
    let values = (0..draws)
        .map(|_| {
            let p = sample_additive(&mut rng, Regime::StrictlyElliptic)?;
            omega1_shift_residual(sample_point(&mut rng), &p, RatioBuilder::Theta, policy)
        })
        .collect();
    CaseSummary::from_values("ellipticity-omega1-negative-control", values, threshold, Expect::Above, start)
}

/// A generic point of modulus in `[1.3, 1.8]` inside the `j`-th of `n`
/// angular sectors, away from every vanishing denominator.
fn generic_z(rng: &mut ChaCha8Rng, j: usize, n: usize) -> Complex64 {
    let phi = std::f64::consts::TAU * (j as f64 + 0.3 + 0.4 * rng.gen::<f64>()) / n as f64 + 0.2;
    Complex64::from_polar(rng.gen_range(1.3..1.8), phi)
}

fn small(rng: &mut ChaCha8Rng) -> Complex64 {
    Complex64::from_polar(rng.gen_range(0.1..0.7), rng.gen_range(-3.1..3.1))
}

/// Brute sign-flip sums against their products, and z-independence over
/// five z draws, for `ρ` (or `ρ̃` when `tilde`).
pub fn check_rho(seed: u64, n: usize, tilde: bool, draws: usize, threshold: f64) -> CaseSummary {
    let start = Instant::now();
    let mut rng = rng_for(seed, 300 + 2 * n as u64 + u64::from(tilde));
    let values = (0..draws)
        .map(|_| {
            let t = small(&mut rng);
            let mut zs = Vec::new();
            for _ in 0..5 {
                zs.push((0..n).map(|j| generic_z(&mut rng, j, n)).collect::<Vec<_>>());
            }
            let (sums, want) = if tilde {
                let tn: [Complex64; 5] = std::array::from_fn(|_| small(&mut rng));
                let q = small(&mut rng) * 0.5 + 0.3;
                let b = t.powi(2 * n as i32 - 2) * tn.iter().product::<Complex64>();
                let sums = zs.iter().map(|z| rho_tilde_brute(z, t, &tn, b, q)).collect::<Result<Vec<_>>>()?;
                (sums, rho_tilde_closed(t, &tn, b, q, n))
            } else {
                let a = [small(&mut rng), small(&mut rng), small(&mut rng)];
                let sums = zs.iter().map(|z| rho_brute(z, t, a)).collect::<Result<Vec<_>>>()?;
                (sums, rho_closed(t, a, n))
            };
            let scale = want.norm().max(1.0);
            let mut dev = max_of(sums.iter().map(|s| (s - want).norm() / scale));
            for (i, a) in sums.iter().enumerate() {
                for b in &sums[i + 1..] {
                    dev = dev.max((a - b).norm() / scale);
                }
            }
            Ok(dev)
        })
        .collect();
    let name = format!("{}-n{n}", if tilde { "rho-tilde" } else { "rho" });
    CaseSummary::from_values(&name, values, threshold, Expect::Below, start)
}

const FN_DRAWS: usize = 50;
const ID_DRAWS_1D: usize = 20;
const ID_DRAWS_2D: usize = 5;
const RHO_DRAWS: usize = 20;

fn functions_battery(seed: u64, policy: &PrecisionPolicy) -> Vec<CaseSummary> {
    vec![
        check_modified_gamma_forms(seed, FN_DRAWS, 1e-9, policy),
        check_theta_quasiperiodicity(seed, FN_DRAWS, 1e-10, policy),
        check_theta1_modular(seed, FN_DRAWS, 1e-10, policy),
        check_dedekind(seed, FN_DRAWS, 1e-10, policy),
        check_theta_modular(seed, FN_DRAWS, 1e-10, policy),
        check_gamma_equations(seed, FN_DRAWS, 1e-10, policy),
        check_modified_gamma_equations(seed, Regime::StrictlyElliptic, FN_DRAWS, 1e-10, policy),
        check_modified_gamma_equations(seed, Regime::UnitCircle, FN_DRAWS, 1e-10, policy),
        check_double_sine_equations(seed, false, FN_DRAWS, 1e-10, policy),
        check_double_sine_equations(seed, true, FN_DRAWS, 1e-10, policy),
        check_double_sine_forms(seed, FN_DRAWS, 1e-10, policy),
        check_double_sine_asymptotics(seed, 10, 1e-8, policy),
        check_double_sine_limit(40.0, 1e-6, policy),
    ]
}

fn identities_1d_battery(seed: u64, policy: &PrecisionPolicy) -> Vec<CaseSummary> {
    let mut out = vec![
        check_identity(seed, IdentityId::EllipticBeta, 1, Regime::StrictlyElliptic, ID_DRAWS_1D, policy),
        check_identity(seed, IdentityId::UnitCircleBeta, 1, Regime::UnitCircle, ID_DRAWS_1D, policy),
        check_identity(seed, IdentityId::UnitCircleBeta, 1, Regime::StrictlyElliptic, ID_DRAWS_1D, policy),
        check_identity(seed, IdentityId::HyperbolicNr, 1, Regime::StrictlyElliptic, ID_DRAWS_1D, policy),
        check_identity(seed, IdentityId::HyperbolicAw, 1, Regime::StrictlyElliptic, ID_DRAWS_1D, policy),
    ];
    for b in [RatioBuilder::Theta, RatioBuilder::Gamma, RatioBuilder::ModifiedGamma] {
        out.push(check_ellipticity(seed, b, ID_DRAWS_1D, 1e-10, policy));
    }
    out.push(check_omega1_control(seed, ID_DRAWS_1D, 1e-3, policy));
    out
}

fn identities_2d_battery(seed: u64, policy: &PrecisionPolicy) -> Vec<CaseSummary> {
    vec![
        check_identity(seed, IdentityId::MultipleElliptic, 2, Regime::StrictlyElliptic, ID_DRAWS_2D, policy),
        check_identity(seed, IdentityId::MultipleModified, 2, Regime::UnitCircle, ID_DRAWS_2D, policy),
        check_identity(seed, IdentityId::HyperbolicNr, 2, Regime::StrictlyElliptic, ID_DRAWS_2D, policy),
        check_identity(seed, IdentityId::HyperbolicAw, 2, Regime::StrictlyElliptic, ID_DRAWS_2D, policy),
    ]
}

fn rho_battery(seed: u64) -> Vec<CaseSummary> {
    let mut out = Vec::new();
    for n in 1..=4 {
        out.push(check_rho(seed, n, false, RHO_DRAWS, 1e-11));
        out.push(check_rho(seed, n, true, RHO_DRAWS, 1e-11));
    }
    out
}

/// Runs a battery. Every case gets its own random stream derived from
/// `seed`, so adding or removing cases does not perturb the others.
pub fn run_suite(suite: SuiteName, seed: u64, policy: &PrecisionPolicy) -> SuiteSummary {
    let start = Instant::now();
    let cases = match suite {
        SuiteName::Functions => functions_battery(seed, policy),
        SuiteName::Identities1d => identities_1d_battery(seed, policy),
        SuiteName::Identities2d => identities_2d_battery(seed, policy),
        SuiteName::Rho => rho_battery(seed),
        SuiteName::All => {
            let mut v = functions_battery(seed, policy);
            v.extend(identities_1d_battery(seed, policy));
            v.extend(identities_2d_battery(seed, policy));
            v.extend(rho_battery(seed));
            v
        }
    };
    let cases_passed = cases.iter().filter(|c| c.passed).count();
    let cases_failed = cases.len() - cases_passed;
    SuiteSummary {
        schema: "1",
        suite,
        seed,
        cases,
        cases_passed,
        cases_failed,
        passed: cases_failed == 0,
        wall_time_s: start.elapsed().as_secs_f64(),
    }
}
