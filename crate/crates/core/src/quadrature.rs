//! Adaptive Gauss–Kronrod quadrature of complex integrands along the three
//! contour shapes used by the beta integrals: straight segments, the
//! positively oriented unit circle and truncated lines `d·[-X, X]`.
//!
//! Each panel is integrated with the 21-point Kronrod rule; the embedded
//! 10-point Gauss rule supplies the error estimate `|K21 - G10|`. The panel
//! with the largest estimate is bisected until the summed estimate drops
//! below `quad_rel_tol · |I|` (or a roundoff floor proportional to `∫|f|`).

use std::cmp::Ordering;
use std::collections::BinaryHeap;
use std::f64::consts::PI;
use std::sync::atomic::{AtomicUsize, Ordering as AtomicOrdering};
use std::sync::Mutex;

use num_complex::Complex64;
use rayon::prelude::*;
use serde::Serialize;

use crate::cplx::{is_finite, I};
use crate::error::{Error, Result};
use crate::qseries::PrecisionPolicy;

// Kronrod abscissae on [0, 1): odd indices are the Gauss-10 nodes.
const XGK: [f64; 11] = [
    0.995657163025808080735527280689003,
    0.973906528517171720077964012084452,
    0.930157491355708226001207180059508,
    0.865063366688984510732096688423493,
    0.780817726586416897063717578345042,
    0.679409568299024406234327365114874,
    0.562757134668604683339000099272694,
    0.433395394129247190799265943165784,
    0.294392862701460198131126603103866,
    0.148874338981631210884826001129720,
    0.000000000000000000000000000000000,
];
const WGK: [f64; 11] = [
    0.011694638867371874278064396062192,
    0.032558162307964727478818972459390,
    0.054755896574351996031381300244580,
    0.075039674810919952767043140916190,
    0.093125454583697605535065465083366,
    0.109387158802297641899210590325805,
    0.123491976262065851077208965227656,
    0.134709217311473325928054001771707,
    0.142775938577060080797094273138717,
    0.147739104901338491374841515972068,
    0.149445554002916905664936468389821,
];
const WG: [f64; 5] = [
    0.066671344308688137593568809893332,
    0.149451349150580593145776339657697,
    0.219086362515982043995534934228163,
    0.269266719309996355091226921569469,
    0.295524224714752870173892994651338,
];

/// Integration path. Every contour is parametrised by `s ∈ [0, 1]`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Contour {
    /// Straight segment from `a` to `b`.
    Segment { a: Complex64, b: Complex64 },
    /// Positively oriented unit circle `z = e^{2πis}`.
    UnitCircle,
    /// `u = direction · x` for `x ∈ [-halfwidth, halfwidth]`.
    Line { direction: Complex64, halfwidth: f64 },
}

impl Contour {
    pub fn segment(a: Complex64, b: Complex64) -> Result<Self> {
        if a == b {
            return Err(Error::Domain("segment endpoints must be distinct".into()));
        }
        Ok(Contour::Segment { a, b })
    }

    pub fn unit_circle() -> Self {
        Contour::UnitCircle
    }

    pub fn line(direction: Complex64, halfwidth: f64) -> Result<Self> {
        if !(halfwidth > 0.0) || !halfwidth.is_finite() {
            return Err(Error::Domain("line halfwidth must be positive".into()));
        }
        if direction.norm() == 0.0 {
            return Err(Error::Domain("line direction must be nonzero".into()));
        }
        Ok(Contour::Line { direction, halfwidth })
    }

    /// Point on the contour and `dz/ds` at parameter `s`.
    pub fn point(&self, s: f64) -> (Complex64, Complex64) {
        match *self {
            Contour::Segment { a, b } => (a + (b - a) * s, b - a),
            Contour::UnitCircle => {
                let z = Complex64::from_polar(1.0, 2.0 * PI * s);
                (z, 2.0 * PI * I * z)
            }
            Contour::Line { direction, halfwidth } => {
                let x = halfwidth * (2.0 * s - 1.0);
                (direction * x, direction * (2.0 * halfwidth))
            }
        }
    }

    fn initial_panels(&self) -> usize {
        match self {
            Contour::Segment { .. } => 4,
            Contour::UnitCircle => 8,
            Contour::Line { .. } => 8,
        }
    }
}

/// Outcome of an adaptive integration.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct QuadResult {
    pub value: Complex64,
    pub error_estimate: f64,
    pub panels_used: usize,
    pub evaluations: usize,
}

/// Knobs of the adaptive driver.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AdaptiveOptions {
    pub rel_tol: f64,
    pub abs_tol: f64,
    pub max_panels: usize,
    pub initial_panels: usize,
    /// Evaluate the 21 nodes of a panel on the rayon pool.
    pub parallel: bool,
    /// Number of pre-scan samples per initial panel; zero disables it.
    pub prescan_per_panel: usize,
}

impl AdaptiveOptions {
    pub fn from_policy(policy: &PrecisionPolicy) -> Self {
        AdaptiveOptions {
            rel_tol: policy.quad_rel_tol,
            abs_tol: 0.0,
            max_panels: policy.quad_max_panels,
            initial_panels: 8,
            parallel: false,
            prescan_per_panel: 64,
        }
    }
}

#[derive(Debug, Clone, Copy)]
struct Panel {
    a: f64,
    b: f64,
    value: Complex64,
    err: f64,
    resabs: f64,
}

impl PartialEq for Panel {
    fn eq(&self, other: &Self) -> bool {
        self.err.total_cmp(&other.err) == Ordering::Equal
    }
}
impl Eq for Panel {}
impl PartialOrd for Panel {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}
impl Ord for Panel {
    fn cmp(&self, other: &Self) -> Ordering {
        self.err.total_cmp(&other.err)
    }
}

fn check_value(v: Complex64, t: f64) -> Result<Complex64> {
    if is_finite(v) {
        Ok(v)
    } else {
        Err(Error::PoleOnContour(format!("parameter {t}: integrand is {v}")))
    }
}

fn map_pole(e: Error, t: f64) -> Error {
    match e {
        Error::Pole(msg) => Error::PoleOnContour(format!("parameter {t}: {msg}")),
        Error::Zero(msg) => Error::PoleOnContour(format!("parameter {t}: {msg}")),
        other => other,
    }
}

fn gk21<F>(h: &F, a: f64, b: f64, parallel: bool) -> Result<Panel>
where
    F: Fn(f64) -> Result<Complex64> + Sync,
{
    let center = 0.5 * (a + b);
    let half = 0.5 * (b - a);
    let nodes: Vec<f64> = (0..21)
        .map(|k| match k {
            10 => center,
            k if k < 10 => center - half * XGK[k],
            k => center + half * XGK[20 - k],
        })
        .collect();
    let eval = |&t: &f64| -> Result<Complex64> { h(t).map_err(|e| map_pole(e, t)).and_then(|v| check_value(v, t)) };
    let vals: Vec<Complex64> = if parallel {
        nodes.par_iter().map(eval).collect::<Result<_>>()?
    } else {
        nodes.iter().map(eval).collect::<Result<_>>()?
    };
    let mut kron = vals[10] * WGK[10];
    let mut abs = vals[10].norm() * WGK[10];
    let mut gauss = Complex64::new(0.0, 0.0);
    for k in 0..10 {
        let pair = vals[k] + vals[20 - k];
        kron += pair * WGK[k];
        abs += (vals[k].norm() + vals[20 - k].norm()) * WGK[k];
        if k % 2 == 1 {
            gauss += pair * WG[k / 2];
        }
    }
    let value = kron * half;
    let err = ((kron - gauss) * half).norm();
    Ok(Panel { a, b, value, err, resabs: abs * half.abs() })
}

/// Adaptive integration of `h` over the real interval `[a, b]`.
pub fn adaptive<F>(h: &F, a: f64, b: f64, opts: &AdaptiveOptions) -> Result<QuadResult>
where
    F: Fn(f64) -> Result<Complex64> + Sync,
{
    if !(b > a) {
        return Err(Error::Domain("integration interval must satisfy a < b".into()));
    }
    let n0 = opts.initial_panels.max(1);
    if opts.prescan_per_panel > 0 {
        let m = n0 * opts.prescan_per_panel;
        let scan = |k: usize| -> Result<()> {
            let t = a + (b - a) * (k as f64 + 0.5) / m as f64;
            h(t).map_err(|e| map_pole(e, t)).and_then(|v| check_value(v, t)).map(|_| ())
        };
        if opts.parallel {
            (0..m).into_par_iter().try_for_each(scan)?;
        } else {
            (0..m).try_for_each(scan)?;
        }
    }
    let mut heap = BinaryHeap::new();
    let mut evaluations = 0usize;
    let width = (b - a) / n0 as f64;
    for k in 0..n0 {
        let lo = a + width * k as f64;
        let hi = if k + 1 == n0 { b } else { lo + width };
        heap.push(gk21(h, lo, hi, opts.parallel)?);
        evaluations += 21;
    }
    loop {
        let (mut total, mut err, mut resabs) = (Complex64::new(0.0, 0.0), 0.0, 0.0);
        for p in heap.iter() {
            total += p.value;
            err += p.err;
            resabs += p.resabs;
        }
        let tol = (opts.rel_tol * total.norm()).max(opts.abs_tol).max(50.0 * f64::EPSILON * resabs);
        let result = QuadResult { value: total, error_estimate: err, panels_used: heap.len(), evaluations };
        if err <= tol {
            return Ok(result);
        }
        if heap.len() >= opts.max_panels {
            return Err(Error::ToleranceNotMet(result));
        }
        let worst = heap.pop().expect("heap is never empty");
        let mid = 0.5 * (worst.a + worst.b);
        if !(mid > worst.a && mid < worst.b) {
            // the panel cannot be split further in double precision
            heap.push(Panel { err: 0.0, ..worst });
            continue;
        }
        heap.push(gk21(h, worst.a, mid, opts.parallel)?);
        heap.push(gk21(h, mid, worst.b, opts.parallel)?);
        evaluations += 42;
    }
}

/// `∫_C f(z) dz` along `contour`.
pub fn integrate<F>(f: F, contour: &Contour, policy: &PrecisionPolicy) -> Result<QuadResult>
where
    F: Fn(Complex64) -> Result<Complex64> + Sync,
{
    let mut opts = AdaptiveOptions::from_policy(policy);
    opts.initial_panels = contour.initial_panels();
    integrate_with(f, contour, &opts)
}

/// [`integrate`] with explicit driver options.
pub fn integrate_with<F>(f: F, contour: &Contour, opts: &AdaptiveOptions) -> Result<QuadResult>
where
    F: Fn(Complex64) -> Result<Complex64> + Sync,
{
    let c = *contour;
    let h = move |s: f64| -> Result<Complex64> {
        let (z, dz) = c.point(s);
        Ok(f(z)? * dz)
    };
    adaptive(&h, 0.0, 1.0, opts)
}

/// `∫_C ∫_C f(z₁, z₂) dz₂ dz₁` over the product contour by nested adaptive
/// integration. The inner integrals run at a tenth of the outer tolerance;
/// outer nodes are evaluated in parallel.
pub fn integrate2<F>(f: F, contour: &Contour, policy: &PrecisionPolicy) -> Result<QuadResult>
where
    F: Fn(Complex64, Complex64) -> Result<Complex64> + Sync,
{
    let c = *contour;
    let n0 = c.initial_panels();
    prescan2(&f, &c, 48)?;
    let inner_opts = AdaptiveOptions {
        rel_tol: policy.quad_rel_tol * 0.1,
        abs_tol: 0.0,
        max_panels: policy.quad_max_panels,
        initial_panels: n0,
        parallel: false,
        prescan_per_panel: 0,
    };
    let evaluations = AtomicUsize::new(0);
    let inner_panels = AtomicUsize::new(0);
    let inner_err = Mutex::new(0.0f64);
    let outer = |s1: f64| -> Result<Complex64> {
        let (z1, dz1) = c.point(s1);
        let g = |s2: f64| -> Result<Complex64> {
            let (z2, dz2) = c.point(s2);
            Ok(f(z1, z2)? * dz2)
        };
        let r = adaptive(&g, 0.0, 1.0, &inner_opts)?;
        evaluations.fetch_add(r.evaluations, AtomicOrdering::Relaxed);
        inner_panels.fetch_add(r.panels_used, AtomicOrdering::Relaxed);
        let rel = r.error_estimate / r.value.norm().max(f64::MIN_POSITIVE);
        let mut worst = inner_err.lock().expect("inner error lock");
        *worst = worst.max(rel);
        Ok(r.value * dz1)
    };
    let outer_opts = AdaptiveOptions {
        rel_tol: policy.quad_rel_tol,
        abs_tol: 0.0,
        max_panels: policy.quad_max_panels,
        initial_panels: n0,
        parallel: true,
        prescan_per_panel: 0,
    };
    let mut r = adaptive(&outer, 0.0, 1.0, &outer_opts)?;
    let inner_rel = *inner_err.lock().expect("inner error lock");
    r.error_estimate += inner_rel * r.value.norm();
    r.evaluations = evaluations.load(AtomicOrdering::Relaxed);
    r.panels_used += inner_panels.load(AtomicOrdering::Relaxed);
    Ok(r)
}

fn prescan2<F>(f: &F, c: &Contour, m: usize) -> Result<()>
where
    F: Fn(Complex64, Complex64) -> Result<Complex64> + Sync,
{
    (0..m * m).into_par_iter().try_for_each(|k| {
        let s1 = ((k / m) as f64 + 0.5) / m as f64;
        let s2 = ((k % m) as f64 + 0.5) / m as f64;
        let (z1, _) = c.point(s1);
        let (z2, _) = c.point(s2);
        let v = f(z1, z2).map_err(|e| map_pole(e, s1))?;
        check_value(v, s1).map(|_| ())
    })
}

/// Half-width `X` at which an integrand decaying like `e^{-rate·|x|}` has
/// neglected tails below `quad_rel_tol`, with one extra decade of margin:
/// `X = (ln(1/tol) + ln 10) / rate`.
pub fn line_truncation(decay_rate: f64, policy: &PrecisionPolicy) -> Result<f64> {
    if !(decay_rate > 0.0) || !decay_rate.is_finite() {
        return Err(Error::Domain(format!(
            "decay rate {decay_rate} is not positive: the line integral may diverge"
        )));
    }
    Ok(((1.0 / policy.quad_rel_tol).ln() + 10f64.ln()) / decay_rate)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn pol() -> PrecisionPolicy {
        PrecisionPolicy { quad_rel_tol: 1e-13, ..PrecisionPolicy::default() }
    }

    #[test]
    fn single_panel_is_exact_on_polynomials_to_design_degree() {
        // K21 integrates degree <= 31 exactly; G10 degree <= 19
        for deg in 0..=31u32 {
            let h = |t: f64| Ok(c(t.powi(deg as i32), 0.0));
            let p = gk21(&h, -1.0, 1.0, false).unwrap();
            let want = if deg % 2 == 0 { 2.0 / (deg as f64 + 1.0) } else { 0.0 };
            assert!((p.value.re - want).abs() < 1e-14, "degree {deg}: {}", p.value.re);
            if deg <= 19 {
                assert!(p.err < 1e-14, "gauss part degree {deg}");
            }
        }
    }

    #[test]
    fn cauchy_integral_on_circle() {
        let r = integrate(|z| Ok(Complex64::new(1.0, 0.0) / z), &Contour::unit_circle(), &pol()).unwrap();
        assert!((r.value - c(0.0, 2.0 * PI)).norm() < 1e-12);
        for k in [-5i32, -3, -2, 0, 1, 2, 4, 7] {
            let r = integrate(move |z| Ok(z.powi(k)), &Contour::unit_circle(), &pol()).unwrap();
            assert!(r.value.norm() < 1e-12, "z^{k}: {}", r.value);
        }
    }

    #[test]
    fn gaussian_on_segment() {
        let seg = Contour::segment(c(-5.0, 0.0), c(5.0, 0.0)).unwrap();
        let r = integrate(|u| Ok((-u * u).exp()), &seg, &pol()).unwrap();
        // erf(5) = 1 - 1.5e-12 so the truncated integral is √π·erf(5)
        let want = PI.sqrt() * (1.0 - 1.5374597944280348e-12);
        assert!((r.value.re - want).abs() < 1e-12, "{}", r.value.re - want);
        assert!(r.value.im.abs() < 1e-14);
    }

    #[test]
    fn reversal_is_antisymmetric() {
        let f = |u: Complex64| Ok((u * c(0.3, 1.1)).sin() / (u * u + 4.0));
        let ab = Contour::segment(c(-1.0, 0.2), c(2.0, -0.5)).unwrap();
        let ba = Contour::segment(c(2.0, -0.5), c(-1.0, 0.2)).unwrap();
        let x = integrate(f, &ab, &pol()).unwrap();
        let y = integrate(f, &ba, &pol()).unwrap();
        assert!((x.value + y.value).norm() < 1e-13 * x.value.norm().max(1.0));
    }

    #[test]
    fn near_pole_needs_more_panels_and_reports_honestly() {
        let seg = Contour::segment(c(-1.0, 0.0), c(1.0, 0.0)).unwrap();
        let smooth = integrate(|u| Ok(u.exp()), &seg, &pol()).unwrap();
        let z0 = c(0.2, 0.01);
        let r = integrate(move |u| Ok(Complex64::new(1.0, 0.0) / (u - z0)), &seg, &pol()).unwrap();
        assert!(r.panels_used > smooth.panels_used);
        let want = ((c(1.0, 0.0) - z0) / (c(-1.0, 0.0) - z0)).ln();
        let true_err = (r.value - want).norm();
        assert!(true_err <= r.error_estimate.max(1e-8 * want.norm()), "{true_err} vs {}", r.error_estimate);
    }

    #[test]
    fn pole_on_contour_is_detected_by_prescan() {
        let f = |z: Complex64| {
            if (z - c(0.0, 1.0)).norm() < 1e-2 {
                Err(Error::Pole("simulated".into()))
            } else {
                Ok(z)
            }
        };
        let r = integrate(f, &Contour::unit_circle(), &pol());
        assert!(matches!(r, Err(Error::PoleOnContour(_))), "{r:?}");
    }

    #[test]
    fn tolerance_not_met_carries_estimate() {
        let tight = PrecisionPolicy { quad_max_panels: 8, quad_rel_tol: 1e-15, ..pol() };
        let seg = Contour::segment(c(0.0, 0.0), c(1.0, 0.0)).unwrap();
        let r = integrate(|u| Ok(u.sqrt() * (30.0 * u).sin()), &seg, &tight);
        match r {
            Err(Error::ToleranceNotMet(best)) => assert!(best.value.norm() > 0.0),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn double_integrals() {
        let sq = Contour::segment(c(0.0, 0.0), c(1.0, 0.0)).unwrap();
        let p = PrecisionPolicy { quad_rel_tol: 1e-12, ..pol() };
        let r = integrate2(|_, _| Ok(c(1.0, 0.0)), &sq, &p).unwrap();
        assert!((r.value - c(1.0, 0.0)).norm() < 1e-13);
        let g = |u: Complex64| (u * c(1.0, 0.5)).cos() * (-u).exp();
        let one = integrate(|u| Ok(g(u)), &sq, &p).unwrap().value;
        let two = integrate2(|u, v| Ok(g(u) * g(v)), &sq, &p).unwrap().value;
        assert!((two - one * one).norm() < 1e-10);
    }

    #[test]
    fn truncation_width() {
        let p = PrecisionPolicy { quad_rel_tol: 1e-8, ..pol() };
        let x = line_truncation(2.0 * PI * 0.3, &p).unwrap();
        let base = (1e8f64).ln() / (2.0 * PI * 0.3);
        assert!((base - 9.77).abs() < 0.01);
        assert!(x > base && x < base + 2.0);
        // the neglected tail e^{-rate X}/rate is below the tolerance
        assert!((-2.0 * PI * 0.3 * x).exp() < 1e-8);
        let x2 = line_truncation(2.0 * 2.0 * PI * 0.3, &p).unwrap();
        assert!((x2 - x / 2.0).abs() < 1e-12);
        assert!(line_truncation(0.0, &p).is_err());
        assert!(line_truncation(-1.0, &p).is_err());
    }
}
