//! The finite sign-flip sums `ρ` and `ρ̃` and their product evaluations.
//!
//! Both are instances of one sum: for `a = (a₀, a₁, a₂)` and
//! `c = t^{N-1} a₀a₁a₂`,
//! `Σ_ν ∏_{j<k} (1 - t w_j w_k)/(1 - w_j w_k) ∏_j (1 - c/w_j) ∏_n (1 - a_n w_j) / (1 - w_j²)`
//! with `w_j = z_j^{ν_j}` equals `∏_j (1 - t^{j-1}a₀a₁)(1 - t^{j-1}a₀a₂)(1 - t^{j-1}a₁a₂)`.

use num_complex::Complex64;

use crate::cplx::ONE;
use crate::error::{Error, Result};

fn sign_flip_sum(z: &[Complex64], t: Complex64, a: [Complex64; 3], c: Complex64) -> Result<Complex64> {
    let n = z.len();
    if n == 0 {
        return Err(Error::Domain("at least one variable is required".into()));
    }
    if n > 20 {
        return Err(Error::Domain("sign-flip sums are limited to N <= 20".into()));
    }
    let mut total = Complex64::new(0.0, 0.0);
    let mut w = vec![ONE; n];
    for mask in 0u32..(1 << n) {
        for (j, zj) in z.iter().enumerate() {
            w[j] = if mask >> j & 1 == 0 { *zj } else { ONE / zj };
        }
        let mut term = ONE;
        for j in 0..n {
            for k in j + 1..n {
                let d = ONE - w[j] * w[k];
                if d.norm() == 0.0 {
                    return Err(Error::Domain("vanishing denominator 1 - z_j z_k".into()));
                }
                term *= (ONE - t * w[j] * w[k]) / d;
            }
            let d = ONE - w[j] * w[j];
            if d.norm() == 0.0 {
                return Err(Error::Domain("vanishing denominator 1 - z_j^2".into()));
            }
            term *= (ONE - c / w[j]) * (ONE - a[0] * w[j]) * (ONE - a[1] * w[j]) * (ONE - a[2] * w[j]) / d;
        }
        total += term;
    }
    Ok(total)
}

fn closed(t: Complex64, a: [Complex64; 3], n: usize) -> Complex64 {
    let mut v = ONE;
    let mut tj = ONE;
    for _ in 0..n {
        v *= (ONE - tj * a[0] * a[1]) * (ONE - tj * a[0] * a[2]) * (ONE - tj * a[1] * a[2]);
        tj *= t;
    }
    v
}

/// Brute-force `ρ` for `N = z.len()` with parameters `t₀, t₁, t₂`.
pub fn rho_brute(z: &[Complex64], t: Complex64, t012: [Complex64; 3]) -> Result<Complex64> {
    let c = t.powi(z.len() as i32 - 1) * t012[0] * t012[1] * t012[2];
    sign_flip_sum(z, t, t012, c)
}

/// `∏_{j=1}^{N} (1 - t^{j-1}t₀t₁)(1 - t^{j-1}t₀t₂)(1 - t^{j-1}t₁t₂)`.
pub fn rho_closed(t: Complex64, t012: [Complex64; 3], n: usize) -> Complex64 {
    closed(t, t012, n)
}

fn tilde_params(n: usize, t: Complex64, tn: &[Complex64; 5], q: Complex64) -> [Complex64; 3] {
    let sq = q.sqrt();
    [tn[3] / sq, tn[4] / sq, t.powi(n as i32 - 1) * tn[0] * tn[1] * tn[2] * sq]
}

/// Brute-force `ρ̃`: the sum with `t₀, t₁, t₂` replaced by
/// `t₃q^{-1/2}, t₄q^{-1/2}, t^{N-1}t₀t₁t₂q^{1/2}` and `c = Bq^{-1/2}`.
/// The product evaluation requires `B = t^{2N-2} ∏ t_n`.
pub fn rho_tilde_brute(z: &[Complex64], t: Complex64, tn: &[Complex64; 5], b: Complex64, q: Complex64) -> Result<Complex64> {
    if q.norm() == 0.0 {
        return Err(Error::Domain("q must be nonzero".into()));
    }
    let a = tilde_params(z.len(), t, tn, q);
    sign_flip_sum(z, t, a, b / q.sqrt())
}

/// `∏_{j=1}^{N} (1 - t^{j-1}t₃t₄/q)(1 - t^{1-j}B/t₃)(1 - t^{1-j}B/t₄)`.
pub fn rho_tilde_closed(t: Complex64, tn: &[Complex64; 5], b: Complex64, q: Complex64, n: usize) -> Complex64 {
    let mut v = ONE;
    for j in 1..=n as i32 {
        v *= (ONE - t.powi(j - 1) * tn[3] * tn[4] / q)
            * (ONE - t.powi(1 - j) * b / tn[3])
            * (ONE - t.powi(1 - j) * b / tn[4]);
    }
    v
}

/// `∏_{j<k} (1 - z_j z_k)(1 - z_j/z_k)/z_j ∏_j (1 - z_j²)/z_j`; multiplying a
/// `ρ` summand sum by this gives a Laurent polynomial antisymmetric under
/// permutations and inversions of the `z_j`.
pub fn antisymmetrizing_factor(z: &[Complex64]) -> Complex64 {
    let mut v = ONE;
    for (j, zj) in z.iter().enumerate() {
        for zk in &z[j + 1..] {
            v *= (ONE - zj * zk) * (ONE - zj / zk) / zj;
        }
        v *= (ONE - zj * zj) / zj;
    }
    v
}
