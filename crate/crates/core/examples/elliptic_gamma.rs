//! The elliptic gamma function: difference equations, reflection, and a
//! pole reported as an error rather than a huge number.
//!
//! `cargo run --example elliptic_gamma`

use ellbeta::cplx::rel_diff;
use ellbeta::gammas::{elliptic_gamma, elliptic_gamma_reflection_inverse, reciprocal_elliptic_gamma};
use ellbeta::qseries::{theta, Base, PrecisionPolicy};
use ellbeta::Complex64;

fn main() -> ellbeta::Result<()> {
    let policy = PrecisionPolicy::default();
    let q = Base::new(Complex64::new(0.3, 0.1))?;
    let p = Base::new(Complex64::new(0.2, -0.05))?;
    let z = Complex64::new(0.6, 0.3);

    let g = elliptic_gamma(z, q, p, &policy)?;
    println!("Gamma(z;q,p) = {g}");

    // Γ(qz) = θ(z;p) Γ(z) and Γ(pz) = θ(z;q) Γ(z)
    let gq = elliptic_gamma(q.value() * z, q, p, &policy)?;
    let gp = elliptic_gamma(p.value() * z, q, p, &policy)?;
    println!("q-shift residual: {:.2e}", rel_diff(gq, theta(z, p, &policy)? * g));
    println!("p-shift residual: {:.2e}", rel_diff(gp, theta(z, q, &policy)? * g));

    // Γ(z)Γ(pq/z) = 1 and the reflection inverse 1/(Γ(z)Γ(1/z))
    let pq = p.value() * q.value();
    let refl = g * elliptic_gamma(pq / z, q, p, &policy)?;
    println!("Gamma(z)Gamma(pq/z) = {refl}");
    let inv = elliptic_gamma_reflection_inverse(z, q, p, &policy)?;
    let direct = 1.0 / (g * elliptic_gamma(1.0 / z, q, p, &policy)?);
    println!("reflection inverse residual: {:.2e}", rel_diff(inv, direct));

    // z = 1 is a pole; the reciprocal is finite there
    match elliptic_gamma(Complex64::new(1.0, 0.0), q, p, &policy) {
        Ok(v) => println!("unexpected value at the pole: {v}"),
        Err(e) => println!("Gamma(1) -> {e}"),
    }
    println!("1/Gamma(1) = {}", reciprocal_elliptic_gamma(Complex64::new(1.0, 0.0), q, p, &policy)?);
    Ok(())
}
