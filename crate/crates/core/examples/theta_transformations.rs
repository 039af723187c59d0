//! Theta functions and their transformation laws.
//!
//! `cargo run --example theta_transformations`

use ellbeta::cplx::{epi, rel_diff, I};
use ellbeta::qseries::{eta_product, modular_eta_ratio, theta, theta1, theta1_series, Base, PrecisionPolicy};
use ellbeta::Complex64;

fn main() -> ellbeta::Result<()> {
    let policy = PrecisionPolicy::default();
    let p = Base::new(Complex64::new(0.25, 0.1))?;
    let z = Complex64::new(0.7, 0.4);

    // θ(pz; p) = θ(z⁻¹; p) = -z⁻¹ θ(z; p)
    let th = theta(z, p, &policy)?;
    let shifted = theta(p.value() * z, p, &policy)?;
    let inverted = theta(1.0 / z, p, &policy)?;
    println!("theta(z;p)            = {th}");
    println!("theta(pz;p) vs theta(1/z;p): {:.2e}", rel_diff(shifted, inverted));
    println!("theta(1/z;p) vs -theta/z:    {:.2e}", rel_diff(inverted, -th / z));

    // θ₁ from its product and from its Fourier series, then the modular law
    let tau = Complex64::new(0.15, 0.9);
    let u = Complex64::new(0.2, 0.1);
    let prod = theta1(u, tau, &policy)?;
    let series = theta1_series(u, tau, &policy)?;
    println!("theta1 product vs series:    {:.2e}", rel_diff(prod, series));

    let s = -1.0 / tau;
    let lhs = theta1(u / tau, s, &policy)?;
    let rhs = -I * (-I * tau).sqrt() * epi(u * u / tau) * prod;
    println!("theta1(u/tau; -1/tau) law:   {:.2e}", rel_diff(lhs, rhs));

    // η(-1/τ) = sqrt(-iτ) η(τ)
    let eta = eta_product(tau, &policy)?;
    let eta_s = eta_product(s, &policy)?;
    println!("eta modular law:             {:.2e}", rel_diff(eta_s, (-I * tau).sqrt() * eta));
    println!("(q~;q~)/(q;q) closed form   = {}", modular_eta_ratio(tau)?);
    Ok(())
}
