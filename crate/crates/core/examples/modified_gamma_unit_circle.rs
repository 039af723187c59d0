//! The modified elliptic gamma function stays well defined when `|q| = 1`.
//! With `ω₂/ω₁` irrational, the ordinary `Γ(z;q,p)` has no product formula,
//! but `G(u;ω)` is still finite and obeys the same equations.
//!
//! `cargo run --example modified_gamma_unit_circle`

use ellbeta::cplx::{rel_diff, I};
use ellbeta::gammas::{b22, modified_gamma, modified_gamma_product, QuasiPeriods, Regime};
use ellbeta::qseries::PrecisionPolicy;
use ellbeta::Complex64;

fn main() -> ellbeta::Result<()> {
    let policy = PrecisionPolicy::default();
    let omegas = QuasiPeriods::new(Complex64::new(1.0, 0.0), Complex64::new(2f64.sqrt(), 0.0), I)?;
    assert_eq!(omegas.regime(), Regime::UnitCircle);
    println!("|q| = {:.15}", omegas.q().norm());

    let u = Complex64::new(0.4, 0.2);
    let g = modified_gamma(u, &omegas, &policy)?;
    println!("G(u) = {g}");

    // G(u) G(ω₁+ω₂+ω₃-u) = 1, so G is ±1 at the half sum
    let mirror = modified_gamma(omegas.omegas().iter().sum::<Complex64>() - u, &omegas, &policy)?;
    println!("G(u) G(sum - u) = {}", g * mirror);
    println!("G(half sum)     = {}", modified_gamma(omegas.half_sum(), &omegas, &policy)?);
    println!("B22(u)          = {}", b22(u, &omegas));

    // in the strictly elliptic regime the product and continued forms agree
    let strict = QuasiPeriods::new(Complex64::new(1.0, 0.3), Complex64::new(1.0, 0.0), Complex64::new(0.0, 2.0))?;
    let a = modified_gamma(u, &strict, &policy)?;
    let b = modified_gamma_product(u, &strict, &policy)?;
    println!("strict regime: product vs continuation {:.2e}", rel_diff(a, b));
    Ok(())
}
