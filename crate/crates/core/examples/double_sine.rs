//! The double sine function `S(u; ω₁, ω₂)` through its three evaluation
//! routes, and the limit that connects it to the modified elliptic gamma.
//!
//! `cargo run --example double_sine`

use ellbeta::cplx::{e2pi, rel_diff};
use ellbeta::gammas::{
    double_sine, double_sine_integral_form, double_sine_limit_check, double_sine_modular_form,
    double_sine_product_form, QuasiPeriods, SinePair,
};
use ellbeta::qseries::PrecisionPolicy;
use ellbeta::Complex64;

fn main() -> ellbeta::Result<()> {
    let policy = PrecisionPolicy::default();
    let pair = SinePair::new(Complex64::new(1.0, 0.4), Complex64::new(1.0, 0.0))?;
    let u = Complex64::new(0.6, 0.1);

    let prod = double_sine_product_form(u, &pair, &policy)?;
    let modular = double_sine_modular_form(u, &pair, &policy)?;
    let integral = double_sine_integral_form(u, &pair, &policy)?;
    println!("S(u) = {}  ({:?})", double_sine(u, &pair, &policy)?, pair.regime());
    println!("product vs modular:  {:.2e}", rel_diff(prod, modular));
    println!("product vs integral: {:.2e}", rel_diff(prod, integral));

    // S(u + ω₁) (1 - e^{2πiu/ω₂}) = S(u)
    let shifted = double_sine(u + pair.omega1(), &pair, &policy)? * (1.0 - e2pi(u / pair.omega2()));
    println!("omega1 shift residual: {:.2e}", rel_diff(shifted, prod));

    // real ratio ω₁/ω₂: only the integral route applies
    let real = SinePair::new(Complex64::new(1.0, 0.0), Complex64::new(2f64.sqrt(), 0.0))?;
    println!("S(u) at w1/w2 = 1/sqrt2: {}", double_sine(u, &real, &policy)?);

    // residual of the displayed limit, shrinking like 1/t
    for t in [10.0, 20.0, 40.0, 80.0] {
        let w = QuasiPeriods::with_scaled_third(Complex64::new(1.0, 0.4), Complex64::new(1.0, 0.0), t)?;
        println!("t = {t:>4}: limit residual {:.3e}", double_sine_limit_check(Complex64::new(0.3, 0.1), &w, t, &policy)?);
    }
    Ok(())
}
