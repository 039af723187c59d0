//! The elliptic beta integral: integrate over the unit circle and compare
//! with the product of elliptic gamma functions on the right-hand side.
//!
//! `cargo run --release --example elliptic_beta_integral`

use ellbeta::identities::{elliptic_beta_integrand, elliptic_beta_rhs, elliptic_beta_sides, relative_error, EllipticBetaParams};
use ellbeta::qseries::{Base, PrecisionPolicy};
use ellbeta::Complex64;

fn main() -> ellbeta::Result<()> {
    let policy = PrecisionPolicy::default();
    let t = [
        Complex64::new(0.8, 0.0),
        Complex64::new(0.75, 0.0),
        Complex64::new(0.7, 0.1),
        Complex64::new(0.65, 0.0),
        Complex64::new(0.78, 0.0),
    ];
    let params = EllipticBetaParams::new(t, Base::real(0.3)?, Base::real(0.2)?)?;
    println!("A = t0 t1 t2 t3 t4 = {}", params.a());

    let z = Complex64::from_polar(1.0, 0.7);
    println!("integrand at e^0.7i: {}", elliptic_beta_integrand(z, &params, &policy)?);

    let sides = elliptic_beta_sides(&params, &policy)?;
    println!("lhs = {}", sides.lhs);
    println!("rhs = {}", sides.rhs);
    println!("relative error {:.2e} after {} evaluations", relative_error(sides.lhs, sides.rhs), sides.quad.evaluations);

    // |A| <= |pq| leaves the admissible region
    let mut bad = params;
    bad.t = [Complex64::new(0.2, 0.0); 5];
    println!("|A| = 3.2e-4 < |pq|: {}", bad.validate().map_or_else(|e| e.to_string(), |_| "accepted".into()));
    println!("rhs alone: {}", elliptic_beta_rhs(&params, &policy)?);
    Ok(())
}
