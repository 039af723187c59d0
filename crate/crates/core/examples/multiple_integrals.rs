//! Multiple beta integrals of type I. The modified-gamma version runs in
//! seconds; pass `--full` to also integrate the two-variable elliptic one,
//! which takes around half a minute in release mode.
//!
//! `cargo run --release --example multiple_integrals [-- --full]`

use ellbeta::cplx::I;
use ellbeta::gammas::QuasiPeriods;
use ellbeta::identities::{
    multiple_elliptic_sides, multiple_modified_sides, relative_error, IdentityParams, MultiEllipticParams,
    MultiModifiedParams,
};
use ellbeta::qseries::{Base, PrecisionPolicy};
use ellbeta::Complex64;

fn main() -> ellbeta::Result<()> {
    let policy = PrecisionPolicy::default();
    let full = std::env::args().any(|a| a == "--full");

    let omegas = QuasiPeriods::new(Complex64::new(1.0, 0.0), Complex64::new(2f64.sqrt(), 0.0), I)?;
    let modified = MultiModifiedParams::new(Complex64::new(0.1, 0.0), [Complex64::new(0.25, 0.0); 5], omegas, 2)?;
    // the two-variable quadrature runs at the looser tolerance the identity record asks for
    let quad = IdentityParams::MultipleModified(modified).quadrature_policy(&policy);
    let s = multiple_modified_sides(&modified, &quad)?;
    println!("modified, N=2: rel {:.2e} ({} evaluations)", relative_error(s.lhs, s.rhs), s.quad.evaluations);

    let t_n = [
        Complex64::new(0.8, 0.0),
        Complex64::new(0.75, 0.0),
        Complex64::new(0.7, 0.1),
        Complex64::new(0.65, 0.0),
        Complex64::new(0.78, 0.0),
    ];
    let ns: &[usize] = if full { &[1, 2] } else { &[1] };
    for &n in ns {
        let params = MultiEllipticParams::new(Complex64::new(0.6, 0.0), t_n, Base::real(0.3)?, Base::real(0.2)?, n)?;
        let quad = IdentityParams::MultipleElliptic(params).quadrature_policy(&policy);
        let s = multiple_elliptic_sides(&params, &quad)?;
        println!("elliptic, N={n}: B = {:.6}, rel {:.2e}", params.b(), relative_error(s.lhs, s.rhs));
    }
    Ok(())
}
