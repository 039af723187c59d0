//! The beta integral built from the modified elliptic gamma function,
//! checked on the unit circle `|q| = 1` and in the strictly elliptic regime.
//!
//! `cargo run --release --example unit_circle_beta_integral`

use ellbeta::cplx::I;
use ellbeta::gammas::QuasiPeriods;
use ellbeta::identities::{kappa_form, relative_error, unit_circle_beta_sides, KappaForm, UnitCircleBetaParams};
use ellbeta::qseries::PrecisionPolicy;
use ellbeta::Complex64;

fn main() -> ellbeta::Result<()> {
    let policy = PrecisionPolicy::default();
    let g = [Complex64::new(0.3, 0.0); 5];

    let unit = QuasiPeriods::new(Complex64::new(1.0, 0.0), Complex64::new(2f64.sqrt(), 0.0), I)?;
    let strict = QuasiPeriods::new(Complex64::new(1.0, 0.3), Complex64::new(1.0, 0.0), Complex64::new(0.0, 2.0))?;

    for (label, omegas) in [("unit circle", unit), ("strictly elliptic", strict)] {
        let params = UnitCircleBetaParams::new(g, omegas)?;
        let sides = unit_circle_beta_sides(&params, &policy)?;
        println!(
            "{label:>17}: lhs {:.12} rhs {:.12} rel {:.2e}",
            sides.lhs,
            sides.rhs,
            relative_error(sides.lhs, sides.rhs)
        );
    }

    // the normalizing constant through its three expressions
    for form in [KappaForm::Direct, KappaForm::Intermediate, KappaForm::Modular] {
        println!("kappa {form:?}: {}", kappa_form(&strict, form, &policy)?);
    }
    Ok(())
}
