//! The adaptive Gauss-Kronrod driver on its own: segments, the unit circle,
//! straight lines through the origin and the nested two-variable rule.
//!
//! `cargo run --example contour_quadrature`

use ellbeta::cplx::{I, ONE};
use ellbeta::qseries::PrecisionPolicy;
use ellbeta::quadrature::{integrate, integrate2, line_truncation, Contour};
use ellbeta::Complex64;

fn main() -> ellbeta::Result<()> {
    let policy = PrecisionPolicy::default();

    // ∮ dz / z = 2πi
    let r = integrate(|z| Ok(ONE / z), &Contour::unit_circle(), &policy)?;
    println!("loop integral of 1/z: {} (err {:.1e}, {} panels)", r.value, r.error_estimate, r.panels_used);

    // ∫₀^{1+i} z² dz = (1+i)³/3
    let seg = Contour::segment(Complex64::new(0.0, 0.0), Complex64::new(1.0, 1.0))?;
    let r = integrate(|z| Ok(z * z), &seg, &policy)?;
    println!("segment integral of z^2: {} vs {}", r.value, Complex64::new(1.0, 1.0).powi(3) / 3.0);

    // a Gaussian on the imaginary axis, cut where the tail drops below tolerance
    // e^{-x²} falls off faster than e^{-|x|}, so rate one is a safe bound
    let x = line_truncation(1.0, &policy)?;
    let line = Contour::line(I, x)?;
    let r = integrate(|u| Ok((u * u).exp()), &line, &policy)?;
    println!("halfwidth {x:.1}: integral of exp(u^2) along iR = {} (expected i sqrt(pi) = {})", r.value, std::f64::consts::PI.sqrt());

    // ∮∮ f(z₁, z₂) dz₁dz₂ / (z₁z₂) is (2πi)² times the constant Laurent coefficient of f
    let r = integrate2(|a, b| Ok((ONE + a / b + b * b) / (a * b)), &Contour::unit_circle(), &policy)?;
    println!("double loop integral: {} (expected -4 pi^2)", r.value);
    Ok(())
}
