//! Hyperbolic beta integrals on the line `iω₂ℝ`, built from the double sine.
//!
//! `cargo run --release --example hyperbolic_integrals`

use ellbeta::gammas::SinePair;
use ellbeta::identities::{decay_rate, hyperbolic_sides, relative_error, HyperbolicParams};
use ellbeta::qseries::PrecisionPolicy;
use ellbeta::Complex64;

fn r(x: f64) -> Complex64 {
    Complex64::new(x, 0.0)
}

fn main() -> ellbeta::Result<()> {
    let policy = PrecisionPolicy::default();
    let pair = SinePair::new(Complex64::new(1.0, 0.3), r(1.0))?;

    let cases = [
        ("Nassrallah-Rahman, N=1", HyperbolicParams::nassrallah_rahman(r(0.0), [r(0.35); 5], pair, 1)?),
        ("Askey-Wilson, N=1", HyperbolicParams::askey_wilson(r(0.0), [r(0.4); 4], pair, 1)?),
        ("Nassrallah-Rahman, N=2", HyperbolicParams::nassrallah_rahman(r(0.2), [r(0.25); 5], pair, 2)?),
    ];
    for (label, params) in cases {
        let quad = if params.n > 1 { policy.with_quad_rel_tol(1e-5) } else { policy };
        let s = hyperbolic_sides(&params, &quad)?;
        println!(
            "{label:>22}: decay {:.3}, rel {:.2e}, {} evaluations",
            decay_rate(&params),
            relative_error(s.lhs, s.rhs),
            s.quad.evaluations
        );
    }

    // the balancing condition on the g_n is checked before integrating
    let err = HyperbolicParams::nassrallah_rahman(r(0.3), [r(0.3); 5], pair, 2).unwrap_err();
    println!("g = g_n = 0.3 at N=2: {err}");
    Ok(())
}
