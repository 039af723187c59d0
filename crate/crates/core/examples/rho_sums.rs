//! Finite sums over sign flips `z_j -> 1/z_j` that collapse to products
//! independent of `z`.
//!
//! `cargo run --example rho_sums`

use ellbeta::cplx::rel_diff;
use ellbeta::identities::{antisymmetrizing_factor, rho_brute, rho_closed, rho_tilde_brute, rho_tilde_closed};
use ellbeta::Complex64;

fn main() -> ellbeta::Result<()> {
    let t = Complex64::new(0.3, 0.1);
    let t012 = [Complex64::new(0.5, 0.2), Complex64::new(-0.4, 0.1), Complex64::new(0.35, -0.3)];

    for n in 1..=4 {
        let z: Vec<Complex64> = (0..n).map(|j| Complex64::from_polar(1.4 + 0.1 * j as f64, 0.5 + 1.3 * j as f64)).collect();
        let brute = rho_brute(&z, t, t012)?;
        println!("N={n}: {} terms, sum {brute:.12}, product residual {:.2e}", 1 << n, rel_diff(brute, rho_closed(t, t012, n)));
    }

    // the tilde variant with five t_n and B = t^{2N-2} t0 t1 t2 t3 t4
    let tn = [
        Complex64::new(0.5, 0.1),
        Complex64::new(0.4, -0.2),
        Complex64::new(-0.3, 0.2),
        Complex64::new(0.45, 0.0),
        Complex64::new(0.2, 0.35),
    ];
    let q = Complex64::new(0.25, 0.05);
    let b = tn.iter().product::<Complex64>() * t * t;
    let z = [Complex64::new(1.3, 0.4), Complex64::new(-0.9, 1.2)];
    let brute = rho_tilde_brute(&z, t, &tn, b, q)?;
    println!("tilde, N=2: residual {:.2e}", rel_diff(brute, rho_tilde_closed(t, &tn, b, q, 2)));
    println!("antisymmetrizing factor at z: {}", antisymmetrizing_factor(&z));
    Ok(())
}
