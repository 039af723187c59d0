//! Small complex-number helpers: reduced exponentials, parsing and JSON form.

use std::f64::consts::PI;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub const I: Complex64 = Complex64::new(0.0, 1.0);
pub const ONE: Complex64 = Complex64::new(1.0, 0.0);
pub const ZERO: Complex64 = Complex64::new(0.0, 0.0);

/// `exp(2πi w)` with the real part of `w` reduced modulo 1 first, so large
/// real arguments do not lose the phase to rounding.
pub fn e2pi(w: Complex64) -> Complex64 {
    let frac = w.re - w.re.round();
    Complex64::from_polar((-2.0 * PI * w.im).exp(), 2.0 * PI * frac)
}

/// `exp(πi w)`.
pub fn epi(w: Complex64) -> Complex64 {
    let frac = w.re - 2.0 * (w.re / 2.0).round();
    Complex64::from_polar((-PI * w.im).exp(), PI * frac)
}

pub fn is_finite(z: Complex64) -> bool {
    z.re.is_finite() && z.im.is_finite()
}

/// Relative distance `|a-b| / max(|a|,|b|)`; zero when both vanish.
pub fn rel_diff(a: Complex64, b: Complex64) -> f64 {
    let scale = a.norm().max(b.norm());
    if scale == 0.0 {
        0.0
    } else {
        (a - b).norm() / scale
    }
}

/// Parse a complex literal written as `a+bi` without spaces.
///
/// Accepted forms include `0.3`, `-2e-3`, `1.5i`, `-i`, `0.2+0.1i`,
/// `1-2.5e-1i` and `0+1i`.
pub fn parse_complex(s: &str) -> Result<Complex64> {
    let bad = || Error::Domain(format!("cannot parse complex number '{s}' (expected a+bi)"));
    let t = s.trim();
    if t.is_empty() {
        return Err(bad());
    }
    if let Some(body) = t.strip_suffix('i') {
        // find the split between real and imaginary parts: last +/- that is
        // not at position 0 and not part of an exponent
        let bytes = body.as_bytes();
        let mut split = None;
        for k in (1..bytes.len()).rev() {
            let c = bytes[k];
            if (c == b'+' || c == b'-') && !matches!(bytes[k - 1], b'e' | b'E') {
                split = Some(k);
                break;
            }
        }
        let (re_str, im_str) = match split {
            Some(k) => (&body[..k], &body[k..]),
            None => ("0", body),
        };
        let im = match im_str {
            "" | "+" => 1.0,
            "-" => -1.0,
            other => other.parse::<f64>().map_err(|_| bad())?,
        };
        let re = re_str.parse::<f64>().map_err(|_| bad())?;
        Ok(Complex64::new(re, im))
    } else {
        let re = t.parse::<f64>().map_err(|_| bad())?;
        Ok(Complex64::new(re, 0.0))
    }
}

/// Parse a comma separated list of complex literals.
pub fn parse_complex_list(s: &str) -> Result<Vec<Complex64>> {
    s.split(',').map(parse_complex).collect()
}

pub fn format_complex(z: Complex64) -> String {
    if z.im < 0.0 || (z.im == 0.0 && z.im.is_sign_negative()) {
        format!("{}-{}i", z.re, -z.im)
    } else {
        format!("{}+{}i", z.re, z.im)
    }
}

/// JSON shape `{ "re": .., "im": .. }` used in reports.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Cplx {
    pub re: f64,
    pub im: f64,
}

impl From<Complex64> for Cplx {
    fn from(z: Complex64) -> Self {
        Cplx { re: z.re, im: z.im }
    }
}

impl From<Cplx> for Complex64 {
    fn from(c: Cplx) -> Self {
        Complex64::new(c.re, c.im)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_all_literal_shapes() {
        let cases = [
            ("0.3", Complex64::new(0.3, 0.0)),
            ("-2e-3", Complex64::new(-2e-3, 0.0)),
            ("1.5i", Complex64::new(0.0, 1.5)),
            ("i", Complex64::new(0.0, 1.0)),
            ("-i", Complex64::new(0.0, -1.0)),
            ("0.2+0.1i", Complex64::new(0.2, 0.1)),
            ("1-2.5e-1i", Complex64::new(1.0, -0.25)),
            ("0+1i", Complex64::new(0.0, 1.0)),
            ("1e-3+2E+1i", Complex64::new(1e-3, 20.0)),
            ("-1-i", Complex64::new(-1.0, -1.0)),
        ];
        for (s, want) in cases {
            assert_eq!(parse_complex(s).unwrap(), want, "{s}");
        }
        assert!(parse_complex("abc").is_err());
        assert!(parse_complex("").is_err());
        assert!(parse_complex("1+").is_err());
    }

    #[test]
    fn format_roundtrips() {
        for z in [Complex64::new(0.25, -1.5), Complex64::new(-3.0, 0.0), Complex64::new(1e-9, 7.0)] {
            assert_eq!(parse_complex(&format_complex(z)).unwrap(), z);
        }
    }

    #[test]
    fn reduced_exponential_matches_direct() {
        for w in [Complex64::new(0.3, 0.2), Complex64::new(1234.56, -0.1), Complex64::new(-7.25, 1.0)] {
            let direct = (2.0 * PI * I * w).exp();
            assert!((e2pi(w) - direct).norm() < 1e-9 * direct.norm());
            let half = (PI * I * w).exp();
            assert!((epi(w) - half).norm() < 1e-9 * half.norm());
        }
    }
}
