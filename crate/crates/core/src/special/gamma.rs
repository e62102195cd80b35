//! Gamma function on the complex plane.
//!
//! Lanczos approximation (g = 671/128, 14 terms) on `Re z >= 1/2`, with the
//! reflection formula covering the left half-plane. The log form is used
//! internally so that `|Γ(1/2 + it)| ~ e^{-π|t|/2}` never underflows before
//! the final exponentiation.

use num_complex::Complex64;
use std::f64::consts::PI;

use crate::error::{Error, Result};

const LANCZOS_G: f64 = 5.242_187_5;
const LANCZOS_C0: f64 = 0.999_999_999_999_997_1;
const LANCZOS_COEFFS: [f64; 14] = [
    57.156_235_665_862_923_5,
    -59.597_960_355_475_491_2,
    14.136_097_974_741_747_1,
    -0.491_913_816_097_620_199,
    0.339_946_499_848_118_887e-4,
    0.465_236_289_270_485_756e-4,
    -0.983_744_753_048_795_646e-4,
    0.158_088_703_224_912_494e-3,
    -0.210_264_441_724_104_883e-3,
    0.217_439_618_115_212_643e-3,
    -0.164_318_106_536_763_890e-3,
    0.844_182_239_838_527_433e-4,
    -0.261_908_384_015_814_087e-4,
    0.368_991_826_595_316_234e-5,
];
const SQRT_2PI: f64 = 2.506_628_274_631_000_5;
const POLE_TOL: f64 = 1e-12;

fn lanczos_ln_gamma(z: Complex64) -> Complex64 {
    let tmp = z + LANCZOS_G;
    let head = (z + 0.5) * tmp.ln() - tmp;
    let mut ser = Complex64::new(LANCZOS_C0, 0.0);
    let mut y = z;
    for c in LANCZOS_COEFFS {
        y += 1.0;
        ser += c / y;
    }
    head + (SQRT_2PI * ser / z).ln()
}

fn check_pole(z: Complex64) -> Result<()> {
    if z.re <= POLE_TOL && z.im.abs() < POLE_TOL && (z.re - z.re.round()).abs() < POLE_TOL {
        return Err(Error::PoleProximity(format!("{z}")));
    }
    Ok(())
}

/// `ln Γ(z)` on some branch (the imaginary part is only meaningful mod 2π).
pub fn ln_gamma_complex(z: Complex64) -> Result<Complex64> {
    check_pole(z)?;
    if z.re >= 0.5 {
        Ok(lanczos_ln_gamma(z))
    } else {
        let s = (z * PI).sin();
        Ok(Complex64::new(PI.ln(), 0.0) - s.ln() - lanczos_ln_gamma(1.0 - z))
    }
}

/// Γ(z) for complex `z`, erroring within 1e-12 of a non-positive integer.
pub fn complex_gamma(z: Complex64) -> Result<Complex64> {
    Ok(ln_gamma_complex(z)?.exp())
}

/// Real Γ(x). Returns NaN at the poles.
pub fn gamma(x: f64) -> f64 {
    match complex_gamma(Complex64::new(x, 0.0)) {
        Ok(v) => v.re,
        Err(_) => f64::NAN,
    }
}

/// `ln Γ(x)` for `x > 0`.
pub fn ln_gamma(x: f64) -> f64 {
    debug_assert!(x > 0.0);
    lanczos_ln_gamma(Complex64::new(x, 0.0)).re
}
