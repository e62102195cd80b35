//! Gauss hypergeometric function on `(-1, 0]`.

use num_complex::Complex64;

use crate::error::{Error, Result};

const MAX_TERMS: usize = 5000;

fn series(a: Complex64, b: Complex64, c: Complex64, x: f64) -> Result<Complex64> {
    let mut term = Complex64::new(1.0, 0.0);
    let mut sum = term;
    for n in 0..MAX_TERMS {
        let nf = n as f64;
        let denom = (c + nf) * (nf + 1.0);
        if denom.norm() == 0.0 {
            return Err(Error::PoleProximity(format!("c = {c} is a non-positive integer")));
        }
        term *= (a + nf) * (b + nf) / denom * x;
        sum += term;
        if term.norm() <= 1e-17 * sum.norm() {
            return Ok(sum);
        }
    }
    Err(Error::NonConvergence(format!("2F1 series at x = {x}")))
}

/// `₂F₁(a, b; c; x)` for real `x ∈ (-1, 0]`.
///
/// Direct power series for `x >= -1/2`; below that the Pfaff transformation
/// `F(a,b;c;x) = (1-x)^{-a} F(a, c-b; c; x/(x-1))` maps the argument into
/// `(0, 1/2)`.
pub fn gauss_2f1(a: Complex64, b: Complex64, c: Complex64, x: f64) -> Result<Complex64> {
    if !(x > -1.0 && x <= 0.0) {
        return Err(Error::ArgumentOutOfRange(format!("2F1 argument {x} outside (-1, 0]")));
    }
    if x >= -0.5 {
        series(a, b, c, x)
    } else {
        let pref = Complex64::new(1.0 - x, 0.0).powc(-a);
        Ok(pref * series(a, c - b, c, x / (x - 1.0))?)
    }
}
