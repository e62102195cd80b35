//! `∫_0^X e^{u/2} u^{α-1} du`, the kernel of the exact fractional integral
//! of a single lattice point's contribution.

use crate::error::{Error, Result};

/// `∫_0^X e^{u/2} u^{α-1} du` for `α ∈ (0, 1]`, `X >= 0`.
///
/// Expands `e^{u/2}` and integrates termwise:
/// `X^α Σ_k (X/2)^k / (k! (k + α))`. Every term is positive, so the sum
/// carries no cancellation for any `X`.
pub fn lower_incomplete_exp(alpha: f64, x: f64) -> Result<f64> {
    if !(alpha > 0.0 && alpha <= 1.0) {
        return Err(Error::InvalidInput(format!("order {alpha} outside (0, 1]")));
    }
    if x < 0.0 || !x.is_finite() {
        return Err(Error::InvalidInput(format!("upper limit {x} must be finite and >= 0")));
    }
    if x == 0.0 {
        return Ok(0.0);
    }
    Ok(x.powf(alpha) * positive_series(alpha, x))
}

pub(crate) fn positive_series(alpha: f64, x: f64) -> f64 {
    let half = 0.5 * x;
    let mut pow = 1.0;
    let mut sum = 1.0 / alpha;
    let mut k = 0.0;
    loop {
        k += 1.0;
        pow *= half / k;
        let term = pow / (k + alpha);
        sum += term;
        if term < 1e-17 * sum && k > half {
            return sum;
        }
    }
}
