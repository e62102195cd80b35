//! Modified Bessel function of the second kind with purely imaginary order.
//!
//! `K_{it}(x) = ∫_0^∞ e^{-x cosh u} cos(tu) du`. On the real line this
//! integral cancels catastrophically when `x < t` (the integrand is O(1) while
//! the result is O(e^{-πt/2})), so the path is moved to the horizontal line
//! `Im u = θ`, where
//!
//! `K_{it}(x) = e^{-tθ} ∫_0^∞ e^{-x cosθ cosh v} cos(t v - x sinθ sinh v) dv`.
//!
//! For `x > t` the choice `sinθ = t/x` puts the saddle point at `v = 0`;
//! for `x <= t` the line is pushed to within `ε` of `π/2`, with `ε` small
//! enough that the remaining cancellation costs only a few bits. The
//! integrand is entire and decays doubly exponentially, so the trapezoidal
//! rule converges geometrically in the step size.

use std::f64::consts::{FRAC_PI_2, PI};

use crate::error::{Error, Result};

/// Value of `K_{it}(x)` together with an underflow flag.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BesselK {
    pub value: f64,
    /// Set when `|K_{it}(x)|` is below the smallest normal double and zero
    /// was returned instead.
    pub underflow: bool,
}

/// Natural log of the magnitude scale of `K_{it}(x)` (leading exponential
/// only, no algebraic prefactor).
pub fn log_scale(t: f64, x: f64) -> f64 {
    let t = t.abs();
    if x > t {
        let theta = (t / x).asin();
        -(t * theta + x * theta.cos())
    } else {
        -FRAC_PI_2 * t
    }
}

struct Contour {
    theta: f64,
    step: f64,
    nodes: usize,
}

fn contour(t: f64, x: f64, density: f64) -> Contour {
    let target = if x > t { (t / x).asin() } else { FRAC_PI_2 };
    let mut eps_lim = (12.0 / x).cbrt().min(FRAC_PI_2);
    if x < t {
        eps_lim = eps_lim.min(2.0 / (t - x));
    }
    let eps = (FRAC_PI_2 - target).max(eps_lim);
    let theta = FRAC_PI_2 - eps;
    let a = x * theta.cos();
    let h = (PI * eps / 45.0).min(2.0 * PI / (t + 26.0)).min(0.7 / a.sqrt()) / density;
    let vmax = (1.0 + 44.0 / a).acosh();
    Contour { theta, step: h, nodes: (vmax / h).ceil() as usize + 1 }
}

fn evaluate(t: f64, x: f64, density: f64) -> Result<BesselK> {
    if !(x > 0.0) || !x.is_finite() {
        return Err(Error::Domain(format!("K_(it)(x) needs x > 0, got x = {x}")));
    }
    let t = t.abs();
    if log_scale(t, x) < -700.0 {
        return Ok(BesselK { value: 0.0, underflow: true });
    }
    let c = contour(t, x, density);
    let (sin_t, cos_t) = c.theta.sin_cos();
    let a = x * cos_t;
    let b = x * sin_t;
    // Factor e^{-a} out of the sum to keep the terms O(1).
    let term = |v: f64| (-a * (v.cosh() - 1.0)).exp() * (t * v - b * v.sinh()).cos();
    let mut sum = 0.5 * term(0.0);
    for k in 1..c.nodes {
        sum += term(k as f64 * c.step);
    }
    let value = (-t * c.theta - a).exp() * c.step * sum;
    Ok(BesselK { value, underflow: value == 0.0 && sum != 0.0 })
}

/// `K_{it}(x)` for real `t` and `x > 0`.
pub fn bessel_k_imag(t: f64, x: f64) -> Result<BesselK> {
    evaluate(t, x, 1.0)
}

/// Same as [`bessel_k_imag`] with the trapezoid node density scaled by
/// `density` (> 1 refines). Used for self-convergence checks.
pub fn bessel_k_imag_refined(t: f64, x: f64, density: f64) -> Result<BesselK> {
    evaluate(t, x, density)
}

/// `J_1(z)/z` for complex `z`, from `J_1(z) = (1/2π) ∫_0^{2π} cos(τ - z sin τ) dτ`.
///
/// The integrand is periodic and entire, so the trapezoidal rule with
/// `|z| + 40` nodes is accurate to rounding. At `z = 0` the limit `1/2` is
/// returned.
pub fn bessel_j1_over_x(z: num_complex::Complex64) -> num_complex::Complex64 {
    if z.norm() < 1e-8 {
        return num_complex::Complex64::new(0.5, 0.0) - z * z / 16.0;
    }
    let n = (z.norm() + 2.0 * z.im.abs() + 40.0).ceil() as usize;
    let h = 2.0 * PI / n as f64;
    let mut sum = num_complex::Complex64::new(0.0, 0.0);
    for k in 0..n {
        let tau = k as f64 * h;
        sum += (tau - z * tau.sin()).cos();
    }
    sum / n as f64 / z
}
