//! Selberg–Harish-Chandra transforms of the normalized counting kernel.
//!
//! `h_R(t) = 2^{3/2} ∫_{-R}^{R} (cosh R - cosh r)^{1/2} e^{irt} dr`, and
//! `h'_s(t) = e^{-s/2} h_s(t)`.

use std::f64::consts::{FRAC_PI_2, PI};

use num_complex::Complex64;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::fracint::{frac_integrate_with, Convolution, FracOrder, SampledSeries};
use crate::special::quad::{self, QuadOptions};
use crate::special::{bessel_j1_over_x, gauss_2f1, ln_gamma_complex};

/// A value together with a bound on the neglected terms of the expansion
/// that produced it (zero for convergent evaluations).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Estimate {
    pub value: f64,
    pub error: f64,
}

/// `2^{5/2} e^{-R/2} ∫_0^R (cosh R - cosh r)^{1/2} w(r) dr` with `r = R - v²`.
fn kernel_integral(r_max: f64, weight: impl Fn(f64) -> f64, abs_tol: f64) -> Result<f64> {
    let f = |v: f64| {
        let v2 = v * v;
        let r = r_max - v2;
        // cosh R - cosh r = 2 sinh((R + r)/2) sinh((R - r)/2), times e^{-R}
        let a = ((-(2.0 * r_max - v2)).exp_m1() * -0.5).max(0.0);
        let prod = 2.0 * a * (0.5 * v2).sinh() * (-0.5 * v2).exp();
        2.0 * v * prod.sqrt() * weight(r)
    };
    let opts = QuadOptions { abs_tol, rel_tol: 1e-12, max_intervals: 20_000 };
    let r = quad::integrate(f, 0.0, r_max.sqrt(), opts)?;
    Ok(2f64.powf(2.5) * r.value)
}

/// `h'_s(t)` by quadrature.
pub fn shc_direct(s: f64, t: f64) -> Result<f64> {
    if !(s >= 0.0) || !s.is_finite() {
        return Err(Error::InvalidInput(format!("radius {s} must be nonnegative")));
    }
    if s == 0.0 {
        return Ok(0.0);
    }
    kernel_integral(s, |r| (r * t).cos(), 1e-13)
}

/// `h_R(iτ)` by quadrature, for real `τ`.
pub fn h_imaginary_direct(r: f64, tau: f64) -> Result<f64> {
    Ok(kernel_integral(r, |x| (x * tau).cosh(), 1e-13)? * (0.5 * r).exp())
}

/// `Γ(it) / Γ(3/2 + it)`.
fn gamma_ratio(t: f64) -> Result<Complex64> {
    let num = ln_gamma_complex(Complex64::new(0.0, t))?;
    let den = ln_gamma_complex(Complex64::new(1.5, t))?;
    Ok((num - den).exp())
}

/// `e^{-R/2} h_R(t)` from the ₂F₁ representation, `R ≥ 1`, real `t ≠ 0`.
pub fn shc_closed(r: f64, t: f64) -> Result<f64> {
    if r < 1.0 {
        return Err(Error::ArgumentOutOfRange(format!("hypergeometric form needs R >= 1, got {r}")));
    }
    if t == 0.0 {
        return Err(Error::ArgumentOutOfRange("t = 0 is a pole of Γ(it)".into()));
    }
    let x = -1.0 / (2.0 * r).exp_m1();
    let f = gauss_2f1(
        Complex64::new(-0.5, 0.0),
        Complex64::new(1.5, 0.0),
        Complex64::new(1.0, -t),
        x,
    )?;
    let phase = Complex64::from_polar(1.0, t * r);
    // e^{-R/2} 2√(2π sinh R) = 2√(π(1 - e^{-2R}))
    let pre = 2.0 * (PI * -(-2.0 * r).exp_m1()).sqrt();
    Ok(pre * (phase * gamma_ratio(t)? * f).re)
}

/// Constant in the error of the imaginary-`t` expansion. The neglected
/// term is `√(2π sinh R) e^{-Rτ} Γ(-τ)/Γ(3/2 - τ)` times a ₂F₁ factor near 1;
/// with `Γ(1 - τ) ≤ √π` and `Γ(3/2 - τ) ≥ 0.88` on `0 < τ < 1/2` it is at most
/// `3.7 τ⁻¹ e^{R(1/2 - τ)}`.
pub const IMAGINARY_ERROR_CONST: f64 = 4.0;

/// `h_R(t)` for real `t ≠ 0` or imaginary `t` with `0 < |t| < 1/2`.
///
/// Real `t`: the ₂F₁ form for `R ≥ 1`, exact; for `R < 1` the leading
/// term `2πR² J₁(Rt)/(Rt) √(sinh R / R)` with error `R² min(R², t⁻²)`.
/// Imaginary `t = iτ`: `√(2π sinh R) e^{Rτ} Γ(τ)/Γ(3/2 + τ)` with error
/// `(1 + τ⁻¹) e^{R(1/2 - τ)}`.
pub fn h_r_closed(r: f64, t: Complex64) -> Result<Estimate> {
    if !(r > 0.0) {
        return Err(Error::ArgumentOutOfRange(format!("R = {r} must be positive")));
    }
    if t.im == 0.0 {
        let t = t.re;
        if t == 0.0 {
            return Err(Error::ArgumentOutOfRange("t = 0 is a pole of Γ(it)".into()));
        }
        if r >= 1.0 {
            return Ok(Estimate { value: (0.5 * r).exp() * shc_closed(r, t)?, error: 0.0 });
        }
        let jr = bessel_j1_over_x(Complex64::new(r * t, 0.0)).re;
        let value = 2.0 * PI * r * r * jr * (r.sinh() / r).sqrt();
        return Ok(Estimate { value, error: r * r * (r * r).min(1.0 / (t * t)) });
    }
    if t.re == 0.0 {
        let tau = t.im.abs();
        if tau >= 0.5 {
            return Err(Error::ArgumentOutOfRange(format!("imaginary t needs |t| < 1/2, got {tau}")));
        }
        let lg = crate::special::ln_gamma(tau) - crate::special::ln_gamma(1.5 + tau);
        let value = (2.0 * PI * r.sinh()).sqrt() * (r * tau + lg).exp();
        let error = IMAGINARY_ERROR_CONST * (1.0 + 1.0 / tau) * (r * (0.5 - tau)).exp();
        return Ok(Estimate { value, error });
    }
    Err(Error::ArgumentOutOfRange(format!("t = {t} is neither real nor purely imaginary")))
}

/// Transform of the unit-mass smoothing kernel: `h_δ(t) / (4π sinh²(δ/2))`.
pub fn htilde(delta: f64, t: f64) -> Result<f64> {
    if !(delta > 0.0 && delta < 1.0) {
        return Err(Error::ArgumentOutOfRange(format!("δ = {delta} outside (0, 1)")));
    }
    let h = (0.5 * delta).exp() * shc_direct(delta, t)?;
    Ok(h / (4.0 * PI * (0.5 * delta).sinh().powi(2)))
}

/// `r_α(t) = 2√π Γ(it) / ((it)^α Γ(3/2 + it))`, principal branch.
pub fn r_alpha(t: f64, order: FracOrder) -> Result<Complex64> {
    r_power(t, order.alpha())
}

fn r_power(t: f64, a: f64) -> Result<Complex64> {
    if t == 0.0 {
        return Err(Error::Domain("r_α is singular at t = 0".into()));
    }
    let it_pow = Complex64::from_polar(t.abs().powf(a), t.signum() * FRAC_PI_2 * a);
    Ok(2.0 * PI.sqrt() * gamma_ratio(t)? / it_pow)
}

/// `Re(2√π Γ(it)/Γ(3/2 + it) e^{its})`, the leading behaviour of `h'_s(t)`.
pub fn shc_leading(s: f64, t: f64) -> Result<f64> {
    Ok((r_power(t, 0.0)? * Complex64::from_polar(1.0, t * s)).re)
}

/// `Re(r_α(t) e^{its})`, the leading behaviour of `h'_{α,s}(t)`.
pub fn shc_asymptotic(s: f64, t: f64, order: FracOrder) -> Result<f64> {
    Ok((r_alpha(t, order)? * Complex64::from_polar(1.0, t * s)).re)
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ShcFrac {
    pub value: f64,
    pub asymptotic: f64,
    pub step: f64,
}

/// Sampling step used by [`shc_frac`] when none is given.
pub fn default_frac_step(t: f64) -> f64 {
    (1.0 / 512.0f64).min(1.0 / (40.0 * t.abs()))
}

/// How [`shc_frac_sampled`] evaluates `x ↦ h'_x(t)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum ShcSampler {
    /// Quadrature below `x = 1`, the ₂F₁ form above.
    #[default]
    Mixed,
    /// Quadrature everywhere.
    Quadrature,
}

/// `h'_{α,s}(t) = I_α(x ↦ h'_x(t))(s)` by product integration.
pub fn shc_frac(s: f64, t: f64, order: FracOrder) -> Result<ShcFrac> {
    shc_frac_with_step(s, t, order, default_frac_step(t))
}

pub fn shc_frac_with_step(s: f64, t: f64, order: FracOrder, step: f64) -> Result<ShcFrac> {
    shc_frac_sampled(s, t, order, step, ShcSampler::Mixed)
}

pub fn shc_frac_sampled(s: f64, t: f64, order: FracOrder, step: f64, sampler: ShcSampler) -> Result<ShcFrac> {
    if t == 0.0 {
        return Err(Error::Domain("t must be nonzero".into()));
    }
    if !(s > 0.0) || !(step > 0.0) {
        return Err(Error::InvalidInput(format!("need s > 0 and step > 0, got s={s}, step={step}")));
    }
    let cells = (s / step).ceil() as usize;
    let step = s / cells as f64;
    let values = (0..=cells)
        .into_par_iter()
        .map(|k| {
            let x = k as f64 * step;
            if x >= 1.0 && sampler == ShcSampler::Mixed {
                shc_closed(x, t)
            } else {
                shc_direct(x, t)
            }
        })
        .collect::<Result<Vec<f64>>>()?;
    let series = SampledSeries::new(0.0, step, values)?;
    let method = if cells > 4096 { Convolution::Fft } else { Convolution::Direct };
    let out = frac_integrate_with(&series, order, method);
    Ok(ShcFrac { value: *out.values().last().unwrap(), asymptotic: shc_asymptotic(s, t, order)?, step })
}
