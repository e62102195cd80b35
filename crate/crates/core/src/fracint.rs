//! Riemann–Liouville fractional integration
//! `I_α φ(x) = Γ(α)⁻¹ ∫_0^x φ(t) (x - t)^{α-1} dt`.

use std::sync::Arc;

use rayon::prelude::*;
use rustfft::{num_complex::Complex64, FftPlanner};

use crate::error::{Error, Result};
use crate::special::{gamma, lower_incomplete_exp, quad};

/// Default sampling step.
pub const DEFAULT_STEP: f64 = 1.0 / 512.0;

#[derive(Debug, Clone, Copy, PartialEq, PartialOrd)]
pub struct FracOrder(f64);

impl FracOrder {
    pub fn new(alpha: f64) -> Result<Self> {
        if alpha > 0.0 && alpha <= 1.0 {
            Ok(Self(alpha))
        } else {
            Err(Error::InvalidInput(format!("fractional order {alpha} outside (0, 1]")))
        }
    }

    pub fn alpha(self) -> f64 {
        self.0
    }
}

/// Samples `values[k] = φ(start + k·step)`.
#[derive(Debug, Clone, PartialEq)]
pub struct SampledSeries {
    start: f64,
    step: f64,
    values: Vec<f64>,
}

impl SampledSeries {
    pub fn new(start: f64, step: f64, values: Vec<f64>) -> Result<Self> {
        if !(step > 0.0) || !step.is_finite() || !start.is_finite() {
            return Err(Error::InvalidInput(format!("invalid grid start={start} step={step}")));
        }
        if values.is_empty() {
            return Err(Error::InvalidInput("series has no samples".into()));
        }
        Ok(Self { start, step, values })
    }

    /// Samples `f` at `start + k·step` for `k < len`.
    pub fn from_fn(start: f64, step: f64, len: usize, f: impl Fn(f64) -> f64) -> Result<Self> {
        Self::new(start, step, (0..len).map(|k| f(start + k as f64 * step)).collect())
    }

    pub fn start(&self) -> f64 {
        self.start
    }

    pub fn step(&self) -> f64 {
        self.step
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn abscissa(&self, k: usize) -> f64 {
        self.start + k as f64 * self.step
    }

    pub fn end(&self) -> f64 {
        self.abscissa(self.values.len() - 1)
    }

    pub fn iter(&self) -> impl Iterator<Item = (f64, f64)> + '_ {
        self.values.iter().enumerate().map(move |(k, &v)| (self.abscissa(k), v))
    }

    pub(crate) fn with_values(&self, values: Vec<f64>) -> Self {
        Self { start: self.start, step: self.step, values }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Convolution {
    #[default]
    Direct,
    Fft,
}

/// `w_k = Δ^α ((k+1)^α - k^α) / Γ(α+1)`
pub fn product_weights(order: FracOrder, step: f64, len: usize) -> Vec<f64> {
    let a = order.alpha();
    let scale = step.powf(a) / gamma(a + 1.0);
    (0..len).map(|k| scale * ((k as f64 + 1.0).powf(a) - (k as f64).powf(a))).collect()
}

/// Left-endpoint product integration on the grid of `series`, based at
/// `series.start`.
pub fn frac_integrate(series: &SampledSeries, order: FracOrder) -> SampledSeries {
    frac_integrate_with(series, order, Convolution::Direct)
}

pub fn frac_integrate_with(series: &SampledSeries, order: FracOrder, method: Convolution) -> SampledSeries {
    let phi = series.values();
    let m = phi.len();
    let w = product_weights(order, series.step(), m);
    let out = match method {
        Convolution::Direct => (0..m)
            .into_par_iter()
            .map(|n| (0..n).map(|k| w[k] * phi[n - 1 - k]).sum())
            .collect(),
        Convolution::Fft => {
            let conv = fft_convolve(&w, phi);
            std::iter::once(0.0).chain(conv.into_iter().take(m - 1)).collect()
        }
    };
    series.with_values(out)
}

fn fft_convolve(a: &[f64], b: &[f64]) -> Vec<f64> {
    let n = (a.len() + b.len()).next_power_of_two();
    let mut planner = FftPlanner::new();
    let fwd: Arc<dyn rustfft::Fft<f64>> = planner.plan_fft_forward(n);
    let inv = planner.plan_fft_inverse(n);
    let pad = |v: &[f64]| {
        let mut buf = vec![Complex64::new(0.0, 0.0); n];
        for (slot, &x) in buf.iter_mut().zip(v) {
            slot.re = x;
        }
        buf
    };
    let (mut fa, mut fb) = (pad(a), pad(b));
    fwd.process(&mut fa);
    fwd.process(&mut fb);
    for (x, y) in fa.iter_mut().zip(&fb) {
        *x *= y;
    }
    inv.process(&mut fa);
    let norm = 1.0 / n as f64;
    fa.iter().take(a.len() + b.len() - 1).map(|c| c.re * norm).collect()
}

/// `Γ(α)⁻¹ ∫_0^s e^{βt} (s - t)^{α-1} dt` by adaptive quadrature.
pub fn frac_exp_reference(beta: f64, order: FracOrder, s: f64) -> Result<f64> {
    if !(beta > 0.0) || !(s > 0.0) {
        return Err(Error::InvalidInput(format!("need beta > 0 and s > 0, got beta={beta} s={s}")));
    }
    let a = order.alpha();
    // e^{βt} = e^{βs} e^{-β(s-t)}
    let r = quad::integrate_weakly_singular(
        |t| (-beta * (s - t)).exp(),
        0.0,
        s,
        a,
        quad::QuadOptions::rel(1e-13),
    )?;
    Ok((beta * s).exp() * r.value / gamma(a))
}

/// `Γ(α)⁻¹ ∫_d^s e^{-t/2} (s - t)^{α-1} dt`, zero when `s ≤ d`.
pub fn frac_indicator_exp(d: f64, order: FracOrder, s: f64) -> f64 {
    if s <= d {
        return 0.0;
    }
    let a = order.alpha();
    let x = s - d.max(0.0);
    let inner = lower_incomplete_exp(a, x).expect("order and range validated");
    (-0.5 * s).exp() * inner / gamma(a)
}
