//! Window averages of sampled series.

use serde::Serialize;

use super::sampling::{sample_e_alpha, AlphaMethod, GridSpec};
use crate::error::{Error, Result};
use crate::fracint::{FracOrder, SampledSeries, DEFAULT_STEP};
use crate::hyperbolic::Point;
use crate::spectral::sums::{amplitude, spectral_variance_from, TailModel, TAIL_FIT_START};
use crate::spectral::SpectralDataset;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Window {
    /// `[T, 2T]`
    #[default]
    Doubling,
    /// `[0, T]`
    Initial,
}

impl Window {
    pub fn bounds(self, t: f64) -> (f64, f64) {
        match self {
            Window::Doubling => (t, 2.0 * t),
            Window::Initial => (0.0, t),
        }
    }
}

/// Trapezoid integral of `f(series)` over `[lo, hi]`, interpolating
/// linearly inside the boundary cells.
fn window_integral(series: &SampledSeries, lo: f64, hi: f64, f: impl Fn(f64) -> f64) -> Result<f64> {
    let (start, end, h) = (series.start(), series.end(), series.step());
    let slack = 1e-9 * h;
    if !(hi > lo) || lo < start - slack || hi > end + slack {
        return Err(Error::WindowOutOfRange { lo, hi, start, end });
    }
    let v = series.values();
    let last = v.len() - 1;
    let at = |x: f64| {
        let pos = ((x - start) / h).clamp(0.0, last as f64);
        let k = (pos.floor() as usize).min(last.saturating_sub(1));
        let frac = pos - k as f64;
        if last == 0 {
            return f(v[0]);
        }
        f(v[k]) * (1.0 - frac) + f(v[k + 1]) * frac
    };
    // grid points strictly inside (lo, hi)
    let first = (((lo - start) / h) + 1e-9).floor() as usize + 1;
    let stop = ((((hi - start) / h) - 1e-9).ceil() as usize).min(last + 1);
    let mut acc = 0.0;
    let mut prev = (lo, at(lo));
    for k in first..stop {
        let x = series.abscissa(k);
        let fx = f(v[k]);
        acc += 0.5 * (x - prev.0) * (fx + prev.1);
        prev = (x, fx);
    }
    acc += 0.5 * (hi - prev.0) * (at(hi) + prev.1);
    Ok(acc)
}

/// `(1/|W|) ∫_W e(s) ds` over the window of `T`.
pub fn first_moment(series: &SampledSeries, t: f64, window: Window) -> Result<f64> {
    let (lo, hi) = window.bounds(t);
    Ok(window_integral(series, lo, hi, |x| x)? / (hi - lo))
}

/// `(1/|W|) ∫_W |e(s)|² ds` over the window of `T`.
pub fn window_variance(series: &SampledSeries, t: f64, window: Window) -> Result<f64> {
    let (lo, hi) = window.bounds(t);
    Ok(window_integral(series, lo, hi, |x| x * x)? / (hi - lo))
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct VarianceReport {
    pub empirical: f64,
    pub spectral_value: f64,
    pub spectral_tail: f64,
    pub ratio: f64,
}

/// Empirical second moment of `e_α` against the spectral prediction.
pub fn variance_report(
    z: Point,
    w: Point,
    order: FracOrder,
    t: f64,
    window: Window,
    data: &SpectralDataset,
    t_max: f64,
) -> Result<VarianceReport> {
    let (_, hi) = window.bounds(t);
    let e = sample_e_alpha(z, w, order, GridSpec::new(hi, DEFAULT_STEP)?, AlphaMethod::Grid)?;
    let empirical = window_variance(&e.series, t, window)?;
    let amps = amplitude(data, &z, &w)?;
    let model = TailModel::fit(&amps, TAIL_FIT_START);
    let v = spectral_variance_from(&amps, order, t_max, &model);
    Ok(VarianceReport { empirical, spectral_value: v.value, spectral_tail: v.tail_bound, ratio: empirical / v.value })
}
