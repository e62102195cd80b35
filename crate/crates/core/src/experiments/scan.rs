//! Running suprema of `|e_α|` against the pointwise growth rate.

use serde::Serialize;

use super::sampling::{sample_e_alpha, AlphaMethod, GridSpec};
use crate::error::{Error, Result};
use crate::fracint::{FracOrder, SampledSeries, DEFAULT_STEP};
use crate::hyperbolic::Point;

/// First abscissa of the scan.
pub const SCAN_START: f64 = 8.0;
/// Spacing of the scan abscissae.
pub const SCAN_SPACING: f64 = 0.5;

/// `(1 - 2α) / (6 - 4α)`
pub fn growth_exponent(order: FracOrder) -> f64 {
    let a = order.alpha();
    (1.0 - 2.0 * a) / (6.0 - 4.0 * a)
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PointwiseReport {
    pub alpha: f64,
    pub exponent_bound: f64,
    /// `max_x sup_{s≤x} |e_α(s)| e^{-κx}` over the scan.
    pub envelope: f64,
    /// Least-squares slope of `log sup_{s≤x} |e_α(s)|` against `x`.
    pub fitted_exponent: f64,
    /// `sup_{s ≤ s_max} |e_α(s)|`
    pub sup_abs: f64,
    /// `max_x sup_{s≤x} |e_α(s)| / x`
    pub sup_over_s: f64,
    pub scan_x: Vec<f64>,
    pub scan_envelope: Vec<f64>,
}

impl PointwiseReport {
    /// Envelope values never rise by more than `rel` from one scan point to the next.
    pub fn non_increasing(&self, rel: f64) -> bool {
        self.scan_envelope.windows(2).all(|p| p[1] <= p[0] * (1.0 + rel))
    }

    /// Pointwise bound at `x`: `envelope · e^{κx}` while `κ > 0`, the
    /// observed supremum once `e_α` is bounded.
    pub fn bound_at(&self, x: f64) -> f64 {
        if self.exponent_bound > 0.0 {
            self.envelope * (self.exponent_bound * x).exp()
        } else {
            self.sup_abs
        }
    }
}

pub fn pointwise_scan(z: Point, w: Point, order: FracOrder, s_max: f64) -> Result<PointwiseReport> {
    let e = sample_e_alpha(z, w, order, GridSpec::new(s_max, DEFAULT_STEP)?, AlphaMethod::Grid)?;
    scan_series(&e.series, order)
}

pub fn scan_series(series: &SampledSeries, order: FracOrder) -> Result<PointwiseReport> {
    if series.end() < SCAN_START + SCAN_SPACING {
        return Err(Error::InvalidInput(format!("scan needs s_max above {}", SCAN_START + SCAN_SPACING)));
    }
    let kappa = growth_exponent(order);
    let n_x = ((series.end() - SCAN_START) / SCAN_SPACING + 1e-9).floor() as usize + 1;
    let xs: Vec<f64> = (0..n_x).map(|j| SCAN_START + j as f64 * SCAN_SPACING).collect();
    let mut sups = Vec::with_capacity(n_x);
    let mut running = 0.0f64;
    let mut it = series.iter().peekable();
    for &x in &xs {
        while let Some(&(s, v)) = it.peek() {
            if s > x + 1e-9 * series.step() {
                break;
            }
            running = running.max(v.abs());
            it.next();
        }
        sups.push(running);
    }
    let sup_abs = series.values().iter().fold(0.0f64, |m, v| m.max(v.abs()));
    let scan_envelope: Vec<f64> = xs.iter().zip(&sups).map(|(x, s)| s * (-kappa * x).exp()).collect();
    let envelope = scan_envelope.iter().copied().fold(0.0, f64::max);
    let sup_over_s = xs.iter().zip(&sups).map(|(x, s)| s / x).fold(0.0, f64::max);
    let logs: Vec<f64> = sups.iter().map(|s| s.ln()).collect();
    Ok(PointwiseReport {
        alpha: order.alpha(),
        exponent_bound: kappa,
        envelope,
        fitted_exponent: slope(&xs, &logs),
        sup_abs,
        sup_over_s,
        scan_x: xs,
        scan_envelope,
    })
}

fn slope(x: &[f64], y: &[f64]) -> f64 {
    let n = x.len() as f64;
    let mx = x.iter().sum::<f64>() / n;
    let my = y.iter().sum::<f64>() / n;
    let sxy: f64 = x.iter().zip(y).map(|(a, b)| (a - mx) * (b - my)).sum();
    let sxx: f64 = x.iter().map(|a| (a - mx).powi(2)).sum();
    if sxx == 0.0 {
        0.0
    } else {
        sxy / sxx
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    #[test]
    fn exponent_values() {
        assert_relative_eq!(growth_exponent(FracOrder::new(0.25).unwrap()), 0.1, max_relative = 1e-15);
        assert_eq!(growth_exponent(FracOrder::new(0.5).unwrap()), 0.0);
        assert!(growth_exponent(FracOrder::new(0.9).unwrap()) < 0.0);
    }

    #[test]
    fn exponential_series_recovers_rate() {
        let s = SampledSeries::from_fn(0.0, 1.0 / 64.0, 64 * 14 + 1, |x| (0.3 * x).exp()).unwrap();
        let r = scan_series(&s, FracOrder::new(0.25).unwrap()).unwrap();
        assert_relative_eq!(r.fitted_exponent, 0.3, max_relative = 1e-9);
        assert_eq!(r.scan_x.len(), 13);
        assert!(!r.non_increasing(0.0));
        assert_relative_eq!(r.sup_abs, (0.3f64 * 14.0).exp(), max_relative = 1e-12);
    }

    #[test]
    fn bounded_series_has_flat_envelope() {
        let s = SampledSeries::from_fn(0.0, 1.0 / 64.0, 64 * 14 + 1, |x| (3.0 * x).sin()).unwrap();
        let r = scan_series(&s, FracOrder::new(0.25).unwrap()).unwrap();
        assert!(r.non_increasing(0.0));
        assert!(r.fitted_exponent.abs() < 1e-3);
        assert!(r.bound_at(14.0) >= r.sup_abs);
    }

    #[test]
    fn short_series_rejected() {
        let s = SampledSeries::from_fn(0.0, 0.1, 50, |x| x).unwrap();
        assert!(scan_series(&s, FracOrder::new(0.5).unwrap()).is_err());
    }
}
