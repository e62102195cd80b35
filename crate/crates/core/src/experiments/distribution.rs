//! Empirical value distributions of `e_α` and of the model `f_α`.

use std::f64::consts::PI;

use serde::Serialize;

use super::sampling::{sample_e_alpha, AlphaMethod, GridSpec};
use crate::error::{Error, Result};
use crate::fracint::{FracOrder, DEFAULT_STEP};
use crate::hyperbolic::Point;
use crate::spectral::sums::{amplitude, f_alpha_series};
use crate::spectral::SpectralDataset;

/// Sampling step for long synthetic horizons.
pub const SYNTHETIC_STEP: f64 = 0.05;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct DistributionEstimate {
    pub edges: Vec<f64>,
    pub counts: Vec<u64>,
    pub mean: f64,
    pub variance: f64,
    pub count: u64,
    /// Two-sample Kolmogorov–Smirnov distance between the first and second half.
    pub ks_halves: f64,
}

pub enum DistributionSource<'a> {
    Real { z: Point, w: Point, order: FracOrder, t: f64 },
    Synthetic { data: &'a SpectralDataset, z: Point, w: Point, order: FracOrder, horizon: f64 },
}

/// Samples of `e_α` on `[0, T]`, or of `f_α` on `[0, L]`.
pub fn source_samples(source: &DistributionSource) -> Result<Vec<f64>> {
    match *source {
        DistributionSource::Real { z, w, order, t } => {
            Ok(sample_e_alpha(z, w, order, GridSpec::new(t, DEFAULT_STEP)?, AlphaMethod::Grid)?.values().to_vec())
        }
        DistributionSource::Synthetic { data, z, w, order, horizon } => {
            let amps = amplitude(data, &z, &w)?;
            let len = (horizon / SYNTHETIC_STEP).floor() as usize + 1;
            Ok(f_alpha_series(&amps, order, f64::INFINITY, 0.0, SYNTHETIC_STEP, len)?.values().to_vec())
        }
    }
}

pub fn distribution_estimate(source: &DistributionSource, bins: Option<usize>) -> Result<DistributionEstimate> {
    estimate_from_samples(&source_samples(source)?, bins)
}

/// Histogram (Freedman–Diaconis unless `bins` is given), moments and the
/// half-versus-half KS distance of `samples`.
pub fn estimate_from_samples(samples: &[f64], bins: Option<usize>) -> Result<DistributionEstimate> {
    if samples.len() < 4 {
        return Err(Error::InvalidInput(format!("need at least 4 samples, got {}", samples.len())));
    }
    if samples.iter().any(|x| !x.is_finite()) {
        return Err(Error::InvalidInput("samples must be finite".into()));
    }
    let n = samples.len();
    let mean = pairwise_sum(samples) / n as f64;
    let dev: Vec<f64> = samples.iter().map(|x| (x - mean).powi(2)).collect();
    let variance = pairwise_sum(&dev) / (n - 1) as f64;

    let mut sorted = samples.to_vec();
    sorted.sort_by(f64::total_cmp);
    let (lo, hi) = (sorted[0], sorted[n - 1]);
    let nbins = match bins {
        Some(0) => return Err(Error::InvalidInput("bin count must be positive".into())),
        Some(b) => b,
        None => freedman_diaconis(&sorted),
    };
    let width = if hi > lo { (hi - lo) / nbins as f64 } else { 1.0 };
    let edges: Vec<f64> = (0..=nbins).map(|k| if k == nbins { lo + width * nbins as f64 } else { lo + width * k as f64 }).collect();
    let mut counts = vec![0u64; nbins];
    for &x in samples {
        let k = (((x - lo) / width) as usize).min(nbins - 1);
        counts[k] += 1;
    }
    let (a, b) = samples.split_at(n / 2);
    Ok(DistributionEstimate { edges, counts, mean, variance, count: n as u64, ks_halves: ks_two_sample(a, b) })
}

fn freedman_diaconis(sorted: &[f64]) -> usize {
    let n = sorted.len();
    let q = |p: f64| sorted[((n - 1) as f64 * p).round() as usize];
    let iqr = q(0.75) - q(0.25);
    let range = sorted[n - 1] - sorted[0];
    if iqr <= 0.0 || range <= 0.0 {
        return 1;
    }
    let h = 2.0 * iqr / (n as f64).cbrt();
    ((range / h).ceil() as usize).clamp(1, 10_000)
}

/// Fixed-order pairwise summation.
pub fn pairwise_sum(x: &[f64]) -> f64 {
    if x.len() <= 64 {
        return x.iter().sum();
    }
    let (a, b) = x.split_at(x.len() / 2);
    pairwise_sum(a) + pairwise_sum(b)
}

/// `sup |F_a - F_b|` for the empirical CDFs of two samples.
pub fn ks_two_sample(a: &[f64], b: &[f64]) -> f64 {
    let mut a = a.to_vec();
    let mut b = b.to_vec();
    a.sort_by(f64::total_cmp);
    b.sort_by(f64::total_cmp);
    let (na, nb) = (a.len() as f64, b.len() as f64);
    let (mut i, mut j, mut d) = (0usize, 0usize, 0.0f64);
    while i < a.len() && j < b.len() {
        let x = a[i].min(b[j]);
        while i < a.len() && a[i] <= x {
            i += 1;
        }
        while j < b.len() && b[j] <= x {
            j += 1;
        }
        d = d.max((i as f64 / na - j as f64 / nb).abs());
    }
    d
}

/// `sup |F_n - F|` against a continuous CDF.
pub fn ks_against(samples: &[f64], cdf: impl Fn(f64) -> f64) -> f64 {
    let mut s = samples.to_vec();
    s.sort_by(f64::total_cmp);
    let n = s.len() as f64;
    s.iter()
        .enumerate()
        .map(|(k, &x)| {
            let f = cdf(x);
            (f - k as f64 / n).abs().max((k as f64 + 1.0) / n - f)
        })
        .fold(0.0, f64::max)
}

/// CDF of `A cos θ` with `θ` uniform.
pub fn arcsine_cdf(x: f64, amplitude: f64) -> f64 {
    if x <= -amplitude {
        0.0
    } else if x >= amplitude {
        1.0
    } else {
        0.5 + (x / amplitude).asin() / PI
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    #[test]
    fn histogram_invariants() {
        let x: Vec<f64> = (0..1000).map(|k| ((k * 37) % 101) as f64 * 0.3 - 4.0).collect();
        for bins in [None, Some(7)] {
            let e = estimate_from_samples(&x, bins).unwrap();
            assert_eq!(e.counts.iter().sum::<u64>(), e.count);
            assert!(e.edges.windows(2).all(|p| p[1] > p[0]));
            assert_eq!(e.edges.len(), e.counts.len() + 1);
        }
        assert!(estimate_from_samples(&x, Some(0)).is_err());
        assert!(estimate_from_samples(&[1.0, f64::NAN, 2.0, 3.0], None).is_err());
    }

    #[test]
    fn moments() {
        let x = [1.0, 2.0, 3.0, 4.0, 5.0];
        let e = estimate_from_samples(&x, Some(2)).unwrap();
        assert_eq!(e.mean, 3.0);
        assert_eq!(e.variance, 2.5);
    }

    #[test]
    fn ks_identical_and_disjoint() {
        let a: Vec<f64> = (0..100).map(f64::from).collect();
        assert_eq!(ks_two_sample(&a, &a), 0.0);
        let b: Vec<f64> = a.iter().map(|x| x + 1000.0).collect();
        assert_eq!(ks_two_sample(&a, &b), 1.0);
    }

    #[test]
    fn cosine_follows_arcsine_law() {
        let amp = 2.5;
        let x: Vec<f64> = (0..200_000).map(|k| amp * (1.37 * k as f64 * 0.05 + 0.2).cos()).collect();
        let d = ks_against(&x, |v| arcsine_cdf(v, amp));
        assert!(d < 0.005, "{d}");
        assert_relative_eq!(arcsine_cdf(0.0, amp), 0.5);
    }

    #[test]
    fn pairwise_matches_naive() {
        let x: Vec<f64> = (0..1000).map(|k| 1.0 / (k as f64 + 1.0)).collect();
        assert_relative_eq!(pairwise_sum(&x), x.iter().sum::<f64>(), max_relative = 1e-14);
    }
}
