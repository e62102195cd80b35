//! Sampling the normalized remainder `e(s)` and its fractional integrals.

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::fracint::{frac_exp_reference, frac_indicator_exp, frac_integrate_with, Convolution, FracOrder, SampledSeries};
use crate::hyperbolic::Point;
use crate::lattice::{list_distances, BallSpec, DistanceMultiset};
use crate::spectral::sums::{main_term, MainTermData};

/// Default largest radius for real lattice runs.
pub const DESK_S_MAX: f64 = 14.0;

/// Grids of `0, step, 2·step, ...` up to `s_max`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GridSpec {
    pub s_max: f64,
    pub step: f64,
}

impl GridSpec {
    pub fn new(s_max: f64, step: f64) -> Result<Self> {
        if !(step > 0.0) || !step.is_finite() {
            return Err(Error::InvalidInput(format!("grid step {step} must be positive")));
        }
        if !(s_max >= 0.0) || !s_max.is_finite() {
            return Err(Error::NegativeRadius(s_max));
        }
        Ok(Self { s_max, step })
    }

    pub fn len(&self) -> usize {
        (self.s_max / self.step + 1e-9).floor() as usize + 1
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    fn last(&self) -> f64 {
        (self.len() - 1) as f64 * self.step
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SeriesKind {
    /// `e(s)` from lattice counts.
    Counting,
    /// `e_α` by product integration of sampled `e`.
    Grid,
    /// `e_α` summed exactly over the distance list.
    Exact,
    /// The almost periodic model `f_α`.
    Synthetic,
}

impl SeriesKind {
    pub fn as_str(self) -> &'static str {
        match self {
            SeriesKind::Counting => "counting",
            SeriesKind::Grid => "grid",
            SeriesKind::Exact => "exact",
            SeriesKind::Synthetic => "synthetic",
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ErrorSeries {
    pub series: SampledSeries,
    pub z: Point,
    pub w: Point,
    pub alpha: Option<f64>,
    pub kind: SeriesKind,
}

impl ErrorSeries {
    pub fn values(&self) -> &[f64] {
        self.series.values()
    }
}

/// Distances `d(z, γw) ≤ s_max`, sorted.
pub fn distances(z: Point, w: Point, s_max: f64) -> Result<DistanceMultiset> {
    list_distances(&BallSpec::new(z, w, s_max)?)
}

/// `e(s_k) = (N(s_k) - M(s_k)) e^{-s_k/2}` from one sorted distance list.
pub fn error_from_distances(dist: &DistanceMultiset, grid: GridSpec) -> Result<SampledSeries> {
    let main = MainTermData::modular();
    let d = dist.as_slice();
    let mut idx = 0usize;
    let mut values = Vec::with_capacity(grid.len());
    for k in 0..grid.len() {
        let s = k as f64 * grid.step;
        while idx < d.len() && d[idx] <= s {
            idx += 1;
        }
        values.push((idx as f64 - main_term(s, &main)) * (-0.5 * s).exp());
    }
    SampledSeries::new(0.0, grid.step, values)
}

pub fn sample_error(z: Point, w: Point, grid: GridSpec) -> Result<ErrorSeries> {
    let dist = distances(z, w, grid.last())?;
    Ok(ErrorSeries { series: error_from_distances(&dist, grid)?, z, w, alpha: None, kind: SeriesKind::Counting })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum AlphaMethod {
    #[default]
    Grid,
    Exact,
}

/// Product integration of a grid series based at zero.
pub fn integrate_series(series: &SampledSeries, order: FracOrder) -> SampledSeries {
    let method = if series.len() > 8192 { Convolution::Fft } else { Convolution::Direct };
    frac_integrate_with(series, order, method)
}

/// `e_α(s) = I_α e(s)` at the grid points.
pub fn sample_e_alpha(z: Point, w: Point, order: FracOrder, grid: GridSpec, method: AlphaMethod) -> Result<ErrorSeries> {
    let dist = distances(z, w, grid.last())?;
    let series = match method {
        AlphaMethod::Grid => integrate_series(&error_from_distances(&dist, grid)?, order),
        AlphaMethod::Exact => exact_e_alpha(&dist, order, grid)?,
    };
    let kind = match method {
        AlphaMethod::Grid => SeriesKind::Grid,
        AlphaMethod::Exact => SeriesKind::Exact,
    };
    Ok(ErrorSeries { series, z, w, alpha: Some(order.alpha()), kind })
}

/// `Σ_{d_j ≤ s} I_α(1_{x ≥ d_j} e^{-x/2})(s) - 3 I_α(e^{x/2})(s)`.
pub fn exact_e_alpha(dist: &DistanceMultiset, order: FracOrder, grid: GridSpec) -> Result<SampledSeries> {
    let d = dist.as_slice();
    let volume_factor = MainTermData::modular().volume;
    let scale = std::f64::consts::PI / volume_factor;
    let values = (0..grid.len())
        .into_par_iter()
        .map(|k| {
            let s = k as f64 * grid.step;
            if s == 0.0 {
                return Ok(0.0);
            }
            let end = d.partition_point(|&x| x <= s);
            let counted: f64 = d[..end].iter().map(|&x| frac_indicator_exp(x, order, s)).sum();
            Ok(counted - scale * frac_exp_reference(0.5, order, s)?)
        })
        .collect::<Result<Vec<f64>>>()?;
    SampledSeries::new(0.0, grid.step, values)
}

/// Bound on `|grid - exact|` at every grid point.
///
/// On a cell the product rule replaces `e(x)` by `e(x_k)`, so the error is
/// at most `Σ_k V_k w_{n-1-k}` with `V_k` the variation of `e` over cell `k`:
/// the jumps `e^{-d/2}` plus `|e'| ≤ N e^{-x/2}/2 + 3e^{x/2}/2` between them.
pub fn grid_error_budget(dist: &DistanceMultiset, order: FracOrder, grid: GridSpec) -> Result<SampledSeries> {
    let d = dist.as_slice();
    let h = grid.step;
    let mut idx = d.partition_point(|&x| x <= 0.0);
    let mut var = Vec::with_capacity(grid.len());
    for k in 0..grid.len() {
        let (lo, hi) = (k as f64 * h, (k + 1) as f64 * h);
        let mut jumps = 0.0;
        while idx < d.len() && d[idx] <= hi {
            jumps += (-0.5 * d[idx]).exp();
            idx += 1;
        }
        let slope = 0.5 * idx as f64 * (-0.5 * lo).exp() + 1.5 * (0.5 * hi).exp();
        var.push(jumps + slope * h);
    }
    Ok(integrate_series(&SampledSeries::new(0.0, h, var)?, order))
}

/// Largest `|grid - exact|` over abscissae the two series share.
pub fn method_gap(grid: &SampledSeries, exact: &SampledSeries) -> Result<f64> {
    let ratio = exact.step() / grid.step();
    let stride = ratio.round() as usize;
    if stride == 0 || (ratio - stride as f64).abs() > 1e-9 || grid.start() != exact.start() {
        return Err(Error::InvalidInput("exact grid must be a coarsening of the product-integration grid".into()));
    }
    let mut gap: f64 = 0.0;
    for (k, &e) in exact.values().iter().enumerate() {
        match grid.values().get(k * stride) {
            Some(&g) => gap = gap.max((g - e).abs()),
            None => break,
        }
    }
    Ok(gap)
}
