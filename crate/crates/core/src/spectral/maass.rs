//! Evaluation and L² normalization of Maass cusp forms from their Fourier
//! expansion `φ(z) = √y Σ a_n K_{it}(2πny) tr(2πnx)`.

use std::f64::consts::{FRAC_PI_2, PI};

use rayon::prelude::*;

use super::data::{Parity, SpectralDataset, SpectralDatum};
use crate::error::{Error, Result};
use crate::hyperbolic::Point;
use crate::special::bessel::{bessel_k_imag, log_scale};
use crate::special::quad::{self, kronrod_nodes};

/// Terms are dropped once `K_{it}(2πny)` falls below `e^{TRUNCATION_LOG}`
/// relative to its oscillatory envelope `e^{-πt/2}`.
const TRUNCATION_LOG: f64 = -36.0;

/// Number of Fourier terms needed at height `y`.
pub fn required_terms(t: f64, y: f64) -> usize {
    let step = 2.0 * PI * y;
    let mut n = ((t + 12.0) / step).ceil().max(1.0) as usize;
    while log_scale(t, step * n as f64) + FRAC_PI_2 * t > TRUNCATION_LOG {
        n += 1;
    }
    n
}

fn trig(parity: Parity, arg: f64) -> f64 {
    match parity {
        Parity::Even => 2.0 * arg.cos(),
        Parity::Odd => 2.0 * arg.sin(),
    }
}

/// `K_{it}(2πny)` for `n = 1..=terms`.
fn bessel_column(t: f64, y: f64, terms: usize) -> Result<Vec<f64>> {
    (1..=terms).map(|n| Ok(bessel_k_imag(t, 2.0 * PI * n as f64 * y)?.value)).collect()
}

fn check_terms(datum: &SpectralDatum, y: f64) -> Result<usize> {
    let need = required_terms(datum.t, y);
    if need > datum.coeffs().len() {
        return Err(Error::InsufficientCoefficients { t: datum.t, required: need, available: datum.coeffs().len() });
    }
    Ok(need)
}

/// The form with `a_1 = 1`, no L² scaling.
pub fn hecke_value(datum: &SpectralDatum, z: &Point) -> Result<f64> {
    let (x, y) = (z.x(), z.y());
    let terms = check_terms(datum, y)?;
    let k = bessel_column(datum.t, y, terms)?;
    let a = datum.coeffs();
    let sum: f64 = (0..terms).map(|j| a[j] * k[j] * trig(datum.parity, 2.0 * PI * (j + 1) as f64 * x)).sum();
    Ok(y.sqrt() * sum)
}

/// `ρ·φ_Hecke(z)`, normalizing on the fly when the datum has no `l2norm`.
pub fn maass_value(datum: &SpectralDatum, z: &Point) -> Result<f64> {
    let rho = match datum.l2norm {
        Some(r) => r,
        None => normalize_l2(datum)?,
    };
    Ok(rho * hecke_value(datum, z)?)
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct NormOptions {
    /// Truncation height `Y`; defaults to `t/(2π) + 3`.
    pub height: Option<f64>,
    /// Multiplies every panel count.
    pub density: f64,
}

impl Default for NormOptions {
    fn default() -> Self {
        Self { height: None, density: 1.0 }
    }
}

/// `ρ` with `∫_F |ρ φ_Hecke|² dμ = 1` over the standard fundamental domain.
pub fn normalize_l2(datum: &SpectralDatum) -> Result<f64> {
    normalize_l2_with(datum, NormOptions::default())
}

pub fn normalize_l2_with(datum: &SpectralDatum, opts: NormOptions) -> Result<f64> {
    let norm = hecke_norm_sqr(datum, opts)?;
    Ok(1.0 / norm.sqrt())
}

/// `∫_F |φ_Hecke|² dμ`.
///
/// Split at `y = 1`: below, the region `x² + y² ≥ 1` is integrated in `x`
/// for each `y`; above, orthogonality of the characters reduces the
/// integral to `Σ 2a_n² ∫ K_{it}(2πny)² dy/y`, truncated at `Y` with the
/// `n = 1` term carrying the tail.
pub fn hecke_norm_sqr(datum: &SpectralDatum, opts: NormOptions) -> Result<f64> {
    let t = datum.t;
    let a = datum.coeffs();
    let dens = opts.density.max(0.25);
    let height = opts.height.unwrap_or(t / (2.0 * PI) + 3.0).max(1.0);
    let y_low = 3f64.sqrt() / 2.0;
    check_terms(datum, y_low)?;
    let panels = |base: f64| (base * dens).ceil().max(1.0) as usize;

    let cap_nodes = kronrod_nodes(y_low, 1.0, panels(2.0 + t / 15.0));
    let cap: Vec<f64> = cap_nodes
        .par_iter()
        .map(|&(y, wy)| -> Result<f64> {
            let terms = required_terms(t, y);
            let k = bessel_column(t, y, terms)?;
            let x0 = (1.0 - y * y).max(0.0).sqrt();
            let xs = kronrod_nodes(x0, 0.5, panels(2.0 + terms as f64 / 2.0));
            let inner: f64 = xs
                .iter()
                .map(|&(x, wx)| {
                    let f: f64 = (0..terms).map(|j| a[j] * k[j] * trig(datum.parity, 2.0 * PI * (j + 1) as f64 * x)).sum();
                    wx * f * f
                })
                .sum();
            // |φ|² = y f², dμ = dx dy / y², and the region is symmetric in x
            Ok(2.0 * wy * inner / y)
        })
        .collect::<Result<_>>()?;

    let rect_nodes = kronrod_nodes(1.0, height, panels(4.0 + (height - 1.0) * t / 2.0));
    let rect: Vec<f64> = rect_nodes
        .par_iter()
        .map(|&(y, wy)| -> Result<f64> {
            let terms = required_terms(t, y).min(a.len());
            let k = bessel_column(t, y, terms)?;
            let s: f64 = (0..terms).map(|j| a[j] * a[j] * k[j] * k[j]).sum();
            Ok(2.0 * wy * s / y)
        })
        .collect::<Result<_>>()?;

    let tail = quad::integrate(
        |y| {
            let k = bessel_k_imag(t, 2.0 * PI * y).map(|v| v.value).unwrap_or(0.0);
            2.0 * k * k / y
        },
        height,
        height + (t + 60.0) / (2.0 * PI),
        quad::QuadOptions { abs_tol: 0.0, rel_tol: 1e-10, max_intervals: 2000 },
    )?;

    Ok(cap.iter().sum::<f64>() + rect.iter().sum::<f64>() + tail.value)
}

/// Fills in every missing `l2norm`.
pub fn normalize_dataset(data: &SpectralDataset) -> Result<SpectralDataset> {
    data.map_forms(|f| match f.l2norm {
        Some(_) => Ok(f.clone()),
        None => Ok(f.clone().with_l2norm(normalize_l2(f)?)),
    })
}
