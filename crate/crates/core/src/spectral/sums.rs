//! Spectral sums over the cusp forms: amplitudes `b_j`, the main terms
//! `M` and `M_α`, the variance `V_α` and the almost periodic model `f_α`.

use std::f64::consts::PI;

use num_complex::Complex64;
use rayon::prelude::*;

use super::data::SpectralDataset;
use super::maass::maass_value;
use super::transform::r_alpha;
use crate::error::Result;
use crate::fracint::{FracOrder, SampledSeries};
use crate::hyperbolic::Point;
use crate::special::{gamma, ln_gamma};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Amplitude {
    pub t: f64,
    /// `Σ φ_j(z) conj(φ_j(w))` over the eigenspace of `t`.
    pub b: Complex64,
}

/// One amplitude per eigenspace of the dataset.
pub fn amplitude(data: &SpectralDataset, z: &Point, w: &Point) -> Result<Vec<Amplitude>> {
    data.eigenspaces()
        .par_iter()
        .map(|space| {
            let mut b = Complex64::new(0.0, 0.0);
            for f in space.iter() {
                b += maass_value(f, z)? * maass_value(f, w)?;
            }
            Ok(Amplitude { t: space[0].t, b })
        })
        .collect()
}

/// Spectral data entering the main term beyond the volume.
#[derive(Debug, Clone, PartialEq)]
pub struct MainTermData {
    pub volume: f64,
    /// `(τ, b)` for small eigenvalues `λ = 1/4 - τ²`, `0 < τ < 1/2`.
    pub small: Vec<(f64, f64)>,
    /// `Σ φ_j(z) conj(φ_j(w))` over eigenvalue exactly `1/4`.
    pub quarter: f64,
    /// `Σ_𝔞 E_𝔞(z, 1/2) conj(E_𝔞(w, 1/2))`.
    pub eisenstein_half: f64,
}

impl MainTermData {
    /// PSL(2, ℤ): volume `π/3`, no small eigenvalues, and `E(z, 1/2) ≡ 0`.
    pub fn modular() -> Self {
        Self { volume: PI / 3.0, small: Vec::new(), quarter: 0.0, eisenstein_half: 0.0 }
    }
}

/// `M(s, z, w)`.
pub fn main_term(s: f64, data: &MainTermData) -> f64 {
    let mut m = PI * s.exp() / data.volume;
    for &(tau, b) in &data.small {
        m += PI.sqrt() * (ln_gamma(tau) - ln_gamma(1.5 + tau) + s * (0.5 + tau)).exp() * b;
    }
    let half = (0.5 * s).exp();
    m += 4.0 * (s + 2.0 * (2f64.ln() - 1.0)) * half * data.quarter;
    m + half * data.eisenstein_half
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MainTermAlpha {
    pub value: f64,
    /// `1/(Γ(α) s^{1-α})`, the size of the neglected terms up to a constant.
    pub error_scale: f64,
    /// `error_scale` times the constant of the volume term, `2π/vol`.
    pub error_budget: f64,
}

/// `M_α(s)`, the α-integrated normalized main term.
pub fn main_term_alpha(s: f64, data: &MainTermData, order: FracOrder) -> MainTermAlpha {
    let a = order.alpha();
    let mut m = PI * (0.5 * s).exp() * 2f64.powf(a) / data.volume;
    for &(tau, b) in &data.small {
        m += PI.sqrt() * (ln_gamma(tau) - ln_gamma(1.5 + tau) + s * tau).exp() / tau.powf(a) * b;
    }
    let sa = s.powf(a);
    m += 4.0 * (sa * s / gamma(a + 2.0) + 2.0 * (2f64.ln() - 1.0) * sa / gamma(a + 1.0)) * data.quarter;
    m += sa / gamma(a + 1.0) * data.eisenstein_half;
    let error_scale = 1.0 / (gamma(a) * s.powf(1.0 - a));
    // I_α(e^{βx})(s) = e^{βs}/β^α - 1/(βΓ(α)s^{1-α}) + ..., β = 1/2
    MainTermAlpha { value: m, error_scale, error_budget: 2.0 * PI / data.volume * error_scale }
}

/// `2π |Γ(it)|² / (t^{2α} |Γ(3/2 + it)|²)`; equals `|r_α(t)|²/2`.
pub fn variance_weight(t: f64, order: FracOrder) -> f64 {
    let g = crate::special::ln_gamma_complex(Complex64::new(0.0, t)).unwrap().re
        - crate::special::ln_gamma_complex(Complex64::new(1.5, t)).unwrap().re;
    2.0 * PI * (2.0 * g).exp() / t.abs().powf(2.0 * order.alpha())
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct VarianceSum {
    pub value: f64,
    /// Bound on the omitted terms from the local Weyl law and `|b_j| ≤ C t_j`.
    pub tail_bound: f64,
    /// Omitted terms under the fitted growth `Σ_{t_j ≤ u} |b_j|² ≈ K u²`;
    /// a diagnostic, not a bound.
    pub tail_estimate: f64,
    /// Forms that entered the partial sum.
    pub terms: usize,
}

/// Constants controlling the spectral tail, measured on a set of amplitudes.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TailModel {
    /// `C_W` in `Σ_{t_j ≤ u} |b_j| ≤ C_W u²`.
    pub weyl: f64,
    /// `C_b` in `|b_j| ≤ C_b t_j`.
    pub amplitude: f64,
    /// `K` in `Σ_{t_j ≤ u} |b_j|² ≈ K u²`.
    pub fourth_moment: f64,
}

impl TailModel {
    /// Sups of `Σ|b_j|/u²`, `|b_j|/t_j` and `Σ|b_j|²/u²` over `u = t_j ≥ u_min`.
    pub fn fit(amps: &[Amplitude], u_min: f64) -> Self {
        let (mut cum1, mut cum2) = (0.0, 0.0);
        let mut m = Self { weyl: 0.0, amplitude: 0.0, fourth_moment: 0.0 };
        for a in amps {
            cum1 += a.b.norm();
            cum2 += a.b.norm_sqr();
            m.amplitude = m.amplitude.max(a.b.norm() / a.t);
            if a.t >= u_min {
                let u2 = a.t * a.t;
                m.weyl = m.weyl.max(cum1 / u2);
                m.fourth_moment = m.fourth_moment.max(cum2 / u2);
            }
        }
        m
    }

    /// `2π Σ_{t_j > T} t_j^{-3-2α} |b_j|²` is at most
    /// `2π C_b Σ t_j^{-2-2α} |b_j|`, and partial summation against
    /// `C_W u²` gives `2π C_b C_W (2 + 2α) T^{-2α} / (2α)`. The weight
    /// `u^{-3-2α}` dominates `|Γ(iu)/Γ(3/2+iu)|² u^{-2α} = u^{-2α}/(u(u² + 1/4))`.
    pub fn tail_bound(&self, t_max: f64, order: FracOrder) -> f64 {
        let a = order.alpha();
        2.0 * PI * self.amplitude * self.weyl * (2.0 + 2.0 * a) * t_max.powf(-2.0 * a) / (2.0 * a)
    }

    /// The same partial summation against `K u²` for `Σ|b_j|²`:
    /// `2π K (3 + 2α) T^{-1-2α} / (1 + 2α)`.
    pub fn tail_estimate(&self, t_max: f64, order: FracOrder) -> f64 {
        let a = order.alpha();
        2.0 * PI * self.fourth_moment * (3.0 + 2.0 * a) * t_max.powf(-1.0 - 2.0 * a) / (1.0 + 2.0 * a)
    }
}

/// Partial sum of `V_α` over `t_j ≤ t_max` and the size of the rest. The
/// rest starts at `t_max` or at the last available `t_j`, whichever is lower.
pub fn spectral_variance_from(amps: &[Amplitude], order: FracOrder, t_max: f64, tail: &TailModel) -> VarianceSum {
    let reach = amps.iter().map(|a| a.t).fold(0.0, f64::max);
    let cutoff = if amps.is_empty() { t_max } else { t_max.min(reach) };
    let terms: Vec<f64> = amps
        .iter()
        .filter(|a| a.t <= t_max)
        .map(|a| variance_weight(a.t, order) * a.b.norm_sqr())
        .collect();
    VarianceSum {
        value: terms.iter().sum(),
        tail_bound: tail.tail_bound(cutoff, order),
        tail_estimate: tail.tail_estimate(cutoff, order),
        terms: terms.len(),
    }
}

/// `V_α` at `(z, w)` from a dataset, with the tail constants measured on the
/// whole dataset.
pub fn spectral_variance(data: &SpectralDataset, z: &Point, w: &Point, order: FracOrder, t_max: f64) -> Result<VarianceSum> {
    let amps = amplitude(data, z, w)?;
    let model = TailModel::fit(&amps, TAIL_FIT_START);
    Ok(spectral_variance_from(&amps, order, t_max, &model))
}

/// Tail constants are fitted over `t_j` at least this large.
pub const TAIL_FIT_START: f64 = 15.0;

/// `f_α(s) = Σ Re(r_α(t_j) e^{i t_j s}) b_j`.
pub fn f_alpha_sum(amps: &[Amplitude], order: FracOrder, s: f64, t_max: f64) -> Result<f64> {
    let mut acc = 0.0;
    for a in amps.iter().filter(|a| a.t <= t_max) {
        acc += (r_alpha(a.t, order)? * Complex64::from_polar(1.0, a.t * s)).re * a.b.re;
    }
    Ok(acc)
}

/// `(1/2) Σ |b_j r_α(t_j)|²`, the mean square of `f_α`.
pub fn f_alpha_mean_square(amps: &[Amplitude], order: FracOrder, t_max: f64) -> Result<f64> {
    let mut acc = 0.0;
    for a in amps.iter().filter(|a| a.t <= t_max) {
        acc += 0.5 * (r_alpha(a.t, order)? * a.b.re).norm_sqr();
    }
    Ok(acc)
}

/// Samples `f_α` at `start + k·step`, `k < len`.
///
/// Each block of samples starts from an exact phase and advances by
/// complex rotation, so the output does not depend on thread count.
pub fn f_alpha_series(
    amps: &[Amplitude],
    order: FracOrder,
    t_max: f64,
    start: f64,
    step: f64,
    len: usize,
) -> Result<SampledSeries> {
    const BLOCK: usize = 2048;
    let coef: Vec<(f64, Complex64)> = amps
        .iter()
        .filter(|a| a.t <= t_max)
        .map(|a| Ok((a.t, r_alpha(a.t, order)? * a.b.re)))
        .collect::<Result<_>>()?;
    let blocks = len.div_ceil(BLOCK);
    let values: Vec<f64> = (0..blocks)
        .into_par_iter()
        .flat_map_iter(|blk| {
            let k0 = blk * BLOCK;
            let n = BLOCK.min(len - k0);
            let mut out = vec![0.0; n];
            let s0 = start + k0 as f64 * step;
            for &(t, c) in &coef {
                let rot = Complex64::from_polar(1.0, t * step);
                let mut z = c * Complex64::from_polar(1.0, t * s0);
                for v in out.iter_mut() {
                    *v += z.re;
                    z *= rot;
                }
            }
            out
        })
        .collect();
    SampledSeries::new(start, step, values)
}
