//! Counting `N(s, z, w) = #{γ ∈ PSL(2, ℤ) : d(z, γw) ≤ s}`.
//!
//! Elements sharing a bottom row `(c, d)` differ by a power of `T`, so the
//! ball meets each such family in an interval of translations. Summing the
//! interval lengths over all admissible rows gives the count.

use std::io::{Read, Write};

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::hyperbolic::{distance_from_u, mobius_apply, point_pair_u, GroupElement, Point};

/// Relative tolerance of the comparison `1 + 2u ≤ cosh s`.
pub const BOUNDARY_GUARD: f64 = 1e-12;
/// Inflation of the bottom-row cutoff.
const ROW_MARGIN: f64 = 0.01;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum GroupTag {
    #[default]
    Modular,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BallSpec {
    pub z: Point,
    pub w: Point,
    pub s: f64,
    pub group: GroupTag,
}

impl BallSpec {
    pub fn new(z: Point, w: Point, s: f64) -> Result<Self> {
        if !(s >= 0.0) || !s.is_finite() {
            return Err(Error::NegativeRadius(s));
        }
        Ok(Self { z, w, s, group: GroupTag::Modular })
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LatticeConfig {
    pub s_max: f64,
    /// Largest number of distances `list_distances` will materialize.
    pub memory_cap: u64,
}

impl Default for LatticeConfig {
    fn default() -> Self {
        Self { s_max: 30.0, memory_cap: 100_000_000 }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct CountReport {
    pub count: u64,
    /// Elements whose distance fell within the boundary guard of `s`.
    pub ties: u64,
    /// Bottom rows examined.
    pub rows: u64,
}

impl std::ops::Add for CountReport {
    type Output = Self;
    fn add(self, o: Self) -> Self {
        Self { count: self.count + o.count, ties: self.ties + o.ties, rows: self.rows + o.rows }
    }
}

/// Sorted distances `d(z, γw) ≤ s` with multiplicity.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct DistanceMultiset {
    distances: Vec<f64>,
}

impl DistanceMultiset {
    pub fn from_sorted(distances: Vec<f64>) -> Result<Self> {
        if distances.windows(2).any(|p| !(p[0] <= p[1])) || distances.iter().any(|d| !(*d >= 0.0)) {
            return Err(Error::InvalidInput("distances must be sorted and nonnegative".into()));
        }
        Ok(Self { distances })
    }

    pub fn as_slice(&self) -> &[f64] {
        &self.distances
    }

    pub fn count(&self) -> usize {
        self.distances.len()
    }

    /// Number of entries `≤ s`.
    pub fn count_within(&self, s: f64) -> usize {
        self.distances.partition_point(|&d| d <= s)
    }

    /// Writes a little-endian `u64` count followed by the `f64` entries.
    pub fn write_to<W: Write>(&self, mut out: W) -> Result<()> {
        out.write_all(&(self.distances.len() as u64).to_le_bytes())?;
        for d in &self.distances {
            out.write_all(&d.to_le_bytes())?;
        }
        Ok(())
    }

    pub fn read_from<R: Read>(mut input: R) -> Result<Self> {
        let mut word = [0u8; 8];
        input.read_exact(&mut word)?;
        let n = u64::from_le_bytes(word) as usize;
        let mut distances = Vec::with_capacity(n.min(1 << 24));
        for _ in 0..n {
            input.read_exact(&mut word)?;
            distances.push(f64::from_le_bytes(word));
        }
        Self::from_sorted(distances)
    }
}

fn gcd(mut a: i64, mut b: i64) -> i64 {
    a = a.abs();
    b = b.abs();
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

/// Inverse of `d` modulo `c > 1`, in `[0, c)`.
fn inverse_mod(d: i64, c: i64) -> i64 {
    let (mut r0, mut r1) = (d.rem_euclid(c), c);
    let (mut s0, mut s1) = (1i64, 0i64);
    while r1 != 0 {
        let q = r0 / r1;
        (r0, r1) = (r1, r0 - q * r1);
        (s0, s1) = (s1, s0 - q * s1);
    }
    s0.rem_euclid(c)
}

fn to_i64(v: f64) -> Result<i64> {
    if v.abs() < 4.0e18 {
        Ok(v as i64)
    } else {
        Err(Error::IntegerOverflow("row enumeration bound"))
    }
}

/// The family `T^k γ₀` for one bottom row: `γ₀w = x0 + i·y0`.
#[derive(Debug, Clone, Copy)]
struct Row {
    x0: f64,
    y0: f64,
}

struct Ball {
    z: Point,
    w: Point,
    /// `(cosh s - 1) / 2`
    u_max: f64,
    /// `u` tolerance from the boundary guard.
    u_guard: f64,
    /// Cutoff on `|cw + d|²`.
    q_max: f64,
}

impl Ball {
    fn new(spec: &BallSpec, cfg: &LatticeConfig) -> Result<Self> {
        if spec.s > cfg.s_max {
            return Err(Error::RadiusTooLarge { s: spec.s, max: cfg.s_max });
        }
        let (z, w, s) = (spec.z, spec.w, spec.s);
        let u_max = (0.5 * s).sinh().powi(2);
        Ok(Self {
            z,
            w,
            u_max,
            u_guard: 0.5 * BOUNDARY_GUARD * s.cosh(),
            q_max: w.y() * s.exp() / z.y() * (1.0 + ROW_MARGIN),
        })
    }

    fn row(&self, c: i64, d: i64) -> Result<Row> {
        let (xw, yw) = (self.w.x(), self.w.y());
        if c == 0 {
            return Ok(Row { x0: xw, y0: yw });
        }
        let a = if c == 1 { 0 } else { inverse_mod(d, c) };
        // γ₀w = a/c - 1/(c(cw + d))
        let (cf, df) = (c as f64, d as f64);
        let re = cf * xw + df;
        let q = re * re + (cf * yw).powi(2);
        Ok(Row { x0: a as f64 / cf - re / (cf * q), y0: yw / q })
    }

    /// Range of `k` with `u(z, γ₀w + k) ≤ u_max + u_guard`, plus the tie count.
    fn interval(&self, row: Row) -> Option<(i64, i64, u64)> {
        let (xz, yz) = (self.z.x(), self.z.y());
        let dy = yz - row.y0;
        let scale = 4.0 * yz * row.y0;
        let disc = scale * (self.u_max + self.u_guard) - dy * dy;
        if disc < 0.0 {
            return None;
        }
        let centre = xz - row.x0;
        let half = disc.sqrt();
        let lo = (centre - half).ceil() as i64;
        let hi = (centre + half).floor() as i64;
        if lo > hi {
            return None;
        }
        let u_of = |k: i64| {
            let dx = centre - k as f64;
            (dx * dx + dy * dy) / scale
        };
        let is_tie = |k: i64| (u_of(k) - self.u_max).abs() <= self.u_guard;
        let mut ties = is_tie(lo) as u64;
        if hi != lo {
            ties += is_tie(hi) as u64;
        }
        Some((lo, hi, ties))
    }

    fn c_max(&self) -> Result<i64> {
        to_i64((self.q_max.sqrt() / self.w.y()).floor())
    }

    /// Admissible `d` for a given `c ≥ 1`.
    fn d_range(&self, c: i64) -> Result<Option<(i64, i64)>> {
        let cf = c as f64;
        let rem = self.q_max - (cf * self.w.y()).powi(2);
        if rem < 0.0 {
            return Ok(None);
        }
        let r = rem.sqrt();
        let mid = -cf * self.w.x();
        Ok(Some((to_i64((mid - r).ceil())?, to_i64((mid + r).floor())?)))
    }

    /// Runs `visit` over every admissible row `c`, in parallel over `c`.
    fn fold_rows<T, F>(&self, visit: F) -> Result<Vec<T>>
    where
        T: Send,
        F: Fn(i64, i64, Row) -> Result<Option<T>> + Sync,
    {
        let c_max = self.c_max()?;
        let first = visit(0, 1, self.row(0, 1)?)?;
        let rest: Result<Vec<Vec<T>>> = (1..=c_max)
            .into_par_iter()
            .map(|c| {
                let mut out = Vec::new();
                let Some((d_lo, d_hi)) = self.d_range(c)? else { return Ok(out) };
                for d in d_lo..=d_hi {
                    if gcd(c, d) != 1 {
                        continue;
                    }
                    // b = (ad - 1)/c must fit as well
                    d.checked_mul(c).ok_or(Error::IntegerOverflow("bottom row product"))?;
                    if let Some(v) = visit(c, d, self.row(c, d)?)? {
                        out.push(v);
                    }
                }
                Ok(out)
            })
            .collect();
        let mut all: Vec<T> = first.into_iter().collect();
        all.extend(rest?.into_iter().flatten());
        Ok(all)
    }
}

/// `N(s, z, w)` with default configuration.
pub fn count_ball(spec: &BallSpec) -> Result<u64> {
    Ok(count_ball_report(spec, &LatticeConfig::default())?.count)
}

/// Count together with tie and row diagnostics.
pub fn count_ball_report(spec: &BallSpec, cfg: &LatticeConfig) -> Result<CountReport> {
    let ball = Ball::new(spec, cfg)?;
    let parts = ball.fold_rows(|_, _, row| {
        Ok(Some(match ball.interval(row) {
            Some((lo, hi, ties)) => CountReport { count: (hi - lo + 1) as u64, ties, rows: 1 },
            None => CountReport { rows: 1, ..Default::default() },
        }))
    })?;
    Ok(parts.into_iter().fold(CountReport::default(), |a, b| a + b))
}

/// All distances `d(z, γw) ≤ s`, sorted, with multiplicity.
pub fn list_distances(spec: &BallSpec) -> Result<DistanceMultiset> {
    list_distances_with(spec, &LatticeConfig::default())
}

pub fn list_distances_with(spec: &BallSpec, cfg: &LatticeConfig) -> Result<DistanceMultiset> {
    // N(s) ~ 3e^s; skip the exact count when the ball is clearly too large
    let expected = 3.0 * spec.s.exp();
    if expected > 2.0 * cfg.memory_cap as f64 {
        return Err(Error::MemoryBudgetExceeded { count: expected as u64, budget: cfg.memory_cap });
    }
    let report = count_ball_report(spec, cfg)?;
    if report.count > cfg.memory_cap {
        return Err(Error::MemoryBudgetExceeded { count: report.count, budget: cfg.memory_cap });
    }
    let ball = Ball::new(spec, cfg)?;
    let (xz, yz) = (ball.z.x(), ball.z.y());
    let chunks = ball.fold_rows(|_, _, row| {
        Ok(ball.interval(row).map(|(lo, hi, _)| {
            let dy = yz - row.y0;
            let scale = 4.0 * yz * row.y0;
            (lo..=hi)
                .map(|k| {
                    let dx = xz - row.x0 - k as f64;
                    distance_from_u((dx * dx + dy * dy) / scale).min(spec.s)
                })
                .collect::<Vec<f64>>()
        }))
    })?;
    let mut distances: Vec<f64> = chunks.into_iter().flatten().collect();
    distances.par_sort_unstable_by(f64::total_cmp);
    Ok(DistanceMultiset { distances })
}

/// Smallest entry bound guaranteed to contain every `γ` in the ball.
///
/// With `g_z i = z`, `M = g_z⁻¹ γ g_w` satisfies `‖M‖²_F = 2 cosh d(z, γw)`, so
/// `max |entry of γ| ≤ ‖g_z‖_F ‖g_w⁻¹‖_F √(2 cosh s)`.
pub fn required_entry_bound(spec: &BallSpec) -> u64 {
    let f2 = spec.z.frame_norm_sqr() * spec.w.frame_norm_sqr();
    (f2 * 2.0 * spec.s.cosh() * (1.0 + BOUNDARY_GUARD)).sqrt().floor() as u64
}

/// Exhaustive count over all matrices with entries bounded by `entry_bound`.
pub fn brute_force_count(spec: &BallSpec, entry_bound: u64) -> Result<u64> {
    let required = required_entry_bound(spec);
    if entry_bound < required {
        return Err(Error::BoundInsufficient { given: entry_bound, required });
    }
    let b = i64::try_from(entry_bound).map_err(|_| Error::IntegerOverflow("entry bound"))?;
    if b > 3_000_000_000 {
        return Err(Error::IntegerOverflow("entry bound"));
    }
    let limit = spec.s.cosh() * (1.0 + BOUNDARY_GUARD);
    let inside = |g: GroupElement| 1.0 + 2.0 * point_pair_u(&spec.z, &mobius_apply(&g, &spec.w)) <= limit;
    let translations = (-b..=b).filter(|&k| inside(GroupElement::new(1, k, 0, 1).unwrap())).count() as u64;
    let rest: u64 = (1..=b)
        .into_par_iter()
        .map(|c| {
            let mut n = 0u64;
            for d in -b..=b {
                if gcd(c, d) != 1 {
                    continue;
                }
                for a in -b..=b {
                    let num = a * d - 1;
                    if num % c != 0 || (num / c).abs() > b {
                        continue;
                    }
                    if inside(GroupElement::new(a, num / c, c, d).unwrap()) {
                        n += 1;
                    }
                }
            }
            n
        })
        .sum();
    Ok(translations + rest)
}
