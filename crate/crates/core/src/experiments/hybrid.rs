//! Window variances of `e_α` with `α` shrinking as the window grows.

use serde::Serialize;

use super::moments::{window_variance, Window};
use super::sampling::{distances, error_from_distances, integrate_series, GridSpec};
use crate::error::{Error, Result};
use crate::fracint::{FracOrder, DEFAULT_STEP};
use crate::hyperbolic::Point;

/// Largest accepted value of `1/(α e^{2Tα})`.
pub const DEFAULT_CONDITION_BOUND: f64 = 0.05;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Schedule {
    /// `α = 1/√T`
    InvSqrt,
    /// `α = 1/T`
    Inv,
}

impl Schedule {
    pub fn alpha(self, t: f64) -> f64 {
        match self {
            Schedule::InvSqrt => 1.0 / t.sqrt(),
            Schedule::Inv => 1.0 / t,
        }
    }

    /// `1 / (α(T) e^{2Tα(T)})`
    pub fn condition(self, t: f64) -> f64 {
        let a = self.alpha(t);
        1.0 / (a * (2.0 * t * a).exp())
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct HybridOptions {
    pub window: Window,
    pub step: f64,
    pub condition_bound: f64,
}

impl Default for HybridOptions {
    fn default() -> Self {
        Self { window: Window::Doubling, step: DEFAULT_STEP, condition_bound: DEFAULT_CONDITION_BOUND }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct HybridReport {
    #[serde(rename = "T")]
    pub t: Vec<f64>,
    pub alpha: Vec<f64>,
    pub condition: Vec<f64>,
    pub variance: Vec<f64>,
    pub max: f64,
}

/// Checks the schedule at every `T` before any lattice work.
pub fn check_schedule(schedule: Schedule, ts: &[f64], bound: f64) -> Result<()> {
    for &t in ts {
        if !(t > 0.0) {
            return Err(Error::InvalidInput(format!("window parameter {t} must be positive")));
        }
        let c = schedule.condition(t);
        if !(c <= bound) {
            return Err(Error::ScheduleViolation { t, value: c, bound });
        }
        FracOrder::new(schedule.alpha(t))?;
    }
    Ok(())
}

pub fn hybrid_run(z: Point, w: Point, schedule: Schedule, ts: &[f64], opts: HybridOptions) -> Result<HybridReport> {
    if ts.is_empty() {
        return Err(Error::InvalidInput("empty T list".into()));
    }
    check_schedule(schedule, ts, opts.condition_bound)?;
    let reach = ts.iter().map(|&t| opts.window.bounds(t).1).fold(0.0, f64::max);
    let grid = GridSpec::new(reach, opts.step)?;
    let e = error_from_distances(&distances(z, w, reach)?, grid)?;
    let mut out = HybridReport { t: Vec::new(), alpha: Vec::new(), condition: Vec::new(), variance: Vec::new(), max: 0.0 };
    for &t in ts {
        let order = FracOrder::new(schedule.alpha(t))?;
        let v = window_variance(&integrate_series(&e, order), t, opts.window)?;
        out.t.push(t);
        out.alpha.push(order.alpha());
        out.condition.push(schedule.condition(t));
        out.variance.push(v);
        out.max = out.max.max(v);
    }
    Ok(out)
}
