//! Adaptive Gauss–Kronrod quadrature on finite intervals.

use crate::error::{Error, Result};

const XGK: [f64; 8] = [
    0.991_455_371_120_812_639_206_854_697_526_329,
    0.949_107_912_342_758_524_526_189_684_047_851,
    0.864_864_423_359_769_072_789_712_788_640_926,
    0.741_531_185_599_394_439_863_864_773_280_788,
    0.586_087_235_467_691_130_294_144_845_693_013,
    0.405_845_151_377_397_166_906_606_412_076_961,
    0.207_784_955_007_898_467_600_689_403_773_245,
    0.0,
];
const WGK: [f64; 8] = [
    0.022_935_322_010_529_224_963_732_008_058_970,
    0.063_092_092_629_978_553_290_700_663_189_204,
    0.104_790_010_322_250_183_839_876_322_541_518,
    0.140_653_259_715_525_918_745_189_590_510_238,
    0.169_004_726_639_267_902_826_583_426_598_550,
    0.190_350_578_064_785_409_913_256_402_421_014,
    0.204_432_940_075_298_892_414_161_999_234_649,
    0.209_482_141_084_727_828_012_999_174_891_714,
];
const WG: [f64; 4] = [
    0.129_484_966_168_869_693_270_611_432_679_082,
    0.279_705_391_489_276_667_901_467_771_423_780,
    0.381_830_050_505_118_944_950_369_775_488_975,
    0.417_959_183_673_469_387_755_102_040_816_327,
];

#[derive(Debug, Clone, Copy)]
pub struct QuadOptions {
    pub abs_tol: f64,
    pub rel_tol: f64,
    /// Maximum number of subintervals kept in the partition.
    pub max_intervals: usize,
}

impl Default for QuadOptions {
    fn default() -> Self {
        Self { abs_tol: 0.0, rel_tol: 1e-12, max_intervals: 2000 }
    }
}

impl QuadOptions {
    pub fn rel(rel_tol: f64) -> Self {
        Self { rel_tol, ..Self::default() }
    }
}

#[derive(Debug, Clone, Copy)]
pub struct QuadValue {
    pub value: f64,
    pub error: f64,
    pub evals: usize,
}

/// One 15-point Kronrod panel: (kronrod estimate, |kronrod - gauss|).
pub fn gk15<F: Fn(f64) -> f64>(f: &F, a: f64, b: f64) -> (f64, f64) {
    let center = 0.5 * (a + b);
    let half = 0.5 * (b - a);
    let fc = f(center);
    let mut kron = fc * WGK[7];
    let mut gauss = fc * WG[3];
    for j in 0..7 {
        let dx = half * XGK[j];
        let pair = f(center - dx) + f(center + dx);
        kron += WGK[j] * pair;
        if j % 2 == 1 {
            gauss += WG[j / 2] * pair;
        }
    }
    (kron * half, ((kron - gauss) * half).abs())
}

/// Nodes and weights of the composite 15-point Kronrod rule with `panels`
/// equal panels on `[a, b]`.
pub fn kronrod_nodes(a: f64, b: f64, panels: usize) -> Vec<(f64, f64)> {
    let width = (b - a) / panels as f64;
    let half = 0.5 * width;
    let mut out = Vec::with_capacity(15 * panels);
    for p in 0..panels {
        let center = a + (p as f64 + 0.5) * width;
        out.push((center, WGK[7] * half));
        for j in 0..7 {
            out.push((center - half * XGK[j], WGK[j] * half));
            out.push((center + half * XGK[j], WGK[j] * half));
        }
    }
    out
}

struct Panel {
    a: f64,
    b: f64,
    value: f64,
    error: f64,
}

/// Globally adaptive Gauss–Kronrod: repeatedly bisects the panel with the
/// largest error estimate until `error <= max(abs_tol, rel_tol*|value|)`.
pub fn integrate<F: Fn(f64) -> f64>(f: F, a: f64, b: f64, opts: QuadOptions) -> Result<QuadValue> {
    if a == b {
        return Ok(QuadValue { value: 0.0, error: 0.0, evals: 0 });
    }
    let (v, e) = gk15(&f, a, b);
    let mut panels = vec![Panel { a, b, value: v, error: e }];
    let mut evals = 15;
    loop {
        let value: f64 = panels.iter().map(|p| p.value).sum();
        let error: f64 = panels.iter().map(|p| p.error).sum();
        if !value.is_finite() {
            return Err(Error::NonConvergence(format!("non-finite integrand on [{a}, {b}]")));
        }
        let target = opts.abs_tol.max(opts.rel_tol * value.abs());
        if error <= target || error < 1e-300 {
            return Ok(QuadValue { value, error, evals });
        }
        if panels.len() >= opts.max_intervals {
            return Err(Error::NonConvergence(format!(
                "quadrature on [{a}, {b}] stuck at error {error:e} (target {target:e})"
            )));
        }
        let (idx, _) = panels
            .iter()
            .enumerate()
            .max_by(|x, y| x.1.error.total_cmp(&y.1.error))
            .expect("nonempty");
        let p = panels.swap_remove(idx);
        let mid = 0.5 * (p.a + p.b);
        if mid <= p.a || mid >= p.b {
            // Panel cannot be split further in floating point.
            return Err(Error::NonConvergence(format!("interval exhausted near {mid}")));
        }
        let (v1, e1) = gk15(&f, p.a, mid);
        let (v2, e2) = gk15(&f, mid, p.b);
        evals += 30;
        panels.push(Panel { a: p.a, b: mid, value: v1, error: e1 });
        panels.push(Panel { a: mid, b: p.b, value: v2, error: e2 });
    }
}

/// Integrates `∫_a^b f(t) (b - t)^{alpha-1} dt` by the substitution
/// `b - t = v^{1/alpha}`, which removes the endpoint singularity:
/// the integral becomes `(1/alpha) ∫_0^{(b-a)^alpha} f(b - v^{1/alpha}) dv`.
pub fn integrate_weakly_singular<F: Fn(f64) -> f64>(
    f: F,
    a: f64,
    b: f64,
    alpha: f64,
    opts: QuadOptions,
) -> Result<QuadValue> {
    let top = (b - a).powf(alpha);
    let inv = 1.0 / alpha;
    let r = integrate(|v| f(b - v.powf(inv)), 0.0, top, opts)?;
    Ok(QuadValue { value: r.value * inv, error: r.error * inv, evals: r.evals })
}
