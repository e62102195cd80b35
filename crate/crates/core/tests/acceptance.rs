//! Acceptance criteria, one line each.
//!
//! Every criterion is evaluated and printed as PASS or FAIL with the
//! measured quantities. The test itself fails when the set of failing
//! criteria differs from `EXPECTED_FAILURES`, so a regression and a
//! silently fixed shortfall both surface.

use std::io::Write;
use std::time::{Duration, Instant};

use num_complex::Complex64;
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

use hypcircle::constants::{FRAC_TRANSFORM_CONST_HALF, FRAC_TRANSFORM_CONST_QUARTER, HYBRID_VARIANCE_BOUND};
use hypcircle::experiments::distribution::{arcsine_cdf, ks_against, ks_two_sample, source_samples, DistributionSource};
use hypcircle::experiments::sampling::{distances, error_from_distances, integrate_series};
use hypcircle::experiments::scan::scan_series;
use hypcircle::experiments::{first_moment, hybrid_run, pointwise_scan, window_variance, GridSpec, HybridOptions, Schedule, Window};
use hypcircle::fracint::{frac_exp_reference, frac_integrate, FracOrder, SampledSeries};
use hypcircle::hyperbolic::Point;
use hypcircle::lattice::{brute_force_count, count_ball, required_entry_bound, BallSpec};
use hypcircle::special::gamma;
use hypcircle::spectral::sums::{amplitude, f_alpha_mean_square, f_alpha_series, spectral_variance_from, Amplitude, TailModel, TAIL_FIT_START};
use hypcircle::spectral::transform::{h_r_closed, shc_direct, shc_frac};
use hypcircle::spectral::{load_spectral_data, SpectralDataset};

/// Criteria that are reported as failing; the analysis for each is kept
/// with the project notes.
const EXPECTED_FAILURES: &[&str] = &["3", "6", "8"];

struct Outcome {
    id: &'static str,
    pass: bool,
    detail: String,
}

fn ord(a: f64) -> FracOrder {
    FracOrder::new(a).unwrap()
}

fn dataset() -> SpectralDataset {
    load_spectral_data(concat!(env!("CARGO_MANIFEST_DIR"), "/data/psl2z_maass.txt")).unwrap()
}

fn oracle_equivalence() -> Outcome {
    let start = Instant::now();
    let mut rng = StdRng::seed_from_u64(0x5eed_0001);
    let mut mismatches = 0;
    for _ in 0..100 {
        let z = Point::new(rng.gen_range(-0.5..0.5), rng.gen_range(0.4..2.5)).unwrap();
        let w = Point::new(rng.gen_range(-0.5..0.5), rng.gen_range(0.4..2.5)).unwrap();
        let spec = BallSpec::new(z, w, rng.gen_range(0.0..6.0)).unwrap();
        if count_ball(&spec).unwrap() != brute_force_count(&spec, required_entry_bound(&spec)).unwrap() {
            mismatches += 1;
        }
    }
    let n0 = count_ball(&BallSpec::new(Point::I, Point::I, 0.0).unwrap()).unwrap();
    let n1 = count_ball(&BallSpec::new(Point::I, Point::I, 1.0).unwrap()).unwrap();
    let elapsed = start.elapsed();
    Outcome {
        id: "1",
        pass: mismatches == 0 && n0 == 2 && n1 == 10 && elapsed < Duration::from_secs(60),
        detail: format!("{mismatches} mismatches in 100 specs, N(0,i,i)={n0}, N(1,i,i)={n1}, {:.1}s", elapsed.as_secs_f64()),
    }
}

fn counting_asymptotic() -> Outcome {
    let start = Instant::now();
    let ratio = |s: f64| count_ball(&BallSpec::new(Point::I, Point::I, s).unwrap()).unwrap() as f64 / (3.0 * s.exp());
    let (r12, r14) = (ratio(12.0), ratio(14.0));
    let elapsed = start.elapsed();
    Outcome {
        id: "2",
        pass: (0.95..=1.05).contains(&r12) && (0.97..=1.03).contains(&r14) && elapsed < Duration::from_secs(120),
        detail: format!("N(12)/3e^12 = {r12:.6}, N(14)/3e^14 = {r14:.6}, {:.1}s", elapsed.as_secs_f64()),
    }
}

fn fractional_closed_forms() -> Outcome {
    let h = 1.0 / 512.0;
    let n = 15 * 512 + 1;
    let series = |f: fn(f64) -> f64| SampledSeries::from_fn(0.0, h, n, f).unwrap();
    let (one, lin, ex) = (series(|_| 1.0), series(|x| x), series(f64::exp));
    let mut worst = [0.0f64; 3];
    let mut semigroup = 0.0f64;
    for a in [0.1, 0.25, 0.5, 0.75, 1.0] {
        let o = ord(a);
        let (i1, is, ie) = (frac_integrate(&one, o), frac_integrate(&lin, o), frac_integrate(&ex, o));
        for k in (512..n).step_by(8) {
            let s = k as f64 * h;
            let c1 = s.powf(a) / gamma(a + 1.0);
            let cs = s.powf(a + 1.0) / gamma(a + 2.0);
            let ce = frac_exp_reference(1.0, o, s).unwrap();
            worst[0] = worst[0].max((i1.values()[k] - c1).abs() / c1);
            worst[1] = worst[1].max((is.values()[k] - cs).abs() / cs);
            worst[2] = worst[2].max((ie.values()[k] - ce).abs() / ce);
        }
        for b in [0.1, 0.25, 0.5] {
            if a + b <= 1.0 {
                let two = frac_integrate(&frac_integrate(&ex, o), ord(b));
                let direct = frac_integrate(&ex, ord(a + b));
                for k in 512..n {
                    semigroup = semigroup.max((two.values()[k] - direct.values()[k]).abs() / direct.values()[k]);
                }
            }
        }
    }
    Outcome {
        id: "3",
        pass: worst.iter().all(|&e| e <= 1e-3) && semigroup <= 5e-3,
        detail: format!(
            "max rel err I(1) {:.2e}, I(s) {:.2e}, I(e^t) {:.2e} (limit 1e-3); semigroup {semigroup:.2e} (limit 5e-3)",
            worst[0], worst[1], worst[2]
        ),
    }
}

fn shc_cross_validation() -> Outcome {
    let mut worst = 0.0f64;
    for k in 0..20 {
        let s = 2.0 + 8.0 * k as f64 / 19.0;
        let mag = 0.5 * 100f64.powf(((k * 7) % 20) as f64 / 19.0);
        let t = if k % 2 == 0 { mag } else { -mag };
        let d = shc_direct(s, t).unwrap();
        let c = h_r_closed(s, Complex64::new(t, 0.0)).unwrap().value * (-0.5 * s).exp();
        worst = worst.max((d - c).abs() / d.abs());
    }
    let mut remainder = [0.0f64; 2];
    for (slot, a) in remainder.iter_mut().zip([0.25, 0.5]) {
        for j in 0..=38 {
            let t = 5.0 + 2.5 * j as f64;
            let f = shc_frac(10.0, t, ord(a)).unwrap();
            *slot = slot.max((f.value - f.asymptotic).abs() * t.powf(1.5 + a));
        }
    }
    Outcome {
        id: "4",
        pass: worst <= 1e-8 && remainder[0] <= FRAC_TRANSFORM_CONST_QUARTER && remainder[1] <= FRAC_TRANSFORM_CONST_HALF,
        detail: format!(
            "direct vs 2F1 max rel err {worst:.2e}; remainder constants {:.4} (pin {FRAC_TRANSFORM_CONST_QUARTER}) at α=1/4, {:.4} (pin {FRAC_TRANSFORM_CONST_HALF}) at α=1/2",
            remainder[0], remainder[1]
        ),
    }
}

fn synthetic_closed_loop(amps: &[Amplitude], forms: usize) -> Outcome {
    let start = Instant::now();
    let o = ord(0.25);
    let mean_square = f_alpha_mean_square(amps, o, f64::INFINITY).unwrap();
    let f = f_alpha_series(amps, o, f64::INFINITY, 1e5, 0.05, 2_000_001).unwrap();
    let v = window_variance(&f, 1e5, Window::Doubling).unwrap();
    let rel = (v - mean_square).abs() / mean_square;
    let elapsed = start.elapsed();
    Outcome {
        id: "5",
        pass: forms >= 20 && rel <= 0.01 && elapsed < Duration::from_secs(300),
        detail: format!("{forms} forms, window variance {v:.6} vs (1/2)Σ|b r|² {mean_square:.6}, rel {rel:.1e}, {:.1}s", elapsed.as_secs_f64()),
    }
}

fn variance_finiteness(amps: &[Amplitude]) -> Outcome {
    let model = TailModel::fit(amps, TAIL_FIT_START);
    let mut pass = true;
    let mut parts = Vec::new();
    for a in [0.25, 0.5, 0.75] {
        let v: Vec<_> = [20.0, 40.0, 60.0].iter().map(|&t| spectral_variance_from(amps, ord(a), t, &model)).collect();
        let diffs_ok = (v[2].value - v[0].value).abs() < v[0].tail_bound
            && (v[2].value - v[1].value).abs() < v[1].tail_bound
            && (v[1].value - v[0].value).abs() < v[0].tail_bound;
        let tail_ok = v[2].tail_bound <= 0.1 * v[2].value;
        pass &= diffs_ok && tail_ok;
        parts.push(format!(
            "α={a}: V20/40/60 = {:.4}/{:.4}/{:.4}, differences within tail bound {}, tail_bound(60) = {:.4} vs 0.1·V = {:.4}",
            v[0].value, v[1].value, v[2].value, diffs_ok, v[2].tail_bound, 0.1 * v[2].value
        ));
    }
    Outcome { id: "6", pass, detail: parts.join("; ") }
}

fn pointwise_bounds(e: &SampledSeries) -> Outcome {
    let mut pass = true;
    let mut parts = Vec::new();
    for a in [0.1, 0.25] {
        let r = scan_series(&integrate_series(e, ord(a)), ord(a)).unwrap();
        let ok = r.envelope.is_finite() && r.non_increasing(0.0);
        pass &= ok;
        parts.push(format!("α={a}: envelope {:.3}, non-increasing {ok}", r.envelope));
    }
    let r = scan_series(&integrate_series(e, ord(0.5)), ord(0.5)).unwrap();
    let per_s: Vec<f64> = r.scan_x.iter().zip(&r.scan_envelope).map(|(x, s)| s / x).collect();
    let ok = r.sup_over_s.is_finite() && per_s.last() <= per_s.first();
    pass &= ok;
    parts.push(format!("α=0.5: sup|e|/s ≤ {:.3}, bounded {ok}", r.sup_over_s));
    for a in [0.75, 0.9] {
        let r = scan_series(&integrate_series(e, ord(a)), ord(a)).unwrap();
        let ok = r.sup_abs.is_finite() && r.fitted_exponent <= 0.05;
        pass &= ok;
        parts.push(format!("α={a}: sup {:.3}, fitted exponent {:.4}", r.sup_abs, r.fitted_exponent));
    }
    Outcome { id: "7", pass, detail: parts.join("; ") }
}

fn first_moment_decay(e: &SampledSeries) -> Outcome {
    let ea = integrate_series(e, ord(0.25));
    let m: Vec<f64> = [6.0, 9.0, 12.0].iter().map(|&t| first_moment(&ea, t, Window::Initial).unwrap()).collect();
    let v12 = window_variance(&ea, 12.0, Window::Initial).unwrap();
    let decreasing = m[0].abs() > m[1].abs() && m[1].abs() > m[2].abs();
    let small = m[2].abs() <= 0.2 * v12.sqrt();
    Outcome {
        id: "8",
        pass: decreasing && small,
        detail: format!(
            "window [0,T]: first moments {:.4}, {:.4}, {:.4} at T=6,9,12 (decreasing {decreasing}); |m(12)| = {:.4} vs 0.2·√var = {:.4}",
            m[0],
            m[1],
            m[2],
            m[2].abs(),
            0.2 * v12.sqrt()
        ),
    }
}

fn limiting_distribution(data: &SpectralDataset, amps: &[Amplitude]) -> Outcome {
    let o = ord(0.25);
    let single = amps.iter().find(|a| a.b.norm() > 1e-6).copied().unwrap();
    let f = f_alpha_series(&[single], o, f64::INFINITY, 0.0, 0.05, 2_000_001).unwrap();
    let amp = (hypcircle::spectral::transform::r_alpha(single.t, o).unwrap() * single.b.re).norm();
    let ks_single = ks_against(f.values(), |x| arcsine_cdf(x, amp));

    let source = DistributionSource::Synthetic { data, z: Point::I, w: Point::I, order: o, horizon: 2e5 };
    let samples = source_samples(&source).unwrap();
    let (first, second) = samples.split_at(samples.len() / 2);
    let ks_halves = ks_two_sample(first, second);

    let scan = pointwise_scan(Point::I, Point::I, ord(0.75), 12.0).unwrap();
    let bound = scan.bound_at(14.0);
    let real = source_samples(&DistributionSource::Real { z: Point::I, w: Point::I, order: ord(0.75), t: 14.0 }).unwrap();
    let sup = real.iter().fold(0.0f64, |m, v| m.max(v.abs()));
    Outcome {
        id: "9",
        pass: ks_single <= 0.01 && ks_halves <= 0.02 && sup <= bound,
        detail: format!(
            "single-form KS to arcsine {ks_single:.2e} at t={:.4}; KS [0,L] vs [L,2L] {ks_halves:.2e}; α=0.75 sup on [0,14] {sup:.4} within bound {bound:.4} from s ≤ 12",
            single.t
        ),
    }
}

fn hybrid_schedule() -> Outcome {
    let opts = HybridOptions { window: Window::Initial, ..Default::default() };
    let r = hybrid_run(Point::I, Point::I, Schedule::InvSqrt, &[6.0, 9.0, 12.0], opts).unwrap();
    let cond_ok = r.t.iter().zip(&r.condition).filter(|(t, _)| **t >= 9.0).all(|(_, c)| *c <= 0.05);
    Outcome {
        id: "10",
        pass: r.max <= HYBRID_VARIANCE_BOUND && cond_ok,
        detail: format!(
            "window [0,T]: variances {:.4}, {:.4}, {:.4} (bound {HYBRID_VARIANCE_BOUND}); √T e^(-2√T) = {:.4}, {:.4}, {:.4}",
            r.variance[0], r.variance[1], r.variance[2], r.condition[0], r.condition[1], r.condition[2]
        ),
    }
}

#[test]
fn acceptance_criteria() {
    let data = dataset();
    let amps = amplitude(&data, &Point::I, &Point::I).unwrap();
    let e = error_from_distances(&distances(Point::I, Point::I, 14.0).unwrap(), GridSpec::new(14.0, 1.0 / 512.0).unwrap()).unwrap();

    let outcomes = vec![
        oracle_equivalence(),
        counting_asymptotic(),
        fractional_closed_forms(),
        shc_cross_validation(),
        synthetic_closed_loop(&amps, data.len()),
        variance_finiteness(&amps),
        pointwise_bounds(&e),
        first_moment_decay(&e),
        limiting_distribution(&data, &amps),
        hybrid_schedule(),
    ];

    // written around the test harness capture so the lines show in plain `cargo test`
    let mut out = std::io::stdout().lock();
    for o in &outcomes {
        writeln!(out, "criterion {:>2}: {} | {}", o.id, if o.pass { "PASS" } else { "FAIL" }, o.detail).unwrap();
    }
    let failing: Vec<&str> = outcomes.iter().filter(|o| !o.pass).map(|o| o.id).collect();
    writeln!(out, "acceptance: {} of {} criteria pass", outcomes.len() - failing.len(), outcomes.len()).unwrap();
    out.flush().unwrap();
    assert_eq!(failing, EXPECTED_FAILURES, "failing criteria changed");
}
