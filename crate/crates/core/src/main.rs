use std::fs::File;
use std::io::{BufRead, BufReader, BufWriter, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use num_complex::Complex64;
use serde_json::{json, Value};

use hypcircle::experiments::distribution::DistributionSource;
use hypcircle::experiments::{
    distribution_estimate, first_moment, hybrid_run, pointwise_scan, sample_e_alpha, sample_error, variance_report,
    window_variance, AlphaMethod, GridSpec, HybridOptions, Schedule, Window,
};
use hypcircle::fracint::{FracOrder, SampledSeries};
use hypcircle::hyperbolic::Point;
use hypcircle::lattice::{brute_force_count, count_ball, required_entry_bound, BallSpec};
use hypcircle::spectral::transform::{
    default_frac_step, h_r_closed, shc_direct, shc_frac_sampled, shc_leading, ShcSampler,
};
use hypcircle::spectral::load_spectral_data;
use hypcircle::{Error, Result};

#[derive(Parser)]
#[command(name = "hypcircle", version, about = "Hyperbolic lattice counting on the modular surface")]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Count `γ` with `d(z, γw) ≤ s`.
    Count {
        #[arg(long, default_value = "0,1", value_parser = parse_point, allow_hyphen_values = true)]
        z: Point,
        #[arg(long, default_value = "0,1", value_parser = parse_point, allow_hyphen_values = true)]
        w: Point,
        #[arg(long)]
        s: f64,
        /// Cross-check against brute-force enumeration.
        #[arg(long)]
        oracle: bool,
    },
    /// Sample `e(s)` or `e_α(s)` to CSV.
    ErrorTerm {
        #[arg(long, default_value = "0,1", value_parser = parse_point, allow_hyphen_values = true)]
        z: Point,
        #[arg(long, default_value = "0,1", value_parser = parse_point, allow_hyphen_values = true)]
        w: Point,
        #[arg(long)]
        smax: f64,
        #[arg(long, default_value_t = 1.0 / 512.0)]
        step: f64,
        #[arg(long)]
        alpha: Option<f64>,
        #[arg(long, value_enum, default_value_t = MethodArg::Grid)]
        method: MethodArg,
        #[arg(long)]
        out: PathBuf,
    },
    /// Window mean and mean square of a sampled series.
    Moments {
        #[arg(long = "in")]
        input: PathBuf,
        #[arg(long = "T")]
        t: f64,
        #[arg(long, value_enum, default_value_t = WindowArg::T2T)]
        window: WindowArg,
    },
    /// Empirical window variance of `e_α` against the spectral sum.
    Variance {
        #[arg(long, default_value = "0,1", value_parser = parse_point, allow_hyphen_values = true)]
        z: Point,
        #[arg(long, default_value = "0,1", value_parser = parse_point, allow_hyphen_values = true)]
        w: Point,
        #[arg(long)]
        alpha: f64,
        #[arg(long = "T")]
        t: f64,
        #[arg(long)]
        spectral: PathBuf,
        #[arg(long, default_value_t = f64::INFINITY)]
        tmax: f64,
        #[arg(long, value_enum, default_value_t = WindowArg::T2T)]
        window: WindowArg,
    },
    /// Running suprema of `|e_α|` against the pointwise exponent.
    ScanPointwise {
        #[arg(long, default_value = "0,1", value_parser = parse_point, allow_hyphen_values = true)]
        z: Point,
        #[arg(long, default_value = "0,1", value_parser = parse_point, allow_hyphen_values = true)]
        w: Point,
        #[arg(long)]
        alpha: f64,
        #[arg(long, default_value_t = 14.0)]
        smax: f64,
    },
    /// Histogram of `e_α` on `[0, T]` or of `f_α` on `[0, L]`.
    Distribution {
        #[arg(long, value_enum)]
        mode: ModeArg,
        #[arg(long, default_value = "0,1", value_parser = parse_point, allow_hyphen_values = true)]
        z: Point,
        #[arg(long, default_value = "0,1", value_parser = parse_point, allow_hyphen_values = true)]
        w: Point,
        #[arg(long)]
        alpha: f64,
        #[arg(long = "T", default_value_t = 14.0)]
        t: f64,
        #[arg(long)]
        spectral: Option<PathBuf>,
        #[arg(long = "L", default_value_t = 1e5)]
        horizon: f64,
        #[arg(long)]
        bins: Option<usize>,
        #[arg(long)]
        out: PathBuf,
    },
    /// Window variances along a shrinking-α schedule.
    Hybrid {
        #[arg(long, default_value = "0,1", value_parser = parse_point, allow_hyphen_values = true)]
        z: Point,
        #[arg(long, default_value = "0,1", value_parser = parse_point, allow_hyphen_values = true)]
        w: Point,
        #[arg(long, value_enum, default_value_t = ScheduleArg::InvSqrt)]
        schedule: ScheduleArg,
        #[arg(long = "Ts", value_delimiter = ',', default_value = "6,9,12")]
        ts: Vec<f64>,
        #[arg(long, value_enum, default_value_t = WindowArg::T2T)]
        window: WindowArg,
        #[arg(long, default_value_t = hypcircle::experiments::hybrid::DEFAULT_CONDITION_BOUND)]
        bound: f64,
    },
    /// Selberg–Harish-Chandra transform of the counting kernel.
    Shc {
        #[arg(long)]
        s: f64,
        #[arg(long)]
        t: f64,
        #[arg(long)]
        alpha: Option<f64>,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum MethodArg {
    Grid,
    Exact,
}

#[derive(Clone, Copy, ValueEnum)]
enum WindowArg {
    #[value(name = "T2T")]
    T2T,
    #[value(name = "0T")]
    ZeroT,
}

impl From<WindowArg> for Window {
    fn from(w: WindowArg) -> Self {
        match w {
            WindowArg::T2T => Window::Doubling,
            WindowArg::ZeroT => Window::Initial,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum ModeArg {
    Real,
    Synthetic,
}

#[derive(Clone, Copy, ValueEnum)]
enum ScheduleArg {
    InvSqrt,
    Inv,
}

fn parse_point(s: &str) -> std::result::Result<Point, String> {
    let (x, y) = s.split_once(',').ok_or_else(|| format!("expected x,y, got `{s}`"))?;
    let x: f64 = x.trim().parse().map_err(|e| format!("bad x in `{s}`: {e}"))?;
    let y: f64 = y.trim().parse().map_err(|e| format!("bad y in `{s}`: {e}"))?;
    Point::new(x, y).map_err(|e| e.to_string())
}

fn float(x: f64) -> String {
    // 17 significant digits; `+ 0.0` folds -0 into 0
    format!("{:.16e}", x + 0.0)
}

fn write_csv(path: &PathBuf, header: &str, rows: impl Iterator<Item = String>) -> Result<()> {
    let mut out = BufWriter::new(File::create(path)?);
    writeln!(out, "{header}")?;
    for r in rows {
        writeln!(out, "{r}")?;
    }
    out.flush()?;
    Ok(())
}

fn read_series(path: &PathBuf) -> Result<SampledSeries> {
    let reader = BufReader::new(File::open(path)?);
    let mut xs = Vec::new();
    let mut vs = Vec::new();
    for (n, line) in reader.lines().enumerate() {
        let line = line?;
        if n == 0 || line.trim().is_empty() {
            continue;
        }
        let mut it = line.split(',');
        let mut next = |field: &str| -> Result<f64> {
            it.next()
                .and_then(|v| v.trim().parse().ok())
                .ok_or_else(|| Error::Validation { line: n + 1, field: field.into(), msg: "expected a number".into() })
        };
        xs.push(next("s")?);
        vs.push(next("value")?);
    }
    if xs.len() < 2 {
        return Err(Error::InvalidInput("series needs at least two rows".into()));
    }
    let step = (xs[xs.len() - 1] - xs[0]) / (xs.len() - 1) as f64;
    for (k, x) in xs.iter().enumerate() {
        if (x - (xs[0] + k as f64 * step)).abs() > 1e-9 * step.max(1.0) {
            return Err(Error::Validation { line: k + 2, field: "s".into(), msg: "abscissae are not uniformly spaced".into() });
        }
    }
    SampledSeries::new(xs[0], step, vs)
}

fn print_json(v: &Value) {
    println!("{}", serde_json::to_string(v).expect("json values serialize"));
}

fn run(cmd: Cmd) -> Result<()> {
    match cmd {
        Cmd::Count { z, w, s, oracle } => {
            let spec = BallSpec::new(z, w, s)?;
            let n = count_ball(&spec)?;
            if oracle {
                let b = brute_force_count(&spec, required_entry_bound(&spec))?;
                print_json(&json!({ "count": n, "oracle": b, "agree": n == b }));
            } else {
                print_json(&json!({ "count": n }));
            }
        }
        Cmd::ErrorTerm { z, w, smax, step, alpha, method, out } => {
            let grid = GridSpec::new(smax, step)?;
            let e = match alpha {
                None => sample_error(z, w, grid)?,
                Some(a) => {
                    let m = match method {
                        MethodArg::Grid => AlphaMethod::Grid,
                        MethodArg::Exact => AlphaMethod::Exact,
                    };
                    sample_e_alpha(z, w, FracOrder::new(a)?, grid, m)?
                }
            };
            write_csv(&out, "s,value", e.series.iter().map(|(s, v)| format!("{},{}", float(s), float(v))))?;
        }
        Cmd::Moments { input, t, window } => {
            let series = read_series(&input)?;
            let first = first_moment(&series, t, window.into())?;
            let second = window_variance(&series, t, window.into())?;
            print_json(&json!({ "first": first, "second": second }));
        }
        Cmd::Variance { z, w, alpha, t, spectral, tmax, window } => {
            let data = load_spectral_data(spectral)?;
            let r = variance_report(z, w, FracOrder::new(alpha)?, t, window.into(), &data, tmax)?;
            print_json(&serde_json::to_value(r).expect("report serializes"));
        }
        Cmd::ScanPointwise { z, w, alpha, smax } => {
            let r = pointwise_scan(z, w, FracOrder::new(alpha)?, smax)?;
            print_json(&serde_json::to_value(r).expect("report serializes"));
        }
        Cmd::Distribution { mode, z, w, alpha, t, spectral, horizon, bins, out } => {
            let order = FracOrder::new(alpha)?;
            let data;
            let source = match mode {
                ModeArg::Real => DistributionSource::Real { z, w, order, t },
                ModeArg::Synthetic => {
                    let path = spectral.ok_or_else(|| Error::InvalidInput("synthetic mode needs --spectral".into()))?;
                    data = load_spectral_data(path)?;
                    DistributionSource::Synthetic { data: &data, z, w, order, horizon }
                }
            };
            let d = distribution_estimate(&source, bins)?;
            let rows = d.counts.iter().enumerate().map(|(k, c)| format!("{},{},{c}", float(d.edges[k]), float(d.edges[k + 1])));
            write_csv(&out, "lower,upper,count", rows)?;
            print_json(&json!({
                "mean": d.mean,
                "variance": d.variance,
                "count": d.count,
                "bins": d.counts.len(),
                "ks_halves": d.ks_halves,
            }));
        }
        Cmd::Hybrid { z, w, schedule, ts, window, bound } => {
            let schedule = match schedule {
                ScheduleArg::InvSqrt => Schedule::InvSqrt,
                ScheduleArg::Inv => Schedule::Inv,
            };
            let opts = HybridOptions { window: window.into(), condition_bound: bound, ..Default::default() };
            let r = hybrid_run(z, w, schedule, &ts, opts)?;
            print_json(&serde_json::to_value(r).expect("report serializes"));
        }
        Cmd::Shc { s, t, alpha } => match alpha {
            None => {
                let direct = shc_direct(s, t)?;
                let closed = h_r_closed(s, Complex64::new(t, 0.0))?;
                let scale = (-0.5 * s).exp();
                print_json(&json!({
                    "direct": direct,
                    "closed_form": closed.value * scale,
                    "closed_form_error": closed.error * scale,
                    "asymptotic": shc_leading(s, t)?,
                }));
            }
            Some(a) => {
                let order = FracOrder::new(a)?;
                let step = default_frac_step(t);
                let direct = shc_frac_sampled(s, t, order, step, ShcSampler::Quadrature)?;
                let closed = shc_frac_sampled(s, t, order, step, ShcSampler::Mixed)?;
                print_json(&json!({
                    "direct": direct.value,
                    "closed_form": closed.value,
                    "asymptotic": closed.asymptotic,
                }));
            }
        },
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.cmd) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
