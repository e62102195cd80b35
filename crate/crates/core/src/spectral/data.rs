//! Maass cusp form records and the line-oriented data file.
//!
//! ```text
//! #group=PSL2Z #source=<free text>
//! t=13.779751351891 parity=even l2norm=none coeffs=-1.0683...,-0.4563...,...
//! ```
//!
//! `coeffs` lists `a_2, a_3, ...`; `a_1 = 1` is implicit. An explicit
//! `a1=<value>` key is accepted and must equal 1.

use std::fmt::Write as _;
use std::path::Path;

use crate::error::{Error, Result};

/// Entries whose `t` differ by at most this are treated as one eigenspace.
pub const MULTIPLICITY_TOL: f64 = 1e-9;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Parity {
    Even,
    Odd,
}

impl Parity {
    pub fn as_str(self) -> &'static str {
        match self {
            Parity::Even => "even",
            Parity::Odd => "odd",
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SpectralDatum {
    pub t: f64,
    pub parity: Parity,
    /// `a_1, a_2, ...` with `a_1 = 1`.
    coeffs: Vec<f64>,
    /// `ρ` such that `ρ·φ_Hecke` has unit L² norm.
    pub l2norm: Option<f64>,
}

impl SpectralDatum {
    /// `higher` holds `a_2, a_3, ...`.
    pub fn new(t: f64, parity: Parity, higher: Vec<f64>, l2norm: Option<f64>) -> Result<Self> {
        if !(t > 0.0) || !t.is_finite() {
            return Err(Error::InvalidInput(format!("spectral parameter {t} must be positive")));
        }
        if let Some(rho) = l2norm {
            if !(rho > 0.0) || !rho.is_finite() {
                return Err(Error::InvalidInput(format!("l2norm {rho} must be positive")));
            }
        }
        if higher.iter().any(|a| !a.is_finite()) {
            return Err(Error::InvalidInput("non-finite Fourier coefficient".into()));
        }
        let mut coeffs = Vec::with_capacity(higher.len() + 1);
        coeffs.push(1.0);
        coeffs.extend(higher);
        Ok(Self { t, parity, coeffs, l2norm })
    }

    /// `a_1, ..., a_N`; index `n - 1` holds `a_n`.
    pub fn coeffs(&self) -> &[f64] {
        &self.coeffs
    }

    /// Multiplies every coefficient, including `a_1`, by `c`. The result is
    /// no longer Hecke-normalized; used to test homogeneity.
    pub fn scaled(&self, c: f64) -> Self {
        let mut out = self.clone();
        out.coeffs.iter_mut().for_each(|a| *a *= c);
        out.l2norm = self.l2norm.map(|r| r / c);
        out
    }

    pub fn with_l2norm_cleared(mut self) -> Self {
        self.l2norm = None;
        self
    }

    pub fn with_l2norm(mut self, rho: f64) -> Self {
        self.l2norm = Some(rho);
        self
    }

    pub fn lambda(&self) -> f64 {
        0.25 + self.t * self.t
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SpectralDataset {
    pub group: String,
    pub source: String,
    forms: Vec<SpectralDatum>,
}

impl SpectralDataset {
    /// Forms must have nondecreasing `t`; near-equal values form one eigenspace.
    pub fn new(group: impl Into<String>, source: impl Into<String>, forms: Vec<SpectralDatum>) -> Result<Self> {
        for (k, pair) in forms.windows(2).enumerate() {
            if pair[1].t < pair[0].t - MULTIPLICITY_TOL {
                return Err(Error::Validation { line: k + 2, field: "t".into(), msg: "t values must be increasing".into() });
            }
        }
        Ok(Self { group: group.into(), source: source.into(), forms })
    }

    pub fn empty() -> Self {
        Self { group: "PSL2Z".into(), source: String::new(), forms: Vec::new() }
    }

    pub fn forms(&self) -> &[SpectralDatum] {
        &self.forms
    }

    pub fn len(&self) -> usize {
        self.forms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.forms.is_empty()
    }

    /// Forms grouped by eigenvalue.
    pub fn eigenspaces(&self) -> Vec<&[SpectralDatum]> {
        let mut out = Vec::new();
        let mut start = 0;
        for k in 1..=self.forms.len() {
            if k == self.forms.len() || self.forms[k].t - self.forms[start].t > MULTIPLICITY_TOL {
                out.push(&self.forms[start..k]);
                start = k;
            }
        }
        out
    }

    /// Keeps forms with `t ≤ t_max`.
    pub fn truncated(&self, t_max: f64) -> Self {
        Self {
            group: self.group.clone(),
            source: self.source.clone(),
            forms: self.forms.iter().filter(|f| f.t <= t_max).cloned().collect(),
        }
    }

    pub fn map_forms(&self, f: impl Fn(&SpectralDatum) -> Result<SpectralDatum> + Sync + Send) -> Result<Self> {
        use rayon::prelude::*;
        let forms = self.forms.par_iter().map(&f).collect::<Result<Vec<_>>>()?;
        Ok(Self { group: self.group.clone(), source: self.source.clone(), forms })
    }

    pub fn load(path: impl AsRef<Path>) -> Result<Self> {
        parse(&std::fs::read_to_string(path)?)
    }

    pub fn to_text(&self) -> String {
        let mut out = format!("#group={} #source={}\n", self.group, self.source);
        for f in &self.forms {
            let norm = f.l2norm.map_or("none".to_string(), |r| format!("{r:.17e}"));
            let coeffs: Vec<String> = f.coeffs[1..].iter().map(|a| format!("{a:.17e}")).collect();
            let _ = writeln!(out, "t={} parity={} l2norm={} coeffs={}", f.t, f.parity.as_str(), norm, coeffs.join(","));
        }
        out
    }
}

/// Loads a spectral data file.
pub fn load_spectral_data(path: impl AsRef<Path>) -> Result<SpectralDataset> {
    SpectralDataset::load(path)
}

fn parse_error(line: usize, msg: impl Into<String>) -> Error {
    Error::Parse { line, msg: msg.into() }
}

fn invalid(line: usize, field: &str, msg: impl Into<String>) -> Error {
    Error::Validation { line, field: field.into(), msg: msg.into() }
}

fn number(line: usize, field: &str, text: &str) -> Result<f64> {
    text.trim().parse::<f64>().map_err(|_| parse_error(line, format!("{field}: cannot parse '{text}' as a number")))
}

pub fn parse(text: &str) -> Result<SpectralDataset> {
    let mut lines = text.lines().enumerate().map(|(k, l)| (k + 1, l.trim())).filter(|(_, l)| !l.is_empty());
    let (hline, header) = lines.next().ok_or_else(|| invalid(1, "header", "file is empty"))?;
    let (group, source) = parse_header(hline, header)?;
    if group != "PSL2Z" {
        return Err(invalid(hline, "group", format!("unsupported group '{group}'")));
    }
    let mut forms: Vec<SpectralDatum> = Vec::new();
    for (ln, line) in lines {
        if line.starts_with('#') {
            continue;
        }
        let form = parse_form(ln, line)?;
        if let Some(prev) = forms.last() {
            if form.t < prev.t - MULTIPLICITY_TOL {
                return Err(invalid(ln, "t", format!("t = {} is below the previous t = {}", form.t, prev.t)));
            }
        }
        forms.push(form);
    }
    if forms.is_empty() {
        return Err(invalid(hline, "forms", "no forms listed"));
    }
    Ok(SpectralDataset { group, source, forms })
}

fn parse_header(ln: usize, line: &str) -> Result<(String, String)> {
    let rest = line.strip_prefix("#group=").ok_or_else(|| parse_error(ln, "header must start with '#group='"))?;
    let (group, source) = match rest.split_once("#source=") {
        Some((g, s)) => (g.trim(), s.trim()),
        None => (rest.trim(), ""),
    };
    Ok((group.to_string(), source.to_string()))
}

fn parse_form(ln: usize, line: &str) -> Result<SpectralDatum> {
    let (mut t, mut parity, mut l2norm, mut coeffs) = (None, None, None, None);
    for token in line.split_whitespace() {
        let (key, value) = token.split_once('=').ok_or_else(|| parse_error(ln, format!("expected key=value, got '{token}'")))?;
        match key {
            "t" => t = Some(number(ln, "t", value)?),
            "parity" => {
                parity = Some(match value {
                    "even" => Parity::Even,
                    "odd" => Parity::Odd,
                    other => return Err(invalid(ln, "parity", format!("unknown parity '{other}'"))),
                })
            }
            "l2norm" => {
                l2norm = Some(if value == "none" { None } else { Some(number(ln, "l2norm", value)?) });
            }
            "coeffs" => {
                coeffs = Some(if value.is_empty() {
                    Vec::new()
                } else {
                    value.split(',').map(|c| number(ln, "coeffs", c)).collect::<Result<Vec<_>>>()?
                })
            }
            "a1" => {
                let a1 = number(ln, "a1", value)?;
                if a1 != 1.0 {
                    return Err(invalid(ln, "a1", format!("a_1 must be 1, got {a1}")));
                }
            }
            other => return Err(parse_error(ln, format!("unknown key '{other}'"))),
        }
    }
    let t = t.ok_or_else(|| invalid(ln, "t", "missing"))?;
    let parity = parity.ok_or_else(|| invalid(ln, "parity", "missing"))?;
    let coeffs = coeffs.ok_or_else(|| invalid(ln, "coeffs", "missing"))?;
    SpectralDatum::new(t, parity, coeffs, l2norm.flatten()).map_err(|e| invalid(ln, "form", e.to_string()))
}
