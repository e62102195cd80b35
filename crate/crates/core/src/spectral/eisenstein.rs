//! The modular Eisenstein series on the critical line,
//!
//! `E(z, 1/2+it) = y^{1/2+it} + φ y^{1/2-it}
//!     + 4√y/ξ(1+2it) Σ_{n≥1} τ_{it}(n) K_{it}(2πny) cos(2πnx)`,
//!
//! with `ξ(s) = π^{-s/2} Γ(s/2) ζ(s)`, `φ = ξ(1-2it)/ξ(1+2it)` and
//! `τ_{it}(n) = Σ_{ab=n} (a/b)^{it}`.

use std::f64::consts::PI;

use num_complex::Complex64;

use super::maass::required_terms;
use crate::error::{Error, Result};
use crate::hyperbolic::Point;
use crate::special::{bessel_k_imag, ln_gamma_complex, zeta_line};

/// `ξ(1 + 2it)`.
fn xi_edge(t: f64) -> Result<Complex64> {
    let s = Complex64::new(1.0, 2.0 * t);
    let zeta = zeta_line(1.0, 2.0 * t)?;
    Ok((-0.5 * s * PI.ln() + ln_gamma_complex(0.5 * s)?).exp() * zeta)
}

/// `τ_{it}(n) = Σ_{d | n} (n/d²)^{it}`, real by pairing `d` with `n/d`.
fn divisor_sum(n: u64, t: f64) -> f64 {
    let mut acc = 0.0;
    let mut d = 1;
    while d * d <= n {
        if n % d == 0 {
            let e = d * d;
            if e == n {
                acc += 1.0;
            } else {
                acc += 2.0 * (t * (n as f64 / e as f64).ln()).cos();
            }
        }
        d += 1;
    }
    acc
}

/// `E(z, 1/2 + it)` for `|t| ≤ 30`.
pub fn eisenstein_value(z: &Point, t: f64) -> Result<Complex64> {
    if t.abs() > 30.0 {
        return Err(Error::ArgumentOutOfRange(format!("|t| = {} exceeds 30", t.abs())));
    }
    if t == 0.0 {
        // φ(1/2) = -1 makes E(z, 1/2) vanish identically
        return Ok(Complex64::new(0.0, 0.0));
    }
    let (x, y) = (z.x(), z.y());
    let xi = xi_edge(t)?;
    let phi = xi.conj() / xi;
    let yit = Complex64::from_polar(y.sqrt(), t * y.ln());
    let constant = yit + phi * yit.conj();
    let terms = required_terms(t.abs(), y);
    let mut sum = 0.0;
    for n in 1..=terms as u64 {
        let k = bessel_k_imag(t, 2.0 * PI * n as f64 * y)?.value;
        sum += divisor_sum(n, t) * k * (2.0 * PI * n as f64 * x).cos();
    }
    Ok(constant + 4.0 * y.sqrt() * sum / xi)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hyperbolic::{mobius_apply, GroupElement};

    fn pt(x: f64, y: f64) -> Point {
        Point::new(x, y).unwrap()
    }

    #[test]
    fn divisor_sums() {
        assert_eq!(divisor_sum(1, 3.0), 1.0);
        // τ_0(n) = d(n)
        assert_eq!(divisor_sum(12, 0.0), 6.0);
        let t: f64 = 2.5;
        let direct: f64 = [1.0f64, 2.0, 3.0, 6.0].iter().map(|d| (6.0 / (d * d)).powf(0.0) * (t * (6.0 / (d * d)).ln()).cos()).sum();
        assert!((divisor_sum(6, t) - direct).abs() < 1e-14);
    }

    #[test]
    fn periodic_and_automorphic() {
        for t in [1.5, 7.0, 22.0] {
            let z = pt(0.17, 1.2);
            let a = eisenstein_value(&z, t).unwrap();
            let b = eisenstein_value(&pt(1.17, 1.2), t).unwrap();
            assert!((a - b).norm() < 1e-8);
            let c = eisenstein_value(&mobius_apply(&GroupElement::S, &z), t).unwrap();
            assert!((a - c).norm() < 1e-6, "t = {t}: {a} vs {c}");
        }
    }

    #[test]
    fn reference_value() {
        // mpmath, direct Fourier expansion
        let e = eisenstein_value(&pt(0.17, 1.2), 7.0).unwrap();
        assert!((e - Complex64::new(0.425_585_823_681_748_96, 4.551_694_726_243_943_7)).norm() < 1e-10);
    }

    #[test]
    fn critical_line_growth_envelope() {
        use crate::constants::{within_factor_two, EISENSTEIN_ENVELOPE};
        let worst = (0..=25)
            .map(|k| {
                let t = 5.0 + k as f64;
                eisenstein_value(&Point::I, t).unwrap().norm() / t.powf(0.51)
            })
            .fold(0.0, f64::max);
        assert!(worst <= EISENSTEIN_ENVELOPE);
        assert!(within_factor_two(worst, EISENSTEIN_ENVELOPE), "{worst}");
    }

    #[test]
    fn range_checks() {
        assert!(eisenstein_value(&Point::I, 31.0).is_err());
        assert_eq!(eisenstein_value(&Point::I, 0.0).unwrap(), Complex64::new(0.0, 0.0));
    }
}
