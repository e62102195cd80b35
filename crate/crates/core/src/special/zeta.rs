//! Riemann zeta function off the real axis via Euler–Maclaurin summation.

use num_complex::Complex64;

use crate::error::{Error, Result};

// B_{2k} / (2k)!
const BERNOULLI_OVER_FACTORIAL: [f64; 12] = [
    1.0 / 12.0,
    -1.0 / 720.0,
    1.0 / 30_240.0,
    -1.0 / 1_209_600.0,
    1.0 / 47_900_160.0,
    -691.0 / 1_307_674_368_000.0,
    1.0 / 74_724_249_600.0,
    -3617.0 / 10_670_622_842_880_000.0,
    43_867.0 / 5_109_094_217_170_944_000.0,
    -174_611.0 / 802_857_662_698_291_200_000.0,
    77_683.0 / 14_101_100_039_391_805_440_000.0,
    -236_364_091.0 / 1_693_824_136_731_743_669_452_800_000.0,
];

/// ζ(σ + it) for `σ > 0`, `(σ, t) != (1, 0)`.
pub fn zeta_line(sigma: f64, t: f64) -> Result<Complex64> {
    zeta_with_cutoff(sigma, t, default_cutoff(t))
}

pub(crate) fn default_cutoff(t: f64) -> usize {
    (t.abs() + 20.0).ceil() as usize
}

/// Euler–Maclaurin with the direct sum truncated at `n < cutoff`.
pub fn zeta_with_cutoff(sigma: f64, t: f64, cutoff: usize) -> Result<Complex64> {
    if !(sigma > 0.0) {
        return Err(Error::Domain(format!("zeta_line needs sigma > 0, got {sigma}")));
    }
    let s = Complex64::new(sigma, t);
    if (s - 1.0).norm() < 1e-10 {
        return Err(Error::PoleProximity(format!("{s}")));
    }
    let n = cutoff.max(10) as f64;
    let mut sum = Complex64::new(0.0, 0.0);
    for k in 1..cutoff.max(10) {
        sum += (-s * (k as f64).ln()).exp();
    }
    let n_pow = (-s * n.ln()).exp();
    sum += n_pow * n / (s - 1.0) + 0.5 * n_pow;
    // Σ B_{2k}/(2k)! s(s+1)...(s+2k-2) N^{-s-2k+1}
    let mut rising = s;
    let mut npow = n_pow / n;
    for (k, coef) in BERNOULLI_OVER_FACTORIAL.iter().enumerate() {
        if k > 0 {
            let j = 2.0 * k as f64;
            rising *= (s + j - 1.0) * (s + j);
            npow /= n * n;
        }
        sum += *coef * rising * npow;
    }
    Ok(sum)
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;
    use std::f64::consts::PI;

    #[test]
    fn classical_values() {
        assert_relative_eq!(zeta_line(2.0, 0.0).unwrap().re, PI * PI / 6.0, max_relative = 1e-14);
        assert_relative_eq!(zeta_line(3.0, 0.0).unwrap().re, 1.202_056_903_159_594_3, max_relative = 1e-14);
        assert_relative_eq!(zeta_line(0.5, 0.0).unwrap().re, -1.460_354_508_809_586_8, max_relative = 1e-13);
    }

    #[test]
    fn self_convergence_on_the_one_line() {
        let a = zeta_line(1.0, 2.0).unwrap();
        let b = zeta_with_cutoff(1.0, 2.0, 2 * default_cutoff(2.0)).unwrap();
        assert!((a - b).norm() < 1e-10);
        let a = zeta_line(1.0, 60.0).unwrap();
        let b = zeta_with_cutoff(1.0, 60.0, 2 * default_cutoff(60.0)).unwrap();
        assert!((a - b).norm() < 1e-10);
    }

    #[test]
    fn first_zero_on_critical_line() {
        let z = zeta_line(0.5, 14.134_725_141_734_693).unwrap();
        assert!(z.norm() < 1e-10);
    }

    #[test]
    fn pole_rejected() {
        assert!(zeta_line(1.0, 0.0).is_err());
        assert!(zeta_line(0.0, 3.0).is_err());
    }
}
