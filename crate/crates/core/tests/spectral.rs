use std::f64::consts::PI;

use hypcircle::hyperbolic::Point;
use hypcircle::special::quad::{integrate, QuadOptions};
use hypcircle::spectral::eisenstein::eisenstein_value;
use hypcircle::spectral::sums::amplitude;
use hypcircle::spectral::{load_spectral_data, maass_value, SpectralDataset};

fn data() -> SpectralDataset {
    load_spectral_data(concat!(env!("CARGO_MANIFEST_DIR"), "/data/psl2z_maass.txt")).unwrap()
}

#[test]
fn bundled_dataset_is_complete_up_to_sixty() {
    // Weyl's law with the known lower-order terms for PSL(2, Z)
    let d = data();
    let weyl = |t: f64| t * t / 12.0 - 2.0 * t / PI * (t / (std::f64::consts::E * (PI / 2.0).sqrt())).ln() - 131.0 / 144.0;
    for t in [20.0, 30.0, 40.0, 50.0, 60.0] {
        let n = d.forms().iter().filter(|f| f.t <= t).count() as f64;
        assert!((n - weyl(t)).abs() < 2.5, "T={t}: {n} forms vs {}", weyl(t));
    }
}

#[test]
fn amplitudes_are_hermitian() {
    let d = data().truncated(30.0);
    let z = Point::new(0.2, 1.3).unwrap();
    let w = Point::new(-0.1, 0.9).unwrap();
    let zz = amplitude(&d, &z, &z).unwrap();
    assert!(zz.iter().all(|a| a.b.re >= 0.0 && a.b.im == 0.0));
    let zw = amplitude(&d, &z, &w).unwrap();
    let wz = amplitude(&d, &w, &z).unwrap();
    for (a, b) in zw.iter().zip(&wz) {
        assert_eq!(a.t, b.t);
        assert!((a.b - b.b.conj()).norm() <= 1e-14 * a.b.norm().max(1.0));
    }
}

#[test]
fn local_weyl_law() {
    let d = data();
    let big_t = 30.0;
    let points = [Point::new(0.2, 1.3).unwrap(), Point::new(-0.31, 0.95).unwrap(), Point::new(0.05, 2.0).unwrap()];
    let mut mean = 0.0;
    for z in &points {
        let cusp: f64 = d.forms().iter().filter(|f| f.t <= big_t).map(|f| maass_value(f, z).unwrap().powi(2)).sum();
        let eis = integrate(|t| eisenstein_value(z, t).unwrap().norm_sqr(), 0.0, big_t, QuadOptions::rel(1e-8)).unwrap().value;
        mean += (cusp + eis / (2.0 * PI)) / points.len() as f64;
    }
    let predicted = big_t * big_t / (4.0 * PI);
    assert!((mean / predicted - 1.0).abs() < 0.1, "{mean} vs {predicted}");
}
