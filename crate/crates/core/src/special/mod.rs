//! Special functions used by the spectral side: complex Γ, `K_{it}`, `J_1`,
//! ₂F₁ on `(-1, 0]`, the exponential incomplete-gamma kernel and ζ.

pub mod bessel;
pub mod gamma;
pub mod hyp2f1;
pub mod incomplete;
pub mod quad;
pub mod zeta;

pub use bessel::{bessel_j1_over_x, bessel_k_imag, BesselK};
pub use gamma::{complex_gamma, gamma, ln_gamma, ln_gamma_complex};
pub use hyp2f1::gauss_2f1;
pub use incomplete::lower_incomplete_exp;
pub use zeta::zeta_line;
