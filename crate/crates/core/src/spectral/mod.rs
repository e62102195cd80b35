//! Spectral side of the counting problem: Maass form data, the
//! Selberg–Harish-Chandra transforms of the counting kernel, and the
//! spectral sums built from them.

pub mod data;
pub mod eisenstein;
pub mod maass;
pub mod sums;
pub mod transform;

pub use data::{load_spectral_data, Parity, SpectralDataset, SpectralDatum};
pub use maass::{hecke_value, maass_value, normalize_l2};
