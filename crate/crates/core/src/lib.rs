pub mod constants;
pub mod error;
pub mod experiments;
pub mod fracint;
pub mod hyperbolic;
pub mod lattice;
pub mod special;
pub mod spectral;

pub use error::{Error, Result};
