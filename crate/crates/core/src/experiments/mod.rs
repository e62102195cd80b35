//! End-to-end runs on lattice data and on the almost periodic model.

pub mod distribution;
pub mod hybrid;
pub mod moments;
pub mod sampling;
pub mod scan;

pub use distribution::{distribution_estimate, DistributionEstimate, DistributionSource};
pub use hybrid::{hybrid_run, HybridOptions, HybridReport, Schedule};
pub use moments::{first_moment, variance_report, window_variance, VarianceReport, Window};
pub use sampling::{sample_e_alpha, sample_error, AlphaMethod, ErrorSeries, GridSpec, SeriesKind, DESK_S_MAX};
pub use scan::{pointwise_scan, PointwiseReport};
