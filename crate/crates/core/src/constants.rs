//! Empirical constants pinned from measurements. Each entry names the
//! quantity, where it was measured and the measured value; tests recompute
//! the measurement and fail if it moves by more than a factor of two.

/// `max |E(i, 1/2+it)| / t^{0.51}` over `t = 5, 6, ..., 30`; measured 3.21.
pub const EISENSTEIN_ENVELOPE: f64 = 4.0;

/// `sup_t |h'_{α,10}(t) - Re(r_α(t) e^{10it})| t^{3/2+α}` over
/// `t = 5, 7.5, ..., 100` at `α = 1/4`; measured 0.0623.
pub const FRAC_TRANSFORM_CONST_QUARTER: f64 = 0.063;

/// Same quantity at `α = 1/2`; measured 0.219.
pub const FRAC_TRANSFORM_CONST_HALF: f64 = 0.22;

/// `max_j |b_j| / t_j` at `z = w = i` over the bundled forms; measured 1.025.
pub const AMPLITUDE_CONST: f64 = 1.025;

/// `max_T T^{-2} Σ_{t_j ≤ T} |b_j|` at `z = w = i`; measured 0.108.
pub const AMPLITUDE_WEYL_CONST: f64 = 0.108;

/// `max_{s ≤ 10}` of the grid-versus-exact error budget for `e_{1/4}` at
/// `z = w = i`, step `1/512`; measured 2.31 against an observed gap of 0.54.
pub const DUAL_METHOD_BUDGET: f64 = 2.31;

/// `max_T` window variance on `[0, T]` of `e_α`, `α = T^{-1/2}`,
/// `T ∈ {6, 9, 12}`, `z = w = i`; measured 1.84 at `T = 6`.
pub const HYBRID_VARIANCE_BOUND: f64 = 1.85;

/// `max_x sup_{s≤x} |e_{1/4}(s)| e^{-x/10}` over `x ∈ [8, 14]` at
/// `z = w = i`; measured 1.507.
pub const POINTWISE_ENVELOPE_QUARTER: f64 = 1.507;

/// `max |h̃_δ(0) - 1| / δ²` over `δ = 0.02, 0.04, ..., 0.5`; measured 0.03125.
pub const HTILDE_ORIGIN_CONST: f64 = 0.0313;

/// `max |h̃_δ(t)| (δ|t|)^{3/2}` over `δ ∈ {0.5, 0.25, 0.1, 0.05}`,
/// `δt = 10, 12.5, ..., 107.5`; measured 1.596.
pub const HTILDE_DECAY_CONST: f64 = 1.6;

/// Checks that a measured value is within a factor of two of its pin.
pub fn within_factor_two(measured: f64, pinned: f64) -> bool {
    measured > 0.0 && measured <= 2.0 * pinned && measured >= 0.5 * pinned
}
