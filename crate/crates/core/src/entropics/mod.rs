//! Renyi entropies and divergences of quasidistributions, quantum
//! sandwiched divergences, and the CSS distance monotone.
//!
//! Throughout, negative quasiprobability enters through the convention
//! `w^alpha := |w|^alpha`, all logarithms are base 2, and the admissible
//! orders are `alpha = 2a/(2b-1)` with integers `a >= b >= 1` (even
//! numerator, odd denominator) together with `alpha = infinity`. Limits
//! toward `alpha -> 1+` are taken numerically at `1 + 1e-4` with one
//! Richardson step.

mod alpha;
mod lambda;
mod renyi;
mod sandwiched;

pub use alpha::{alpha_grid, AlphaIndex};
pub use lambda::{lambda_grid_oracle, lambda_monotone, LambdaOptions, LambdaResult};
pub use renyi::{
    general_mean_q, lift_complex, lift_ref, mana, mana_quasi, renyi_divergence_quasi,
    renyi_entropy_quasi, wigner_l1_continuity, ReferencePair,
};
pub use sandwiched::sandwiched_divergence;

/// Numerical floor keeping reference distributions strictly positive
/// inside divergences (interior points of the simplex).
pub const INTERIOR_FLOOR: f64 = 1e-12;

/// Order used for numerical `alpha -> 1+` limits.
pub const ALPHA_NEAR_ONE: f64 = 1.0 + 1e-4;
