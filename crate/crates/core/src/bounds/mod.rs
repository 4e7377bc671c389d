//! Overhead bounds for `n -> k` magic state distillation.
//!
//! The central object is the gap
//! `DeltaD_alpha(n) = n D_alpha(W_rho || uniform) - D_alpha(W_out || W_ref)`
//! between the divergence consumed by the inputs and the divergence of the
//! flagged output of a trace-preserving code projection. Monotonicity under
//! stochastic processing forces `DeltaD_alpha(n) >= 0` for every admissible
//! order, and the gap is concave in `n` with a `-infinity` limit at
//! `n -> k`, so each order yields a lower and (when the input entropy
//! exceeds that of the uniform reference) an upper root. Aggregating over a
//! grid of orders gives the final window `[n_L, n_U]`, alongside analytic
//! closed forms, a mana limit, a sandwiched-divergence analogue, and an
//! acceptance probability ceiling.

mod analytic;
mod pipeline;
mod roots;

pub use analytic::{
    acceptance_ceiling, analytic_bounds, cutoff_input_error, fmax_upper, mana_limit_bound,
    n_star, AnalyticRow, BoundKind, FmaxMethod,
};
pub use pipeline::{delta_d_primal, DpiPipeline, MajorizationPipeline};
pub use roots::{
    aggregate_bounds, dpi_bounds, majorization_bounds, root_bounds, AlphaBound, BoundResult,
};

use crate::entropics::alpha_grid;
use crate::phase_space::{c, DensityMatrix};
use crate::{Error, Result};
use serde::{Deserialize, Serialize};

/// The single-qubit magic state being distilled.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Target {
    /// `|H> = cos(pi/8)|0> + sin(pi/8)|1>`, the Hadamard eigenstate.
    H,
    /// `|A> = (|0> + e^{i pi/4}|1>)/sqrt(2)`.
    A,
}

impl std::str::FromStr for Target {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "H" | "h" => Ok(Target::H),
            "A" | "a" => Ok(Target::A),
            _ => Err(Error::Parse(format!("unknown target '{s}'"))),
        }
    }
}

/// The pure target state.
pub fn target_state(t: Target) -> DensityMatrix {
    let amps = match t {
        Target::H => vec![
            c((std::f64::consts::PI / 8.0).cos(), 0.0),
            c((std::f64::consts::PI / 8.0).sin(), 0.0),
        ],
        Target::A => {
            let s = 1.0 / 2f64.sqrt();
            vec![
                c(s, 0.0),
                c(s, 0.0) * c((std::f64::consts::PI / 4.0).cos(), (std::f64::consts::PI / 4.0).sin()),
            ]
        }
    };
    DensityMatrix::pure(1, &amps).expect("fixed state is valid")
}

/// The state orthogonal to the target within its qubit.
pub fn target_orthogonal(t: Target) -> DensityMatrix {
    let amps = match t {
        Target::H => vec![
            c((std::f64::consts::PI / 8.0).sin(), 0.0),
            c(-(std::f64::consts::PI / 8.0).cos(), 0.0),
        ],
        Target::A => {
            let s = 1.0 / 2f64.sqrt();
            vec![
                c(s, 0.0),
                c(-s, 0.0)
                    * c((std::f64::consts::PI / 4.0).cos(), (std::f64::consts::PI / 4.0).sin()),
            ]
        }
    };
    DensityMatrix::pure(1, &amps).expect("fixed state is valid")
}

/// Depolarised input `(1 - eps) |psi><psi| + eps I/2`.
pub fn noisy_input(t: Target, eps: f64) -> Result<DensityMatrix> {
    if !(0.0..=1.0).contains(&eps) {
        return Err(Error::Invalid(format!("eps {eps} outside [0, 1]")));
    }
    target_state(t).mix(&DensityMatrix::maximally_mixed(1)?, 1.0 - eps)
}

/// Rank-2 output model `F |psi><psi| + (1-F) |psi_perp><psi_perp|`.
pub fn pencil_output(t: Target, fidelity: f64) -> Result<DensityMatrix> {
    if !(0.0..=1.0).contains(&fidelity) {
        return Err(Error::Invalid(format!(
            "fidelity {fidelity} outside [0, 1]"
        )));
    }
    target_state(t).mix(&target_orthogonal(t), fidelity)
}

/// Parameters of a distillation query.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct DistillationSpec {
    /// Number of output qubits.
    pub k: u32,
    /// Acceptance probability.
    pub p: f64,
    /// Input depolarising error.
    pub eps: f64,
    /// Output trace-norm error allowance.
    pub delta: f64,
    pub target: Target,
    /// Root searches run over `n in (k, n_cap]`.
    pub n_cap: f64,
}

impl DistillationSpec {
    pub fn validate(&self) -> Result<()> {
        if self.k == 0 {
            return Err(Error::Invalid("k must be positive".into()));
        }
        if !(self.p > 0.0 && self.p <= 1.0) {
            return Err(Error::Invalid(format!("p {} outside (0, 1]", self.p)));
        }
        if !(0.0..=1.0).contains(&self.eps) {
            return Err(Error::Invalid(format!("eps {} outside [0, 1]", self.eps)));
        }
        if self.delta < 0.0 || self.delta > 2.0 {
            return Err(Error::Invalid(format!(
                "delta {} outside [0, 2]",
                self.delta
            )));
        }
        if self.n_cap <= self.k as f64 {
            return Err(Error::Invalid("n_cap must exceed k".into()));
        }
        Ok(())
    }

    pub fn input_state(&self) -> Result<DensityMatrix> {
        noisy_input(self.target, self.eps)
    }

    /// Worst-case output compatible with the error allowance: the pencil
    /// state at trace distance `delta` from the target (per output qubit,
    /// only `k = 1` is modelled).
    pub fn default_output(&self) -> Result<DensityMatrix> {
        if self.k != 1 {
            return Err(Error::Invalid(
                "default worst-case output modelled for k = 1 only".into(),
            ));
        }
        pencil_output(self.target, 1.0 - self.delta / 2.0)
    }
}

impl Default for DistillationSpec {
    fn default() -> Self {
        Self {
            k: 1,
            p: 0.9,
            eps: 0.05,
            delta: 1e-9,
            target: Target::H,
            n_cap: 1e6,
        }
    }
}

/// One order of the bound grid: a display label and its numeric value.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct GridAlpha {
    pub label: String,
    pub value: f64,
}

/// The default order grid: all `2a/(2b-1)` with `a <= a_max`, `b <= b_max`
/// and value at most `cap`, plus `1 + 1e-4` for the near-one limit.
pub fn default_alpha_grid(a_max: u32, b_max: u32, cap: f64) -> Vec<GridAlpha> {
    let mut out = vec![GridAlpha {
        label: "1+1e-4".into(),
        value: crate::entropics::ALPHA_NEAR_ONE,
    }];
    for idx in alpha_grid(a_max, b_max, cap, false) {
        out.push(GridAlpha {
            label: idx.label(),
            value: idx.value(),
        });
    }
    out
}
