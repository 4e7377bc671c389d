//! Discrete Wigner representation for qubit CSS circuits, and entropic
//! bounds on the overhead of magic state distillation.
//!
//! The crate is organised in four layers:
//!
//! * [`phase_space`] — phase points, displacement operators, phase point
//!   operators, Wigner functions of states and channels.
//! * [`css`] — CSS codes, encoder synthesis, code projections and their
//!   simulation, CSS circuit channels.
//! * [`entropics`] — Renyi entropies and divergences of quasidistributions,
//!   sandwiched divergences, magic monotones.
//! * [`bounds`] — distillation overhead bounds: numeric root bounds,
//!   analytic bounds, mana and acceptance-probability limits.
//!
//! Dense matrix paths are capped at [`MAX_DENSE_QUBITS`] qubits; larger
//! instances (e.g. the 23-qubit Golay projection) go through stabilizer
//! group sums that never materialise a full operator.

pub mod bounds;
pub mod css;
pub mod entropics;
pub mod phase_space;
pub mod verify;

/// Largest register for which dense `2^n x 2^n` operators are built.
pub const MAX_DENSE_QUBITS: usize = 10;

/// Default absolute tolerance for hermiticity, trace and positivity checks.
pub const DEFAULT_TOL: f64 = 1e-9;

#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error("dimension mismatch: {0}")]
    Dimension(String),
    #[error("register of {0} qubits exceeds dense limit of {MAX_DENSE_QUBITS}")]
    TooLarge(usize),
    #[error("invalid input: {0}")]
    Invalid(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("numerical failure: {0}")]
    Numerical(String),
}

pub type Result<T> = std::result::Result<T, Error>;
