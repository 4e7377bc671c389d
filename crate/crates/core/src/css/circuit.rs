//! CSS circuits: sequences of completely CSS-preserving primitives.
//!
//! Steps are CSS state preparation on fresh qubits, `{CNOT, X, Z}` gates,
//! projection onto a `+-1` branch of a pure-type observable (trace
//! decreasing), full dephasing measurement of such an observable, and
//! qubit discard. Every step maps CSS-preserving channels to
//! CSS-preserving channels, so the compiled channel has a stochastic
//! phase space matrix. Classical mixtures sit at the channel level via
//! [`Channel::mix`].

use crate::phase_space::{c, CMat, Channel, DensityMatrix, Pauli};
use crate::{Error, Result};

/// A gate from the CSS-preserving generating set.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Gate {
    /// `Cnot(control, target)`, qubits 0-based.
    Cnot(usize, usize),
    X(usize),
    Z(usize),
}

impl Gate {
    pub fn matrix(&self, n: usize) -> Result<CMat> {
        let dim = 1usize << n;
        let bit = |q: usize| -> Result<usize> {
            if q >= n {
                return Err(Error::Invalid(format!("qubit {q} out of range")));
            }
            Ok(1usize << (n - 1 - q))
        };
        let mut m = CMat::zeros(dim, dim);
        match *self {
            Gate::Cnot(ctl, tgt) => {
                if ctl == tgt {
                    return Err(Error::Invalid("CNOT control equals target".into()));
                }
                let (bc, bt) = (bit(ctl)?, bit(tgt)?);
                for i in 0..dim {
                    let j = if i & bc != 0 { i ^ bt } else { i };
                    m[(j, i)] = c(1.0, 0.0);
                }
            }
            Gate::X(q) => {
                let bq = bit(q)?;
                for i in 0..dim {
                    m[(i ^ bq, i)] = c(1.0, 0.0);
                }
            }
            Gate::Z(q) => {
                let bq = bit(q)?;
                for i in 0..dim {
                    m[(i, i)] = c(if i & bq != 0 { -1.0 } else { 1.0 }, 0.0);
                }
            }
        }
        Ok(m)
    }
}

/// One step of a CSS circuit.
#[derive(Clone, Debug)]
pub enum Step {
    /// Appends fresh qubits (trailing positions) in a CSS state.
    Prepare(DensityMatrix),
    Gate(Gate),
    /// Projects onto the `(I + S)/2` branch (`(I - S)/2` when `negative`)
    /// of a pure-type observable; trace decreasing.
    Project { observable: Pauli, negative: bool },
    /// Dephasing measurement of a pure-type observable (both branches kept).
    Measure(Pauli),
    /// Discards the listed qubits (0-based).
    Discard(Vec<usize>),
}

/// An ordered CSS circuit on `n_in` input qubits.
#[derive(Clone, Debug)]
pub struct CssCircuit {
    pub n_in: usize,
    pub steps: Vec<Step>,
}

fn branch_projector(obs: &Pauli, negative: bool) -> Result<CMat> {
    if !obs.is_x_type() && !obs.is_z_type() {
        return Err(Error::Invalid("observable must be pure X or Z type".into()));
    }
    let dim = 1usize << obs.n;
    let s = obs.to_matrix()?;
    let sign = if negative { -1.0 } else { 1.0 };
    Ok((CMat::identity(dim, dim) + s * c(sign, 0.0)) * c(0.5, 0.0))
}

fn discard_channel(n: usize, qubits: &[usize]) -> Result<Channel> {
    let mut sorted = qubits.to_vec();
    sorted.sort_unstable();
    sorted.dedup();
    if sorted.len() != qubits.len() {
        return Err(Error::Invalid("duplicate discarded qubit".into()));
    }
    for &q in &sorted {
        if q >= n {
            return Err(Error::Invalid(format!("qubit {q} out of range")));
        }
    }
    let keep: Vec<usize> = (0..n).filter(|q| !sorted.contains(q)).collect();
    let m = keep.len();
    let dim_out = 1usize << m;
    let dim_env = 1usize << sorted.len();
    let mut kraus = Vec::with_capacity(dim_env);
    for e in 0..dim_env {
        let mut k = CMat::zeros(dim_out, 1 << n);
        for a in 0..dim_out {
            let mut idx = 0usize;
            for (t, &q) in keep.iter().enumerate() {
                idx |= ((a >> (m - 1 - t)) & 1) << (n - 1 - q);
            }
            for (t, &q) in sorted.iter().enumerate() {
                idx |= ((e >> (sorted.len() - 1 - t)) & 1) << (n - 1 - q);
            }
            k[(a, idx)] = c(1.0, 0.0);
        }
        kraus.push(k);
    }
    Channel::new(n, m, kraus)
}

fn prepare_channel(state: &DensityMatrix) -> Result<Channel> {
    let m = state.n_qubits();
    let dim = 1usize << m;
    let eig = nalgebra::SymmetricEigen::new(state.matrix().clone());
    let mut kraus = Vec::new();
    for (l, &lam) in eig.eigenvalues.iter().enumerate() {
        if lam <= 1e-14 {
            continue;
        }
        let mut k = CMat::zeros(dim, 1);
        for i in 0..dim {
            k[(i, 0)] = eig.eigenvectors[(i, l)] * c(lam.sqrt(), 0.0);
        }
        kraus.push(k);
    }
    Channel::new(0, m, kraus)
}

impl CssCircuit {
    /// Compiles the step sequence into a single channel.
    pub fn to_channel(&self) -> Result<Channel> {
        let mut ch = Channel::identity(self.n_in)?;
        for step in &self.steps {
            let live = ch.n_out();
            let next = match step {
                Step::Prepare(state) => {
                    let prep = prepare_channel(state)?;
                    Channel::identity(live)?.tensor(&prep)?
                }
                Step::Gate(g) => Channel::unitary(live, g.matrix(live)?)?,
                Step::Project {
                    observable,
                    negative,
                } => {
                    if observable.n != live {
                        return Err(Error::Dimension("observable size mismatch".into()));
                    }
                    Channel::new(live, live, vec![branch_projector(observable, *negative)?])?
                }
                Step::Measure(obs) => {
                    if obs.n != live {
                        return Err(Error::Dimension("observable size mismatch".into()));
                    }
                    Channel::new(
                        live,
                        live,
                        vec![
                            branch_projector(obs, false)?,
                            branch_projector(obs, true)?,
                        ],
                    )?
                }
                Step::Discard(qubits) => discard_channel(live, qubits)?,
            };
            ch = ch.then(&next)?;
        }
        Ok(ch)
    }
}

/// Free-function form of circuit compilation.
pub fn circuit_to_channel(circuit: &CssCircuit) -> Result<Channel> {
    circuit.to_channel()
}

/// Single-qubit Hadamard on qubit `q` of `n`, as a unitary channel.
///
/// Not a CSS gate; its phase space matrix has negative entries, which makes
/// it the standard counterexample in stochasticity tests.
pub fn hadamard_channel(n: usize, q: usize) -> Result<Channel> {
    if q >= n {
        return Err(Error::Invalid(format!("qubit {q} out of range")));
    }
    let s = 1.0 / 2f64.sqrt();
    let h = CMat::from_row_slice(2, 2, &[c(s, 0.0), c(s, 0.0), c(s, 0.0), c(-s, 0.0)]);
    let mut u = CMat::identity(1, 1);
    for i in 0..n {
        let f = if i == q {
            h.clone()
        } else {
            CMat::identity(2, 2)
        };
        u = u.kronecker(&f);
    }
    Channel::unitary(n, u)
}
