//! Phase space for `n` qubits and the Wigner representation built on it.
//!
//! A phase point is a pair of n-bit vectors `(x, z)`. The displacement at
//! `u` is `D_u = Z(u_z) X(u_x)` and the phase point operator at `u` is the
//! symplectic character sum `A_u = 2^{-n} sum_v (-1)^{[u,v]} D_v`, which
//! factorises qubit by qubit. Wigner functions of states are
//! `W_rho(u) = 2^{-n} tr[A_u^dag rho]` and channels become matrices acting
//! on these quasidistributions.
//!
//! Conventions used throughout:
//!
//! * qubit 1 is the most significant bit of every bit vector;
//! * quasidistributions are stored row-major over `(x, z)`, i.e. the flat
//!   index of a point is `x * 2^n + z`;
//! * `A_u` is real in the computational basis and generally non-hermitian,
//!   so the conjugate transpose in `W_rho` is a plain transpose.

mod channel;
mod pauli;
mod wigner;

pub use channel::{
    choi_state, is_stochastic, wigner_of_channel, wigner_of_channel_direct, Channel,
    ChannelMatrix, StochasticReport,
};
pub use pauli::{displacement, pauli_x_matrix, pauli_z_matrix, Pauli};
pub use wigner::{
    phase_point_operator, single_qubit_phase_point_operators, split_real_imag, split_sym_anti,
    state_of_wigner, wigner_of_state,
};

use crate::{Error, Result, DEFAULT_TOL, MAX_DENSE_QUBITS};
use nalgebra::DMatrix;
use num_complex::Complex64;
use serde::{Deserialize, Serialize};

/// Dense complex matrix type used throughout.
pub type CMat = DMatrix<Complex64>;

/// Shorthand complex constructor.
pub fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

pub(crate) fn parity(x: u64) -> u8 {
    (x.count_ones() & 1) as u8
}

/// A point `(x, z)` of the `2n`-dimensional binary phase space.
///
/// Bit `i` of `x`/`z` (counting qubits from 1) is stored at position
/// `n - i` of the underlying word, so qubit 1 is most significant.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct PhasePoint {
    n: usize,
    x: u64,
    z: u64,
}

impl PhasePoint {
    pub fn new(n: usize, x: u64, z: u64) -> Result<Self> {
        if n == 0 || n > 64 {
            return Err(Error::Invalid(format!("unsupported register size {n}")));
        }
        let mask = if n == 64 { u64::MAX } else { (1u64 << n) - 1 };
        if x & !mask != 0 || z & !mask != 0 {
            return Err(Error::Invalid("phase point bits exceed register".into()));
        }
        Ok(Self { n, x, z })
    }

    pub fn n_qubits(&self) -> usize {
        self.n
    }

    pub fn x(&self) -> u64 {
        self.x
    }

    pub fn z(&self) -> u64 {
        self.z
    }

    /// Flat index `x * 2^n + z`.
    pub fn index(&self) -> usize {
        ((self.x as usize) << self.n) | self.z as usize
    }

    pub fn from_index(n: usize, idx: usize) -> Result<Self> {
        if n > 32 {
            return Err(Error::Invalid("flat indexing limited to 32 qubits".into()));
        }
        if idx >= 1usize << (2 * n) {
            return Err(Error::Invalid(format!("index {idx} out of range")));
        }
        Self::new(n, (idx >> n) as u64, (idx & ((1 << n) - 1)) as u64)
    }

    /// Pointwise xor, the group operation of phase space.
    pub fn xor(&self, other: &PhasePoint) -> Result<Self> {
        if self.n != other.n {
            return Err(Error::Dimension("phase point sizes differ".into()));
        }
        Self::new(self.n, self.x ^ other.x, self.z ^ other.z)
    }

    /// Symplectic product `[u, v] = u_z . v_x + v_z . u_x mod 2`.
    pub fn symplectic(&self, other: &PhasePoint) -> Result<u8> {
        if self.n != other.n {
            return Err(Error::Dimension("phase point sizes differ".into()));
        }
        Ok(parity(self.z & other.x) ^ parity(other.z & self.x))
    }

    /// Concatenation with `self` on the leading (most significant) qubits.
    pub fn concat(&self, other: &PhasePoint) -> Result<Self> {
        PhasePoint::new(
            self.n + other.n,
            (self.x << other.n) | other.x,
            (self.z << other.n) | other.z,
        )
    }
}

/// Free-function form of the symplectic product.
pub fn symplectic_product(u: &PhasePoint, v: &PhasePoint) -> Result<u8> {
    u.symplectic(v)
}

#[derive(Serialize, Deserialize)]
struct QuasiDistRepr {
    n_qubits: usize,
    values: Vec<[f64; 2]>,
}

/// A quasidistribution over the `4^n` phase points, in flat `(x, z)` order.
///
/// Values are complex in general; they are real exactly when the underlying
/// state is a rebit (real density matrix).
#[derive(Clone, Debug, PartialEq)]
pub struct QuasiDist {
    n: usize,
    values: Vec<Complex64>,
}

impl QuasiDist {
    pub fn new(n: usize, values: Vec<Complex64>) -> Result<Self> {
        if n > 32 || values.len() != 1usize << (2 * n) {
            return Err(Error::Dimension(format!(
                "expected 4^{n} values, got {}",
                values.len()
            )));
        }
        Ok(Self { n, values })
    }

    pub fn n_qubits(&self) -> usize {
        self.n
    }

    pub fn values(&self) -> &[Complex64] {
        &self.values
    }

    pub fn at(&self, u: &PhasePoint) -> Complex64 {
        self.values[u.index()]
    }

    pub fn sum(&self) -> Complex64 {
        self.values.iter().sum()
    }

    /// One-norm `sum_u |W(u)|`; equals 1 exactly for nonnegative W.
    pub fn l1_norm(&self) -> f64 {
        self.values.iter().map(|v| v.norm()).sum()
    }

    pub fn max_imag(&self) -> f64 {
        self.values.iter().map(|v| v.im.abs()).fold(0.0, f64::max)
    }

    pub fn is_real(&self, tol: f64) -> bool {
        self.max_imag() <= tol
    }

    pub fn min_real(&self) -> f64 {
        self.values.iter().map(|v| v.re).fold(f64::INFINITY, f64::min)
    }

    /// Real part vector, rejecting imaginary mass beyond `tol`.
    pub fn to_real(&self, tol: f64) -> Result<Vec<f64>> {
        if !self.is_real(tol) {
            return Err(Error::Invalid(format!(
                "quasidistribution has imaginary part {:.3e} beyond tolerance",
                self.max_imag()
            )));
        }
        Ok(self.values.iter().map(|v| v.re).collect())
    }

    /// Tensor product, `self` on the leading qubits.
    pub fn tensor(&self, other: &QuasiDist) -> Result<QuasiDist> {
        let n = self.n + other.n;
        if n > 32 {
            return Err(Error::TooLarge(n));
        }
        let mut values = vec![c(0.0, 0.0); 1 << (2 * n)];
        for (i, a) in self.values.iter().enumerate() {
            let u = PhasePoint::from_index(self.n, i)?;
            for (j, b) in other.values.iter().enumerate() {
                let v = PhasePoint::from_index(other.n, j)?;
                values[u.concat(&v)?.index()] = a * b;
            }
        }
        QuasiDist::new(n, values)
    }

    pub fn to_json(&self) -> String {
        let repr = QuasiDistRepr {
            n_qubits: self.n,
            values: self.values.iter().map(|v| [v.re, v.im]).collect(),
        };
        serde_json::to_string(&repr).expect("serialization cannot fail")
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let repr: QuasiDistRepr =
            serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
        QuasiDist::new(
            repr.n_qubits,
            repr.values.iter().map(|[re, im]| c(*re, *im)).collect(),
        )
    }
}

/// A density matrix on `n` qubits, dense in the computational basis.
#[derive(Clone, Debug, PartialEq)]
pub struct DensityMatrix {
    n: usize,
    mat: CMat,
}

impl DensityMatrix {
    /// Wraps a matrix without validating positivity; shape must be `2^n`.
    pub fn from_matrix(n: usize, mat: CMat) -> Result<Self> {
        if n > MAX_DENSE_QUBITS {
            return Err(Error::TooLarge(n));
        }
        let dim = 1usize << n;
        if mat.nrows() != dim || mat.ncols() != dim {
            return Err(Error::Dimension(format!(
                "expected {dim}x{dim} matrix, got {}x{}",
                mat.nrows(),
                mat.ncols()
            )));
        }
        Ok(Self { n, mat })
    }

    pub fn pure(n: usize, amplitudes: &[Complex64]) -> Result<Self> {
        let dim = 1usize << n;
        if amplitudes.len() != dim {
            return Err(Error::Dimension("state vector length mismatch".into()));
        }
        let norm: f64 = amplitudes.iter().map(|a| a.norm_sqr()).sum();
        if (norm - 1.0).abs() > 1e-6 {
            return Err(Error::Invalid("state vector not normalised".into()));
        }
        let mut mat = CMat::zeros(dim, dim);
        for i in 0..dim {
            for j in 0..dim {
                mat[(i, j)] = amplitudes[i] * amplitudes[j].conj();
            }
        }
        Self::from_matrix(n, mat)
    }

    pub fn basis_state(n: usize, idx: usize) -> Result<Self> {
        let dim = 1usize << n;
        let mut amps = vec![c(0.0, 0.0); dim];
        amps[idx] = c(1.0, 0.0);
        Self::pure(n, &amps)
    }

    pub fn maximally_mixed(n: usize) -> Result<Self> {
        let dim = 1usize << n;
        Ok(Self {
            n,
            mat: CMat::identity(dim, dim) * c(1.0 / dim as f64, 0.0),
        })
    }

    pub fn n_qubits(&self) -> usize {
        self.n
    }

    pub fn matrix(&self) -> &CMat {
        &self.mat
    }

    pub fn trace(&self) -> Complex64 {
        self.mat.trace()
    }

    pub fn tensor(&self, other: &DensityMatrix) -> Result<DensityMatrix> {
        DensityMatrix::from_matrix(self.n + other.n, self.mat.kronecker(&other.mat))
    }

    pub fn tensor_power(&self, m: usize) -> Result<DensityMatrix> {
        let mut out = self.clone();
        for _ in 1..m {
            out = out.tensor(self)?;
        }
        Ok(out)
    }

    /// Convex combination `p self + (1-p) other`.
    pub fn mix(&self, other: &DensityMatrix, p: f64) -> Result<DensityMatrix> {
        if self.n != other.n {
            return Err(Error::Dimension("mixing states of different size".into()));
        }
        DensityMatrix::from_matrix(
            self.n,
            &self.mat * c(p, 0.0) + &other.mat * c(1.0 - p, 0.0),
        )
    }

    /// Eigenvalues, requiring hermiticity within `tol`.
    pub fn eigenvalues(&self, tol: f64) -> Result<Vec<f64>> {
        let herm_dev = (&self.mat - self.mat.adjoint()).norm();
        if herm_dev > tol * self.mat.nrows() as f64 {
            return Err(Error::Invalid(format!(
                "matrix not hermitian (deviation {herm_dev:.3e})"
            )));
        }
        let eig = nalgebra::SymmetricEigen::new(self.mat.clone());
        Ok(eig.eigenvalues.iter().copied().collect())
    }

    pub fn max_eigenvalue(&self, tol: f64) -> Result<f64> {
        Ok(self
            .eigenvalues(tol)?
            .into_iter()
            .fold(f64::NEG_INFINITY, f64::max))
    }

    /// Checks hermiticity, unit trace and positivity within `tol`.
    pub fn validate(&self, tol: f64) -> Result<()> {
        if (self.trace() - c(1.0, 0.0)).norm() > tol {
            return Err(Error::Invalid(format!(
                "trace deviates from 1 by {:.3e}",
                (self.trace() - c(1.0, 0.0)).norm()
            )));
        }
        let min = self
            .eigenvalues(tol)?
            .into_iter()
            .fold(f64::INFINITY, f64::min);
        if min < -tol {
            return Err(Error::Invalid(format!("negative eigenvalue {min:.3e}")));
        }
        Ok(())
    }

    /// Whether the matrix is real in the computational basis.
    pub fn is_rebit(&self, tol: f64) -> bool {
        self.mat.iter().all(|v| v.im.abs() <= tol)
    }

    /// Trace distance `||self - other||_1`.
    pub fn trace_distance(&self, other: &DensityMatrix) -> Result<f64> {
        if self.n != other.n {
            return Err(Error::Dimension("trace distance size mismatch".into()));
        }
        let diff = DensityMatrix::from_matrix(self.n, &self.mat - &other.mat)?;
        Ok(diff
            .eigenvalues(DEFAULT_TOL)?
            .iter()
            .map(|e| e.abs())
            .sum())
    }

    pub fn fidelity_with_pure(&self, psi: &DensityMatrix) -> Result<f64> {
        if self.n != psi.n {
            return Err(Error::Dimension("fidelity size mismatch".into()));
        }
        Ok((&psi.mat * &self.mat).trace().re)
    }

    /// Partial trace over the given qubits (1-based positions).
    pub fn partial_trace(&self, discard: &[usize]) -> Result<DensityMatrix> {
        for &q in discard {
            if q == 0 || q > self.n {
                return Err(Error::Invalid(format!("qubit {q} out of range")));
            }
        }
        let keep: Vec<usize> = (1..=self.n).filter(|q| !discard.contains(q)).collect();
        let m = keep.len();
        let dim_out = 1usize << m;
        let dim_env = 1usize << discard.len();
        let mut out = CMat::zeros(dim_out, dim_out);
        // bit position (from MSB) of qubit q is q-1
        let pos = |q: usize| self.n - q;
        for a in 0..dim_out {
            for b in 0..dim_out {
                let mut acc = c(0.0, 0.0);
                for e in 0..dim_env {
                    let mut ia = 0usize;
                    let mut ib = 0usize;
                    for (t, &q) in keep.iter().enumerate() {
                        let bit_a = (a >> (m - 1 - t)) & 1;
                        let bit_b = (b >> (m - 1 - t)) & 1;
                        ia |= bit_a << pos(q);
                        ib |= bit_b << pos(q);
                    }
                    for (t, &q) in discard.iter().enumerate() {
                        let bit = (e >> (discard.len() - 1 - t)) & 1;
                        ia |= bit << pos(q);
                        ib |= bit << pos(q);
                    }
                    acc += self.mat[(ia, ib)];
                }
                out[(a, b)] = acc;
            }
        }
        DensityMatrix::from_matrix(m, out)
    }
}
