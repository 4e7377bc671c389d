//! Signed Pauli operators in the canonical form `coeff * Z(z) X(x)`.

use super::{c, parity, CMat, PhasePoint};
use crate::{Error, Result, MAX_DENSE_QUBITS};
use num_complex::Complex64;

/// `coeff * Z(z) X(x)` on `n` qubits, qubit 1 most significant.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Pauli {
    pub n: usize,
    pub x: u64,
    pub z: u64,
    pub coeff: Complex64,
}

impl Pauli {
    pub fn identity(n: usize) -> Self {
        Self {
            n,
            x: 0,
            z: 0,
            coeff: c(1.0, 0.0),
        }
    }

    pub fn x_type(n: usize, mask: u64, negative: bool) -> Self {
        Self {
            n,
            x: mask,
            z: 0,
            coeff: c(if negative { -1.0 } else { 1.0 }, 0.0),
        }
    }

    pub fn z_type(n: usize, mask: u64, negative: bool) -> Self {
        Self {
            n,
            x: 0,
            z: mask,
            coeff: c(if negative { -1.0 } else { 1.0 }, 0.0),
        }
    }

    /// Single-qubit Y at position `q` (1-based) embeds as `i Z X`.
    pub fn y_at(n: usize, q: usize) -> Self {
        let bit = 1u64 << (n - q);
        Self {
            n,
            x: bit,
            z: bit,
            coeff: c(0.0, 1.0),
        }
    }

    /// Canonical product: `Z(z1)X(x1) Z(z2)X(x2) = (-1)^{x1.z2} Z(z1+z2)X(x1+x2)`.
    pub fn mul(&self, other: &Pauli) -> Result<Pauli> {
        if self.n != other.n {
            return Err(Error::Dimension("pauli sizes differ".into()));
        }
        let sign = if parity(self.x & other.z) == 1 {
            -1.0
        } else {
            1.0
        };
        Ok(Pauli {
            n: self.n,
            x: self.x ^ other.x,
            z: self.z ^ other.z,
            coeff: self.coeff * other.coeff * c(sign, 0.0),
        })
    }

    pub fn is_x_type(&self) -> bool {
        self.z == 0
    }

    pub fn is_z_type(&self) -> bool {
        self.x == 0
    }

    /// Support mask `x | z`.
    pub fn support(&self) -> u64 {
        self.x | self.z
    }

    pub fn to_matrix(&self) -> Result<CMat> {
        if self.n > MAX_DENSE_QUBITS {
            return Err(Error::TooLarge(self.n));
        }
        let mut m = CMat::identity(1, 1);
        for q in (0..self.n).rev() {
            // q counts from the least significant (last) qubit
            let x = (self.x >> q) & 1 == 1;
            let z = (self.z >> q) & 1 == 1;
            m = m.kronecker(&single_qubit_zx(x, z));
        }
        Ok(m * self.coeff)
    }
}

fn single_qubit_zx(x: bool, z: bool) -> CMat {
    match (x, z) {
        (false, false) => CMat::identity(2, 2),
        (true, false) => pauli_x_matrix(),
        (false, true) => pauli_z_matrix(),
        // Z X = [[0, 1], [-1, 0]] = -i Y
        (true, true) => CMat::from_row_slice(2, 2, &[c(0.0, 0.0), c(1.0, 0.0), c(-1.0, 0.0), c(0.0, 0.0)]),
    }
}

pub fn pauli_x_matrix() -> CMat {
    CMat::from_row_slice(2, 2, &[c(0.0, 0.0), c(1.0, 0.0), c(1.0, 0.0), c(0.0, 0.0)])
}

pub fn pauli_z_matrix() -> CMat {
    CMat::from_row_slice(2, 2, &[c(1.0, 0.0), c(0.0, 0.0), c(0.0, 0.0), c(-1.0, 0.0)])
}

/// Displacement operator `D_u = Z(u_z) X(u_x)` as a signed Pauli.
pub fn displacement(u: &PhasePoint) -> Pauli {
    Pauli {
        n: u.n_qubits(),
        x: u.x(),
        z: u.z(),
        coeff: c(1.0, 0.0),
    }
}
