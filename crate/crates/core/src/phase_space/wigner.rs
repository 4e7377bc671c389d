//! Wigner transforms of states via the per-qubit factorisation of `A_u`.
//!
//! `A_{u (+) v} = A_u (x) A_v`, so `W_rho(u) = 2^{-n} tr[A_u^T rho]`
//! contracts one qubit at a time against a fixed 4x4 kernel. This keeps
//! the transform at `O(n 4^n)` and makes 9-qubit Choi states cheap, where
//! forming each `A_u` separately would cost `O(16^n)`.

use super::{c, CMat, DensityMatrix, PhasePoint, QuasiDist};
use crate::{Error, Result};
use num_complex::Complex64;

/// The four single-qubit phase point operators, indexed by `2x + z`.
///
/// All four are real and non-hermitian:
/// `A_00 = [[1,1],[0,0]]`, `A_01 = [[1,-1],[0,0]]`,
/// `A_10 = [[0,0],[1,1]]`, `A_11 = [[0,0],[-1,1]]`.
pub fn single_qubit_phase_point_operators() -> [CMat; 4] {
    let r = |v: [f64; 4]| {
        CMat::from_row_slice(2, 2, &[c(v[0], 0.0), c(v[1], 0.0), c(v[2], 0.0), c(v[3], 0.0)])
    };
    [
        r([1.0, 1.0, 0.0, 0.0]),
        r([1.0, -1.0, 0.0, 0.0]),
        r([0.0, 0.0, 1.0, 1.0]),
        r([0.0, 0.0, -1.0, 1.0]),
    ]
}

/// Dense `A_u` as the tensor product of single-qubit factors.
pub fn phase_point_operator(u: &PhasePoint) -> Result<CMat> {
    let n = u.n_qubits();
    if n > crate::MAX_DENSE_QUBITS {
        return Err(Error::TooLarge(n));
    }
    let a = single_qubit_phase_point_operators();
    let mut m = CMat::identity(1, 1);
    for q in (0..n).rev() {
        let x = (u.x() >> q) & 1;
        let z = (u.z() >> q) & 1;
        m = m.kronecker(&a[(2 * x + z) as usize]);
    }
    Ok(m)
}

/// Flat `(x, z)` index assembled from per-qubit digits (qubit 1 first).
fn digits_to_index(digits: &[usize], n: usize) -> usize {
    let mut x = 0usize;
    let mut z = 0usize;
    for (j, d) in digits.iter().enumerate() {
        x |= (d >> 1) << (n - 1 - j);
        z |= (d & 1) << (n - 1 - j);
    }
    (x << n) | z
}

/// Contracts digit `j` (stride layout, 4 values per digit) with `kernel[out][in]`.
fn contract_digit(values: &mut Vec<Complex64>, n: usize, j: usize, kernel: &[[Complex64; 4]; 4]) {
    let stride = 1usize << (2 * (n - 1 - j));
    let outer = 1usize << (2 * j);
    let mut next = vec![c(0.0, 0.0); values.len()];
    for o in 0..outer {
        let base_o = o * 4 * stride;
        for s in 0..stride {
            let base = base_o + s;
            let inp = [
                values[base],
                values[base + stride],
                values[base + 2 * stride],
                values[base + 3 * stride],
            ];
            for (d, row) in kernel.iter().enumerate() {
                next[base + d * stride] =
                    row[0] * inp[0] + row[1] * inp[1] + row[2] * inp[2] + row[3] * inp[3];
            }
        }
    }
    *values = next;
}

/// `W_rho(u) = 2^{-n} tr[A_u^dag rho]`, computed with the factorised kernel.
pub fn wigner_of_state(rho: &DensityMatrix) -> Result<QuasiDist> {
    let n = rho.n_qubits();
    let dim = 1usize << n;
    // pack rho into a tensor with per-qubit digit m_j = 2 row_j + col_j
    let mut values = vec![c(0.0, 0.0); dim * dim];
    for idx in 0..dim * dim {
        let mut row = 0usize;
        let mut col = 0usize;
        for j in 0..n {
            let d = (idx >> (2 * (n - 1 - j))) & 3;
            row |= (d >> 1) << (n - 1 - j);
            col |= (d & 1) << (n - 1 - j);
        }
        values[idx] = rho.matrix()[(row, col)];
    }
    // kernel[u][m] with m = 2b + a: (1/2) A_u[b, a]
    let a = single_qubit_phase_point_operators();
    let mut kernel = [[c(0.0, 0.0); 4]; 4];
    for (u, au) in a.iter().enumerate() {
        for b in 0..2 {
            for acol in 0..2 {
                kernel[u][2 * b + acol] = au[(b, acol)] * 0.5;
            }
        }
    }
    for j in 0..n {
        contract_digit(&mut values, n, j, &kernel);
    }
    // reorder from per-qubit digits (2x_j + z_j) to flat (x, z)
    let mut out = vec![c(0.0, 0.0); dim * dim];
    let mut digits = vec![0usize; n];
    for (idx, v) in values.iter().enumerate() {
        for (j, d) in digits.iter_mut().enumerate() {
            *d = (idx >> (2 * (n - 1 - j))) & 3;
        }
        out[digits_to_index(&digits, n)] = *v;
    }
    QuasiDist::new(n, out)
}

/// Inverse transform `rho = sum_u W(u) A_u`.
pub fn state_of_wigner(w: &QuasiDist) -> Result<DensityMatrix> {
    let n = w.n_qubits();
    if n > crate::MAX_DENSE_QUBITS {
        return Err(Error::TooLarge(n));
    }
    let dim = 1usize << n;
    // reorder flat (x, z) into per-qubit digits
    let mut values = vec![c(0.0, 0.0); dim * dim];
    for (digit_idx, v) in values.iter_mut().enumerate() {
        let mut digits = vec![0usize; n];
        for (j, d) in digits.iter_mut().enumerate() {
            *d = (digit_idx >> (2 * (n - 1 - j))) & 3;
        }
        *v = w.values()[digits_to_index(&digits, n)];
    }
    // kernel[m][u] with m = 2b + a: A_u[b, a]
    let a = single_qubit_phase_point_operators();
    let mut kernel = [[c(0.0, 0.0); 4]; 4];
    for (u, au) in a.iter().enumerate() {
        for b in 0..2 {
            for acol in 0..2 {
                kernel[2 * b + acol][u] = au[(b, acol)];
            }
        }
    }
    for j in 0..n {
        contract_digit(&mut values, n, j, &kernel);
    }
    let mut mat = CMat::zeros(dim, dim);
    for idx in 0..dim * dim {
        let mut row = 0usize;
        let mut col = 0usize;
        for j in 0..n {
            let d = (idx >> (2 * (n - 1 - j))) & 3;
            row |= (d >> 1) << (n - 1 - j);
            col |= (d & 1) << (n - 1 - j);
        }
        mat[(row, col)] = values[idx];
    }
    DensityMatrix::from_matrix(n, mat)
}

/// Wigner functions of the real and imaginary parts of `rho`.
///
/// Since every `A_u` is real, `W_{Re rho} = Re W_rho` and
/// `W_{Im rho} = Im W_rho`; the split is returned as two transforms so the
/// identity is testable.
pub fn split_real_imag(rho: &DensityMatrix) -> Result<(QuasiDist, QuasiDist)> {
    let n = rho.n_qubits();
    let dim = 1usize << n;
    let mut re = CMat::zeros(dim, dim);
    let mut im = CMat::zeros(dim, dim);
    for i in 0..dim {
        for j in 0..dim {
            let v = rho.matrix()[(i, j)];
            re[(i, j)] = c(v.re, 0.0);
            im[(i, j)] = c(v.im, 0.0);
        }
    }
    Ok((
        wigner_of_state(&DensityMatrix::from_matrix(n, re)?)?,
        wigner_of_state(&DensityMatrix::from_matrix(n, im)?)?,
    ))
}

/// Split into the components spanned by symmetric (`x.z = 0 mod 2`) and
/// antisymmetric displacements, i.e. the Wigner functions of the matrix
/// symmetric and antisymmetric parts of `rho` in the computational basis.
pub fn split_sym_anti(rho: &DensityMatrix) -> Result<(QuasiDist, QuasiDist)> {
    let n = rho.n_qubits();
    let dim = 1usize << n;
    let mut sym = CMat::zeros(dim, dim);
    let mut anti = CMat::zeros(dim, dim);
    for i in 0..dim {
        for j in 0..dim {
            let v = rho.matrix()[(i, j)];
            let vt = rho.matrix()[(j, i)];
            sym[(i, j)] = (v + vt) * 0.5;
            anti[(i, j)] = (v - vt) * 0.5;
        }
    }
    Ok((
        wigner_of_state(&DensityMatrix::from_matrix(n, sym)?)?,
        wigner_of_state(&DensityMatrix::from_matrix(n, anti)?)?,
    ))
}
