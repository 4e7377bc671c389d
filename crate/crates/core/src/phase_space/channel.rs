//! Channels in Kraus form and their Wigner (phase space) matrices.
//!
//! The Wigner matrix of a channel `E: n -> m` is
//! `W_E(v|u) = 2^{-m} tr[A_v^dag E(A_u)]`, extracted here from the Choi
//! state: `W_E(v|u) = 2^{2n} W_{J(E)}(u (+) v)` with the input copy on the
//! leading qubits. Wigner matrices compose by matrix product and tensor by
//! Kronecker product; a channel is stochastically represented exactly when
//! its matrix is (entrywise real, nonnegative, columns summing to 1).

use super::wigner::phase_point_operator;
use super::{c, wigner_of_state, CMat, DensityMatrix, PhasePoint, QuasiDist};
use crate::{Error, Result, DEFAULT_TOL, MAX_DENSE_QUBITS};
use num_complex::Complex64;

/// A completely positive map given by Kraus operators (`2^m x 2^n` each).
#[derive(Clone, Debug)]
pub struct Channel {
    n_in: usize,
    n_out: usize,
    kraus: Vec<CMat>,
}

impl Channel {
    pub fn new(n_in: usize, n_out: usize, kraus: Vec<CMat>) -> Result<Self> {
        if n_in > MAX_DENSE_QUBITS || n_out > MAX_DENSE_QUBITS {
            return Err(Error::TooLarge(n_in.max(n_out)));
        }
        let (rows, cols) = (1usize << n_out, 1usize << n_in);
        if kraus.is_empty() {
            return Err(Error::Invalid("channel needs at least one Kraus term".into()));
        }
        for k in &kraus {
            if k.nrows() != rows || k.ncols() != cols {
                return Err(Error::Dimension(format!(
                    "Kraus shape {}x{}, expected {rows}x{cols}",
                    k.nrows(),
                    k.ncols()
                )));
            }
        }
        Ok(Self { n_in, n_out, kraus })
    }

    pub fn identity(n: usize) -> Result<Self> {
        let dim = 1usize << n;
        Self::new(n, n, vec![CMat::identity(dim, dim)])
    }

    pub fn unitary(n: usize, u: CMat) -> Result<Self> {
        Self::new(n, n, vec![u])
    }

    pub fn n_in(&self) -> usize {
        self.n_in
    }

    pub fn n_out(&self) -> usize {
        self.n_out
    }

    pub fn kraus(&self) -> &[CMat] {
        &self.kraus
    }

    pub fn apply(&self, rho: &CMat) -> Result<CMat> {
        let dim = 1usize << self.n_in;
        if rho.nrows() != dim || rho.ncols() != dim {
            return Err(Error::Dimension("channel input dimension mismatch".into()));
        }
        let out_dim = 1usize << self.n_out;
        let mut out = CMat::zeros(out_dim, out_dim);
        for k in &self.kraus {
            out += k * rho * k.adjoint();
        }
        Ok(out)
    }

    /// Deviation of `sum_l K_l^dag K_l` from the identity.
    pub fn trace_preservation_defect(&self) -> f64 {
        let dim = 1usize << self.n_in;
        let mut s = CMat::zeros(dim, dim);
        for k in &self.kraus {
            s += k.adjoint() * k;
        }
        (s - CMat::identity(dim, dim)).norm()
    }

    pub fn is_trace_preserving(&self, tol: f64) -> bool {
        self.trace_preservation_defect() <= tol * (1usize << self.n_in) as f64
    }

    /// Sequential composition `other . self` (self acts first).
    pub fn then(&self, other: &Channel) -> Result<Channel> {
        if other.n_in != self.n_out {
            return Err(Error::Dimension("channel composition mismatch".into()));
        }
        let mut kraus = Vec::with_capacity(self.kraus.len() * other.kraus.len());
        for k2 in &other.kraus {
            for k1 in &self.kraus {
                kraus.push(k2 * k1);
            }
        }
        let mut ch = Channel::new(self.n_in, other.n_out, kraus)?;
        ch.compress_if_large();
        Ok(ch)
    }

    /// Parallel composition, `self` on the leading qubits.
    pub fn tensor(&self, other: &Channel) -> Result<Channel> {
        let mut kraus = Vec::with_capacity(self.kraus.len() * other.kraus.len());
        for k1 in &self.kraus {
            for k2 in &other.kraus {
                kraus.push(k1.kronecker(k2));
            }
        }
        Channel::new(self.n_in + other.n_in, self.n_out + other.n_out, kraus)
    }

    /// Convex mixture of channels with matching signatures.
    pub fn mix(parts: &[(f64, Channel)]) -> Result<Channel> {
        let (n_in, n_out) = match parts.first() {
            Some((_, ch)) => (ch.n_in, ch.n_out),
            None => return Err(Error::Invalid("empty mixture".into())),
        };
        let mut kraus = Vec::new();
        for (w, ch) in parts {
            if ch.n_in != n_in || ch.n_out != n_out {
                return Err(Error::Dimension("mixture signature mismatch".into()));
            }
            if *w < 0.0 {
                return Err(Error::Invalid("negative mixture weight".into()));
            }
            for k in &ch.kraus {
                kraus.push(k * c(w.sqrt(), 0.0));
            }
        }
        let mut ch = Channel::new(n_in, n_out, kraus)?;
        ch.compress_if_large();
        Ok(ch)
    }

    /// Choi state `J(E) = (I (x) E)(phi+)` with the input copy leading.
    ///
    /// For trace-decreasing maps the result has trace below 1; it is
    /// returned unvalidated for that reason.
    pub fn choi(&self) -> Result<DensityMatrix> {
        let n = self.n_in;
        let m = self.n_out;
        if n + m > MAX_DENSE_QUBITS {
            return Err(Error::TooLarge(n + m));
        }
        let dim_in = 1usize << n;
        let dim_out = 1usize << m;
        let dim = dim_in * dim_out;
        let mut j = CMat::zeros(dim, dim);
        let scale = 1.0 / dim_in as f64;
        for k in &self.kraus {
            // (I (x) K) |phi+> has amplitudes K[a, i] at basis index (i, a)
            let mut w = CMat::zeros(dim, 1);
            for i in 0..dim_in {
                for a in 0..dim_out {
                    w[(i * dim_out + a, 0)] = k[(a, i)];
                }
            }
            j += (&w * w.adjoint()) * c(scale, 0.0);
        }
        DensityMatrix::from_matrix(n + m, j)
    }

    /// Replaces the Kraus list by a minimal one via the Choi eigensystem.
    fn compress_if_large(&mut self) {
        let max_rank = 1usize << (self.n_in + self.n_out);
        if self.kraus.len() <= max_rank || self.n_in + self.n_out > MAX_DENSE_QUBITS {
            return;
        }
        if let Ok(j) = self.choi() {
            let dim_in = 1usize << self.n_in;
            let dim_out = 1usize << self.n_out;
            let eig = nalgebra::SymmetricEigen::new(j.matrix().clone());
            let mut kraus = Vec::new();
            for (l, &lam) in eig.eigenvalues.iter().enumerate() {
                if lam <= 1e-14 {
                    continue;
                }
                let col = eig.eigenvectors.column(l);
                let mut k = CMat::zeros(dim_out, dim_in);
                let scale = (lam * dim_in as f64).sqrt();
                for i in 0..dim_in {
                    for a in 0..dim_out {
                        k[(a, i)] = col[i * dim_out + a] * scale;
                    }
                }
                kraus.push(k);
            }
            if !kraus.is_empty() {
                self.kraus = kraus;
            }
        }
    }
}

/// Free-function access to the Choi state of a channel.
pub fn choi_state(ch: &Channel) -> Result<DensityMatrix> {
    ch.choi()
}

/// Outcome of a stochasticity check on a channel matrix.
#[derive(Clone, Debug)]
pub struct StochasticReport {
    pub ok: bool,
    /// Most negative real part over all entries.
    pub min_entry: f64,
    /// Largest imaginary part magnitude over all entries.
    pub max_imag: f64,
    /// Largest deviation of a column sum from 1.
    pub max_col_defect: f64,
}

/// The phase space matrix of a channel, `4^{n_out} x 4^{n_in}`.
#[derive(Clone, Debug, PartialEq)]
pub struct ChannelMatrix {
    n_in: usize,
    n_out: usize,
    mat: CMat,
}

impl ChannelMatrix {
    pub fn new(n_in: usize, n_out: usize, mat: CMat) -> Result<Self> {
        if mat.nrows() != 1usize << (2 * n_out) || mat.ncols() != 1usize << (2 * n_in) {
            return Err(Error::Dimension("channel matrix shape mismatch".into()));
        }
        Ok(Self { n_in, n_out, mat })
    }

    pub fn n_in(&self) -> usize {
        self.n_in
    }

    pub fn n_out(&self) -> usize {
        self.n_out
    }

    pub fn matrix(&self) -> &CMat {
        &self.mat
    }

    pub fn entry(&self, v: &PhasePoint, u: &PhasePoint) -> Complex64 {
        self.mat[(v.index(), u.index())]
    }

    /// Action on a quasidistribution: `W' = W_E W`.
    pub fn apply(&self, w: &QuasiDist) -> Result<QuasiDist> {
        if w.n_qubits() != self.n_in {
            return Err(Error::Dimension("quasidistribution size mismatch".into()));
        }
        let v = CMat::from_column_slice(w.values().len(), 1, w.values());
        let out = &self.mat * v;
        QuasiDist::new(self.n_out, out.iter().copied().collect())
    }

    /// Composition `other . self` as a matrix product.
    pub fn then(&self, other: &ChannelMatrix) -> Result<ChannelMatrix> {
        if other.n_in != self.n_out {
            return Err(Error::Dimension("channel matrix composition mismatch".into()));
        }
        ChannelMatrix::new(self.n_in, other.n_out, &other.mat * &self.mat)
    }

    pub fn tensor(&self, other: &ChannelMatrix) -> Result<ChannelMatrix> {
        // flat indices interleave as (x1 x2, z1 z2), so this is a permuted
        // Kronecker product rather than a plain one
        let n_in = self.n_in + other.n_in;
        let n_out = self.n_out + other.n_out;
        let mut mat = CMat::zeros(1 << (2 * n_out), 1 << (2 * n_in));
        for u1 in 0..1usize << (2 * self.n_in) {
            let p_u1 = PhasePoint::from_index(self.n_in, u1)?;
            for u2 in 0..1usize << (2 * other.n_in) {
                let p_u2 = PhasePoint::from_index(other.n_in, u2)?;
                let uc = p_u1.concat(&p_u2)?.index();
                for v1 in 0..1usize << (2 * self.n_out) {
                    let p_v1 = PhasePoint::from_index(self.n_out, v1)?;
                    for v2 in 0..1usize << (2 * other.n_out) {
                        let p_v2 = PhasePoint::from_index(other.n_out, v2)?;
                        let vc = p_v1.concat(&p_v2)?.index();
                        mat[(vc, uc)] = self.mat[(v1, u1)] * other.mat[(v2, u2)];
                    }
                }
            }
        }
        ChannelMatrix::new(n_in, n_out, mat)
    }

    pub fn is_stochastic(&self, tol: f64) -> StochasticReport {
        let mut min_entry = f64::INFINITY;
        let mut max_imag = 0.0f64;
        for v in self.mat.iter() {
            min_entry = min_entry.min(v.re);
            max_imag = max_imag.max(v.im.abs());
        }
        let mut max_col_defect = 0.0f64;
        for col in 0..self.mat.ncols() {
            let s: Complex64 = self.mat.column(col).iter().sum();
            max_col_defect = max_col_defect.max((s - c(1.0, 0.0)).norm());
        }
        StochasticReport {
            ok: min_entry >= -tol && max_imag <= tol && max_col_defect <= tol,
            min_entry,
            max_imag,
            max_col_defect,
        }
    }
}

/// Phase space matrix via the Choi state and the factorised transform.
pub fn wigner_of_channel(ch: &Channel) -> Result<ChannelMatrix> {
    let n = ch.n_in();
    let m = ch.n_out();
    let j = ch.choi()?;
    let wj = wigner_of_state(&j)?;
    let scale = (1usize << (2 * n)) as f64;
    let mut mat = CMat::zeros(1 << (2 * m), 1 << (2 * n));
    for u in 0..1usize << (2 * n) {
        let pu = PhasePoint::from_index(n, u)?;
        for v in 0..1usize << (2 * m) {
            let pv = PhasePoint::from_index(m, v)?;
            mat[(v, u)] = wj.values()[pu.concat(&pv)?.index()] * scale;
        }
    }
    ChannelMatrix::new(n, m, mat)
}

/// Direct-definition channel matrix, `2^{-m} tr[A_v^dag E(A_u)]`.
///
/// Quadratically slower than [`wigner_of_channel`]; kept as an oracle.
pub fn wigner_of_channel_direct(ch: &Channel) -> Result<ChannelMatrix> {
    let n = ch.n_in();
    let m = ch.n_out();
    let scale = 1.0 / (1usize << m) as f64;
    let mut mat = CMat::zeros(1 << (2 * m), 1 << (2 * n));
    for u in 0..1usize << (2 * n) {
        let au = phase_point_operator(&PhasePoint::from_index(n, u)?)?;
        let eau = ch.apply(&au)?;
        for v in 0..1usize << (2 * m) {
            let av = phase_point_operator(&PhasePoint::from_index(m, v)?)?;
            mat[(v, u)] = (av.adjoint() * &eau).trace() * scale;
        }
    }
    ChannelMatrix::new(n, m, mat)
}

/// Convenience check combining [`wigner_of_channel`] and the stochasticity
/// report with the default tolerance.
pub fn is_stochastic(ch: &Channel) -> Result<StochasticReport> {
    Ok(wigner_of_channel(ch)?.is_stochastic(DEFAULT_TOL))
}
