//! Encoder synthesis by Gaussian elimination with CNOTs.
//!
//! Conjugation by `CNOT(i,j)` adds row `j` to row `i` on Z-type generator
//! bit vectors and row `i` to row `j` on X-type ones, so ordinary
//! Gauss-Jordan elimination over GF(2) can be scripted as a circuit. The
//! synthesised unitary `U` satisfies `U^dag S_i U = Z_{q}` or `X_{q}` for
//! each signed generator, with the logical block on qubits `1..k`, X-type
//! ancillas next (prepared in `|+>`), then Z-type ancillas (in `|0>`).
//! Sign fixing uses single `X`/`Z` gates; qubit relabelling uses swaps
//! expanded into three CNOTs.

use super::circuit::{CssCircuit, Gate, Step};
use super::CssCode;
use crate::phase_space::{CMat, Pauli};
use crate::{Error, Result, MAX_DENSE_QUBITS};

/// A synthesised encoding circuit over `{CNOT, X, Z}`.
#[derive(Clone, Debug)]
pub struct Encoder {
    n: usize,
    k: usize,
    /// Gates in application order of the encoding unitary.
    gates: Vec<Gate>,
    /// Number of X-type generators (ancilla qubits prepared in `|+>`).
    num_x: usize,
}

/// Pure-type logical representatives `X_i -> U X_i U^dag`, `Z_i -> U Z_i U^dag`.
#[derive(Clone, Debug)]
pub struct LogicalFrame {
    pub n: usize,
    pub k: usize,
    pub x_ops: Vec<Pauli>,
    pub z_ops: Vec<Pauli>,
}

struct Tableau {
    n: usize,
    z_rows: Vec<u64>,
    z_negs: Vec<bool>,
    x_rows: Vec<u64>,
    x_negs: Vec<bool>,
    gates: Vec<Gate>,
}

impl Tableau {
    fn bit(n: usize, q: usize) -> u64 {
        1u64 << (n - 1 - q)
    }

    fn cnot(&mut self, control: usize, target: usize) {
        let bc = Self::bit(self.n, control);
        let bt = Self::bit(self.n, target);
        for r in self.z_rows.iter_mut() {
            if *r & bt != 0 {
                *r ^= bc;
            }
        }
        for r in self.x_rows.iter_mut() {
            if *r & bc != 0 {
                *r ^= bt;
            }
        }
        self.gates.push(Gate::Cnot(control, target));
    }

    fn swap(&mut self, a: usize, b: usize) {
        if a != b {
            self.cnot(a, b);
            self.cnot(b, a);
            self.cnot(a, b);
        }
    }

    fn x_gate(&mut self, q: usize) {
        let bq = Self::bit(self.n, q);
        for (r, neg) in self.z_rows.iter().zip(self.z_negs.iter_mut()) {
            if *r & bq != 0 {
                *neg = !*neg;
            }
        }
        self.gates.push(Gate::X(q));
    }

    fn z_gate(&mut self, q: usize) {
        let bq = Self::bit(self.n, q);
        for (r, neg) in self.x_rows.iter().zip(self.x_negs.iter_mut()) {
            if *r & bq != 0 {
                *neg = !*neg;
            }
        }
        self.gates.push(Gate::Z(q));
    }
}

/// Synthesises an encoder for `code` as a `{CNOT, X, Z}` circuit.
pub fn synth_encoder(code: &CssCode) -> Result<Encoder> {
    code.validate()?;
    let n = code.n();
    let k = code.k();
    let r = code.z_rows().len();
    let s = code.x_rows().len();
    let mut tab = Tableau {
        n,
        z_rows: code.z_rows().to_vec(),
        z_negs: code.z_negs().to_vec(),
        x_rows: code.x_rows().to_vec(),
        x_negs: code.x_negs().to_vec(),
        gates: Vec::new(),
    };

    // Z-type block -> Z_0 .. Z_{r-1}
    for t in 0..r {
        let pivot = (t..n)
            .find(|&q| tab.z_rows[t] & Tableau::bit(n, q) != 0)
            .ok_or_else(|| Error::Invalid("Z generators dependent".into()))?;
        tab.swap(pivot, t);
        for q in 0..n {
            if q != t && tab.z_rows[t] & Tableau::bit(n, q) != 0 {
                tab.cnot(q, t);
            }
        }
    }
    // X-type block -> X_r .. X_{r+s-1}; commutation with the finished Z
    // block guarantees no X support on qubits below r
    for u in 0..s {
        let qt = r + u;
        let pivot = (qt..n)
            .find(|&q| tab.x_rows[u] & Tableau::bit(n, q) != 0)
            .ok_or_else(|| Error::Invalid("X generators dependent".into()))?;
        tab.swap(pivot, qt);
        for q in r..n {
            if q != qt && tab.x_rows[u] & Tableau::bit(n, q) != 0 {
                tab.cnot(qt, q);
            }
        }
    }
    // sign fixing
    for t in 0..r {
        if tab.z_negs[t] {
            tab.x_gate(t);
        }
    }
    for u in 0..s {
        if tab.x_negs[u] {
            tab.z_gate(r + u);
        }
    }
    // relabel: logical block first, then X ancillas, then Z ancillas
    let mut dest = vec![0usize; n];
    for t in 0..r {
        dest[t] = k + s + t;
    }
    for u in 0..s {
        dest[r + u] = k + u;
    }
    for f in 0..k {
        dest[r + s + f] = f;
    }
    for q in 0..n {
        while dest[q] != q {
            let d = dest[q];
            tab.swap(q, d);
            dest.swap(q, d);
        }
    }

    debug_assert!(tab
        .z_rows
        .iter()
        .enumerate()
        .all(|(t, &row)| row == Tableau::bit(n, k + s + t)));
    debug_assert!(tab
        .x_rows
        .iter()
        .enumerate()
        .all(|(u, &row)| row == Tableau::bit(n, k + u)));
    debug_assert!(tab.z_negs.iter().chain(&tab.x_negs).all(|neg| !neg));

    // recorded gates conjugate generators to single-qubit form, i.e. they
    // implement U^dag; the encoder runs them in reverse (all self-inverse)
    let mut gates = tab.gates;
    gates.reverse();
    Ok(Encoder {
        n,
        k,
        gates,
        num_x: s,
    })
}

impl Encoder {
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn gates(&self) -> &[Gate] {
        &self.gates
    }

    /// Number of `|+>` ancilla slots (qubits `k+1 ..= k+num_x`, 1-based).
    pub fn num_x_ancillas(&self) -> usize {
        self.num_x
    }

    /// Dense encoding unitary, for registers within the dense cap.
    pub fn unitary(&self) -> Result<CMat> {
        if self.n > MAX_DENSE_QUBITS {
            return Err(Error::TooLarge(self.n));
        }
        let dim = 1usize << self.n;
        let mut u = CMat::identity(dim, dim);
        for g in &self.gates {
            u = g.matrix(self.n)? * u;
        }
        Ok(u)
    }

    /// The encoder as a unitary-only circuit on `n` qubits.
    pub fn to_circuit(&self) -> CssCircuit {
        CssCircuit {
            n_in: self.n,
            steps: self.gates.iter().map(|g| Step::Gate(*g)).collect(),
        }
    }

    /// Conjugates a pure-type Pauli through the encoding circuit.
    fn push_through(&self, mut p: Pauli) -> Pauli {
        for g in &self.gates {
            match *g {
                Gate::Cnot(i, j) => {
                    let bi = Tableau::bit(self.n, i);
                    let bj = Tableau::bit(self.n, j);
                    let mut x = p.x;
                    let mut z = p.z;
                    if p.x & bi != 0 {
                        x ^= bj;
                    }
                    if p.z & bj != 0 {
                        z ^= bi;
                    }
                    p.x = x;
                    p.z = z;
                }
                Gate::X(q) => {
                    if p.z & Tableau::bit(self.n, q) != 0 {
                        p.coeff = -p.coeff;
                    }
                }
                Gate::Z(q) => {
                    if p.x & Tableau::bit(self.n, q) != 0 {
                        p.coeff = -p.coeff;
                    }
                }
            }
        }
        p
    }

    /// Logical Pauli representatives induced by this encoder.
    pub fn logical_frame(&self) -> LogicalFrame {
        let mut x_ops = Vec::new();
        let mut z_ops = Vec::new();
        for i in 0..self.k {
            let bit = Tableau::bit(self.n, i);
            x_ops.push(self.push_through(Pauli::x_type(self.n, bit, false)));
            z_ops.push(self.push_through(Pauli::z_type(self.n, bit, false)));
        }
        LogicalFrame {
            n: self.n,
            k: self.k,
            x_ops,
            z_ops,
        }
    }
}
