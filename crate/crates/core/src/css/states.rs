//! Enumeration of small pure stabilizer states and CSS membership tests.
//!
//! For one and two qubits every pure stabilizer state is enumerated from
//! its stabilizer group. A pure stabilizer state is CSS exactly when its
//! group is generated by pure X-type and Z-type elements; mixed-state CSS
//! membership is decided by projecting onto the convex hull of the pure
//! CSS states.

use super::CssCode;
use crate::phase_space::{c, CMat, DensityMatrix, Pauli};
use crate::{Error, Result};
use num_complex::Complex64;

/// A pure stabilizer state with its generating set.
#[derive(Clone, Debug)]
pub struct StabState {
    pub state: DensityMatrix,
    pub gens: Vec<Pauli>,
    pub is_css: bool,
}

/// Hermitian Pauli `(-1)^neg i^{|x & z|} Z(z) X(x)`.
fn hermitian_pauli(n: usize, x: u64, z: u64, neg: bool) -> Pauli {
    let mut coeff = Complex64::new(if neg { -1.0 } else { 1.0 }, 0.0);
    for _ in 0..(x & z).count_ones() {
        coeff *= c(0.0, 1.0);
    }
    Pauli { n, x, z, coeff }
}

fn symplectic_rank(rows: &[(u64, u64)], n: usize) -> usize {
    let packed: Vec<u64> = rows.iter().map(|(x, z)| (x << n) | z).collect();
    super::gf2_rank(&packed)
}

fn state_key(m: &CMat) -> Vec<i64> {
    m.iter()
        .flat_map(|v| {
            [
                (v.re * 1e9).round() as i64,
                (v.im * 1e9).round() as i64,
            ]
        })
        .collect()
}

fn group_is_css(gens: &[(u64, u64)], n: usize) -> bool {
    // expand the group and keep the pure-type elements
    let r = gens.len();
    let mut pure = Vec::new();
    for subset in 1u32..(1 << r) {
        let mut x = 0u64;
        let mut z = 0u64;
        for (i, g) in gens.iter().enumerate() {
            if (subset >> i) & 1 == 1 {
                x ^= g.0;
                z ^= g.1;
            }
        }
        if x == 0 || z == 0 {
            pure.push((x, z));
        }
    }
    symplectic_rank(&pure, n) == n
}

/// All pure stabilizer states on `n <= 2` qubits.
pub fn enumerate_pure_stabilizer(n: usize) -> Result<Vec<StabState>> {
    if n == 0 || n > 2 {
        return Err(Error::Invalid("enumeration limited to 1 or 2 qubits".into()));
    }
    let dim = 1usize << n;
    let nontrivial: Vec<(u64, u64)> = (1..1u64 << (2 * n))
        .map(|v| (v >> n, v & ((1 << n) - 1)))
        .collect();
    let mut seen = std::collections::HashSet::new();
    let mut out = Vec::new();
    let consider = |unsigned: &[(u64, u64)], out: &mut Vec<StabState>,
                        seen: &mut std::collections::HashSet<Vec<i64>>|
     -> Result<()> {
        for signs in 0..1u32 << unsigned.len() {
            let gens: Vec<Pauli> = unsigned
                .iter()
                .enumerate()
                .map(|(i, &(x, z))| hermitian_pauli(n, x, z, (signs >> i) & 1 == 1))
                .collect();
            let mut p = CMat::identity(dim, dim);
            for g in &gens {
                p = (&p + g.to_matrix()? * &p) * c(0.5, 0.0);
            }
            if (p.trace().re - 1.0).abs() > 1e-9 {
                continue; // -I in the group
            }
            if seen.insert(state_key(&p)) {
                out.push(StabState {
                    state: DensityMatrix::from_matrix(n, p)?,
                    is_css: group_is_css(unsigned, n),
                    gens,
                });
            }
        }
        Ok(())
    };
    if n == 1 {
        for &g in &nontrivial {
            consider(&[g], &mut out, &mut seen)?;
        }
    } else {
        for (i, &g1) in nontrivial.iter().enumerate() {
            for &g2 in nontrivial.iter().skip(i + 1) {
                let sym = (g1.1 & g2.0).count_ones() + (g2.1 & g1.0).count_ones();
                if sym % 2 != 0 {
                    continue;
                }
                if g1.0 ^ g2.0 == 0 && g1.1 ^ g2.1 == 0 {
                    continue;
                }
                consider(&[g1, g2], &mut out, &mut seen)?;
            }
        }
    }
    Ok(out)
}

/// The pure CSS states on `n <= 2` qubits.
pub fn enumerate_pure_css(n: usize) -> Result<Vec<DensityMatrix>> {
    Ok(enumerate_pure_stabilizer(n)?
        .into_iter()
        .filter(|s| s.is_css)
        .map(|s| s.state)
        .collect())
}

/// The vertex set of the CSS polytope on `n` qubits.
#[derive(Clone, Debug)]
pub struct CssStateSet {
    n: usize,
    states: Vec<DensityMatrix>,
}

impl CssStateSet {
    pub fn new(n: usize) -> Result<Self> {
        Ok(Self {
            n,
            states: enumerate_pure_css(n)?,
        })
    }

    pub fn n_qubits(&self) -> usize {
        self.n
    }

    pub fn states(&self) -> &[DensityMatrix] {
        &self.states
    }

    pub fn len(&self) -> usize {
        self.states.len()
    }

    pub fn is_empty(&self) -> bool {
        self.states.is_empty()
    }
}

/// Euclidean projection onto the probability simplex.
pub(crate) fn project_simplex(v: &mut [f64], floor: f64) {
    let m = v.len();
    let mass = 1.0 - floor * m as f64;
    let mut shifted: Vec<f64> = v.iter().map(|x| x - floor).collect();
    let mut sorted = shifted.clone();
    sorted.sort_by(|a, b| b.partial_cmp(a).unwrap());
    let mut cum = 0.0;
    let mut theta = 0.0;
    for (i, &s) in sorted.iter().enumerate() {
        cum += s;
        let t = (cum - mass) / (i + 1) as f64;
        if s - t > 0.0 {
            theta = t;
        }
    }
    for x in shifted.iter_mut() {
        *x = (*x - theta).max(0.0);
    }
    for (out, s) in v.iter_mut().zip(shifted) {
        *out = s + floor;
    }
}

/// Result of a convex hull membership test.
#[derive(Clone, Debug)]
pub struct HullResult {
    pub inside: bool,
    /// Frobenius distance from the best hull point.
    pub distance: f64,
    pub weights: Vec<f64>,
}

/// Tests whether `rho` lies in the convex hull of pure CSS states.
///
/// Solves `min_{lambda in simplex} ||sum_i lambda_i V_i - rho||_F` by
/// projected gradient descent; exact for the small vertex sets involved.
pub fn is_css_state(rho: &DensityMatrix, tol: f64) -> Result<HullResult> {
    let n = rho.n_qubits();
    let set = CssStateSet::new(n)?;
    let m = set.len();
    let dim2 = 1usize << (2 * n);
    // vectorise to real coordinates
    let embed = |s: &DensityMatrix| -> Vec<f64> {
        s.matrix()
            .iter()
            .flat_map(|v| [v.re, v.im])
            .collect()
    };
    let verts: Vec<Vec<f64>> = set.states().iter().map(embed).collect();
    let target = embed(rho);
    let d = 2 * dim2;
    let mut lam = vec![1.0 / m as f64; m];
    // Lipschitz constant of the gradient: 2 ||V||^2 <= 2 m max ||v||^2
    let vmax: f64 = verts
        .iter()
        .map(|v| v.iter().map(|x| x * x).sum::<f64>())
        .fold(0.0, f64::max);
    let step = 1.0 / (2.0 * m as f64 * vmax).max(1e-12);
    let mut resid = vec![0.0; d];
    for _ in 0..4000 {
        for (j, r) in resid.iter_mut().enumerate() {
            let mut acc = -target[j];
            for (l, v) in lam.iter().zip(&verts) {
                acc += l * v[j];
            }
            *r = acc;
        }
        let mut grad = vec![0.0; m];
        for (g, v) in grad.iter_mut().zip(&verts) {
            *g = 2.0 * v.iter().zip(&resid).map(|(a, b)| a * b).sum::<f64>();
        }
        for (l, g) in lam.iter_mut().zip(&grad) {
            *l -= step * g;
        }
        project_simplex(&mut lam, 0.0);
    }
    let mut dist2 = 0.0;
    for (j, t) in target.iter().enumerate() {
        let mut acc = -t;
        for (l, v) in lam.iter().zip(&verts) {
            acc += l * v[j];
        }
        dist2 += acc * acc;
    }
    let distance = dist2.sqrt();
    Ok(HullResult {
        inside: distance <= tol,
        distance,
        weights: lam,
    })
}

/// CSS codes double as state preparations; the logical-zero state of a
/// small code is occasionally useful in tests.
pub fn logical_zero(code: &CssCode) -> Result<DensityMatrix> {
    let enc = super::encoder::synth_encoder(code)?;
    let u = enc.unitary()?;
    let n = code.n();
    let dim = 1usize << n;
    let s = enc.num_x_ancillas();
    let k = code.k();
    // ancilla pattern: |+> on X slots, |0> elsewhere
    let mut amps = vec![c(0.0, 0.0); dim];
    let norm = 1.0 / (1usize << s) as f64;
    for a in 0..1usize << s {
        let mut idx = 0usize;
        for (t, q) in (k..k + s).enumerate() {
            idx |= ((a >> (s - 1 - t)) & 1) << (n - 1 - q);
        }
        amps[idx] = c(norm.sqrt(), 0.0);
    }
    let psi = CMat::from_column_slice(dim, 1, &amps);
    let encoded = &u * psi;
    let mut mat = CMat::zeros(dim, dim);
    for i in 0..dim {
        for j in 0..dim {
            mat[(i, j)] = encoded[(i, 0)] * encoded[(j, 0)].conj();
        }
    }
    DensityMatrix::from_matrix(n, mat)
}
