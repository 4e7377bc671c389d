//! Closed forms for the divergence gap of a flagged code projection.
//!
//! Both the classical (Wigner) and the sandwiched quantum gap reduce, for
//! the block-diagonal flagged output against its flagged reference, to
//!
//! `DeltaD(n) = n c1(alpha) + k - (alpha-1)^{-1} log2[ p^alpha Q
//!              + (1-p)^alpha (2^{n-k}-1)^{1-alpha} ]`
//!
//! with pipeline-specific `c1` and `Q`. The replacement state `sigma`
//! emitted on failure cancels between output and reference, which is
//! asserted against the primal block construction in tests.

use super::DistillationSpec;
use crate::entropics::renyi_entropy_quasi;
use crate::phase_space::{wigner_of_state, DensityMatrix, QuasiDist};
use crate::{Error, Result};

const LN2: f64 = std::f64::consts::LN_2;

fn log_sum_exp(a: f64, b: f64) -> f64 {
    if a == f64::NEG_INFINITY {
        return b;
    }
    if b == f64::NEG_INFINITY {
        return a;
    }
    let m = a.max(b);
    m + ((a - m).exp() + (b - m).exp()).ln()
}

/// `ln[(2^x) - 1]` computed stably for small and large `x > 0`.
fn ln_pow2_minus_one(x: f64) -> f64 {
    let t = x * LN2;
    if t > 30.0 {
        // ln(e^t - 1) = t + ln(1 - e^-t); avoids overflow past t ~ 709
        t + (-(-t).exp()).ln_1p()
    } else {
        t.exp_m1().ln()
    }
}

fn bracket_log2(p: f64, ln_q: f64, alpha: f64, nk: f64) -> f64 {
    // log2 of p^alpha Q + (1-p)^alpha (2^{n-k}-1)^{1-alpha}
    let t1 = alpha * p.ln() + ln_q;
    let t2 = if p >= 1.0 {
        f64::NEG_INFINITY
    } else {
        alpha * (1.0 - p).ln() + (1.0 - alpha) * ln_pow2_minus_one(nk)
    };
    log_sum_exp(t1, t2) / LN2
}

/// The Wigner (classical majorization) pipeline.
#[derive(Clone, Debug)]
pub struct MajorizationPipeline {
    k: f64,
    p: f64,
    /// Moduli of the single-copy input Wigner function (4 entries).
    w_in: Vec<f64>,
    /// Moduli of the output Wigner function (4^k entries).
    w_out: Vec<f64>,
}

impl MajorizationPipeline {
    pub fn new(spec: &DistillationSpec, rho_out: &DensityMatrix) -> Result<Self> {
        spec.validate()?;
        if rho_out.n_qubits() != spec.k as usize {
            return Err(Error::Dimension("output must live on k qubits".into()));
        }
        let w_in = wigner_of_state(&spec.input_state()?)?;
        let w_out = wigner_of_state(rho_out)?;
        Ok(Self {
            k: spec.k as f64,
            p: spec.p,
            w_in: w_in.values().iter().map(|v| v.norm()).collect(),
            w_out: w_out.values().iter().map(|v| v.norm()).collect(),
        })
    }

    pub fn from_wigner(k: u32, p: f64, w_in: &QuasiDist, w_out: &QuasiDist) -> Result<Self> {
        Ok(Self {
            k: k as f64,
            p,
            w_in: w_in.values().iter().map(|v| v.norm()).collect(),
            w_out: w_out.values().iter().map(|v| v.norm()).collect(),
        })
    }

    /// `DeltaD_alpha(n)`; accepts infinite `alpha`.
    pub fn delta_d(&self, alpha: f64, n: f64) -> Result<f64> {
        let k = self.k;
        if n <= k {
            return Ok(f64::NEG_INFINITY);
        }
        if alpha.is_infinite() {
            let max_in = self.w_in.iter().copied().fold(0.0, f64::max);
            let max_out = self.w_out.iter().copied().fold(0.0, f64::max);
            let ratio0 = self.p.ln() + max_out.ln() + (k * 4f64.ln()) + (n - k) * LN2;
            let ratio1 = if self.p >= 1.0 {
                f64::NEG_INFINITY
            } else {
                (1.0 - self.p).ln() - (-(-((n - k) * LN2)).exp_m1()).ln()
            };
            let d_block = ratio0.max(ratio1) / LN2;
            return Ok(n * (2.0 + max_in.log2()) - d_block);
        }
        let h_in = renyi_entropy_quasi(&self.w_in, alpha)?;
        let ln_q = self
            .w_out
            .iter()
            .filter(|w| **w > 0.0)
            .map(|w| (alpha * w.ln()).exp())
            .sum::<f64>()
            .ln()
            + (alpha - 1.0) * k * 4f64.ln();
        Ok(n * (1.0 - h_in) + k - bracket_log2(self.p, ln_q, alpha, n - k) / (alpha - 1.0))
    }
}

/// The sandwiched-divergence (quantum data processing) pipeline.
#[derive(Clone, Debug)]
pub struct DpiPipeline {
    k: f64,
    p: f64,
    eigs_in: Vec<f64>,
    eigs_out: Vec<f64>,
}

impl DpiPipeline {
    pub fn new(spec: &DistillationSpec, rho_out: &DensityMatrix) -> Result<Self> {
        spec.validate()?;
        if rho_out.n_qubits() != spec.k as usize {
            return Err(Error::Dimension("output must live on k qubits".into()));
        }
        Ok(Self {
            k: spec.k as f64,
            p: spec.p,
            eigs_in: spec.input_state()?.eigenvalues(1e-9)?,
            eigs_out: rho_out.eigenvalues(1e-9)?,
        })
    }

    /// Pipeline for an explicit simulated triple `(p, rho_in, rho_out)`.
    pub fn from_states(
        k: u32,
        p: f64,
        rho_in: &DensityMatrix,
        rho_out: &DensityMatrix,
    ) -> Result<Self> {
        if rho_out.n_qubits() != k as usize {
            return Err(Error::Dimension("output must live on k qubits".into()));
        }
        Ok(Self {
            k: k as f64,
            p,
            eigs_in: rho_in.eigenvalues(1e-9)?,
            eigs_out: rho_out.eigenvalues(1e-9)?,
        })
    }

    /// Sandwiched gap `n D~(rho || I/2) - D~(rho_p || tau_{n,k})`.
    pub fn delta_d(&self, alpha: f64, n: f64) -> Result<f64> {
        if !alpha.is_finite() || alpha <= 1.0 {
            return Err(Error::Invalid(format!("bad order {alpha}")));
        }
        let k = self.k;
        if n <= k {
            return Ok(f64::NEG_INFINITY);
        }
        let tr_pow = |eigs: &[f64]| -> f64 {
            eigs.iter()
                .filter(|l| **l > 1e-15)
                .map(|l| l.powf(alpha))
                .sum::<f64>()
        };
        let l_in = tr_pow(&self.eigs_in).log2();
        let ln_q = tr_pow(&self.eigs_out).ln() + (alpha - 1.0) * k * LN2;
        Ok(k + (n * l_in - bracket_log2(self.p, ln_q, alpha, n - k)) / (alpha - 1.0))
    }
}

/// Primal form of the Wigner gap: builds the flagged block
/// quasidistributions on `k+1` qubits explicitly and evaluates
/// `n D_alpha(W_in || uniform) - D_alpha(W_flagged || W_reference)`.
///
/// `sigma` is the CSS replacement state emitted on failure; the value must
/// not depend on it, which is exactly what the closed form assumes.
pub fn delta_d_primal(
    k: u32,
    p: f64,
    n: f64,
    rho_in: &DensityMatrix,
    rho_out: &DensityMatrix,
    sigma: &DensityMatrix,
    alpha: f64,
) -> Result<f64> {
    if !alpha.is_finite() || alpha <= 1.0 {
        return Err(Error::Invalid(format!("bad order {alpha}")));
    }
    let kk = k as usize;
    if rho_out.n_qubits() != kk || sigma.n_qubits() != kk || rho_in.n_qubits() != 1 {
        return Err(Error::Dimension("primal block size mismatch".into()));
    }
    let w_in = wigner_of_state(rho_in)?;
    let w_out = wigner_of_state(rho_out)?;
    let w_sigma = wigner_of_state(sigma)?;
    let w_flag0 = wigner_of_state(&DensityMatrix::basis_state(1, 0)?)?;
    let w_flag1 = wigner_of_state(&DensityMatrix::basis_state(1, 1)?)?;
    let succ = w_out.tensor(&w_flag0)?;
    let fail = w_sigma.tensor(&w_flag1)?;
    let dim = succ.values().len();
    let q_weight = 2f64.powf(k as f64 - n);
    let mut w = vec![0.0f64; dim];
    let mut r = vec![0.0f64; dim];
    for i in 0..dim {
        w[i] = (succ.values()[i] * p + fail.values()[i] * (1.0 - p)).norm();
    }
    // reference: 2^{k-n} (uniform_k (x) flag0) + (1 - 2^{k-n}) (W_sigma (x) flag1)
    let unif = QuasiDist::new(
        kk,
        vec![
            num_complex::Complex64::new(1.0 / 4f64.powi(k as i32), 0.0);
            1 << (2 * kk)
        ],
    )?;
    let ref0 = unif.tensor(&w_flag0)?;
    for i in 0..dim {
        let v0 = ref0.values()[i].re * q_weight;
        let v1 = fail.values()[i].re * (1.0 - q_weight);
        let v = v0 + v1;
        if v < -1e-9 {
            return Err(Error::Invalid(
                "reference negative: sigma must be a CSS state".into(),
            ));
        }
        r[i] = v.max(0.0);
    }
    let w_in_abs: Vec<f64> = w_in.values().iter().map(|v| v.norm()).collect();
    let h_in = renyi_entropy_quasi(&w_in_abs, alpha)?;
    let d_in = 2.0 - h_in;
    let d_block = crate::entropics::renyi_divergence_quasi(&w, &r, alpha)?;
    Ok(n * d_in - d_block)
}
