//! The CSS distance monotone `Lambda_alpha`.
//!
//! `Lambda_alpha(rho) = inf_{tau CSS} D_alpha(W_rho || W_tau)` over the
//! CSS polytope. The reference Wigner function is linear in the mixing
//! weights over pure CSS vertices, so the infimum is a smooth convex-like
//! problem over the simplex, attacked by projected gradient descent with
//! multistart and cross-checked against a brute simplex grid.

use super::INTERIOR_FLOOR;
use crate::css::{enumerate_pure_css, project_simplex};
use crate::phase_space::{wigner_of_state, DensityMatrix, QuasiDist};
use crate::{Error, Result};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

#[derive(Clone, Debug)]
pub struct LambdaOptions {
    pub starts: usize,
    pub iterations: usize,
    pub seed: u64,
}

impl Default for LambdaOptions {
    fn default() -> Self {
        Self {
            starts: 12,
            iterations: 3000,
            seed: 7,
        }
    }
}

#[derive(Clone, Debug)]
pub struct LambdaResult {
    pub value: f64,
    /// Mixing weights over the pure CSS vertex states.
    pub weights: Vec<f64>,
}

struct Objective {
    /// `|w_u|` of the argument state.
    wabs: Vec<f64>,
    /// Vertex Wigner distributions, column per vertex.
    verts: Vec<Vec<f64>>,
    alpha: f64,
}

impl Objective {
    fn reference(&self, lam: &[f64]) -> Vec<f64> {
        let mut r = vec![0.0; self.wabs.len()];
        for (l, v) in lam.iter().zip(&self.verts) {
            for (ri, vi) in r.iter_mut().zip(v) {
                *ri += l * vi;
            }
        }
        r
    }

    fn value(&self, lam: &[f64]) -> f64 {
        let r = self.reference(lam);
        let mut q = 0.0;
        for (&w, &ri) in self.wabs.iter().zip(&r) {
            if w < INTERIOR_FLOOR {
                continue;
            }
            if ri < INTERIOR_FLOOR * INTERIOR_FLOOR {
                return f64::INFINITY;
            }
            q += (self.alpha * w.ln() + (1.0 - self.alpha) * ri.ln()).exp();
        }
        q.log2() / (self.alpha - 1.0)
    }

    /// Gradient of the value with respect to the weights.
    fn gradient(&self, lam: &[f64]) -> Vec<f64> {
        let r = self.reference(lam);
        let mut q = 0.0;
        let mut dq_dr = vec![0.0; r.len()];
        for (u, (&w, &ri)) in self.wabs.iter().zip(&r).enumerate() {
            if w < INTERIOR_FLOOR || ri < INTERIOR_FLOOR * INTERIOR_FLOOR {
                continue;
            }
            let term = (self.alpha * w.ln() + (1.0 - self.alpha) * ri.ln()).exp();
            q += term;
            dq_dr[u] = (1.0 - self.alpha) * term / ri;
        }
        let scale = 1.0 / ((self.alpha - 1.0) * q * std::f64::consts::LN_2);
        self.verts
            .iter()
            .map(|v| scale * v.iter().zip(&dq_dr).map(|(a, b)| a * b).sum::<f64>())
            .collect()
    }
}

fn build_objective(w: &QuasiDist, alpha: f64) -> Result<Objective> {
    if !(alpha > 1.0) || !alpha.is_finite() {
        return Err(Error::Invalid(format!(
            "order must be finite and exceed 1 (got {alpha})"
        )));
    }
    let n = w.n_qubits();
    let verts: Vec<Vec<f64>> = enumerate_pure_css(n)?
        .iter()
        .map(|s| {
            wigner_of_state(s).and_then(|wd| wd.to_real(1e-9))
        })
        .collect::<Result<_>>()?;
    Ok(Objective {
        wabs: w.values().iter().map(|v| v.norm()).collect(),
        verts,
        alpha,
    })
}

/// Minimises `D_alpha(W_rho || W_tau)` over CSS `tau` (1 or 2 qubits).
pub fn lambda_monotone(
    rho: &DensityMatrix,
    alpha: f64,
    opts: &LambdaOptions,
) -> Result<LambdaResult> {
    let w = wigner_of_state(rho)?;
    let obj = build_objective(&w, alpha)?;
    let m = obj.verts.len();
    let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
    let mut starts: Vec<Vec<f64>> = vec![vec![1.0 / m as f64; m]];
    for _ in 1..opts.starts {
        let raw: Vec<f64> = (0..m).map(|_| -(rng.gen::<f64>().ln())).collect();
        let s: f64 = raw.iter().sum();
        starts.push(raw.into_iter().map(|x| x / s).collect());
    }
    let mut best = LambdaResult {
        value: f64::INFINITY,
        weights: vec![1.0 / m as f64; m],
    };
    for mut lam in starts {
        project_simplex(&mut lam, INTERIOR_FLOOR);
        let mut step = 0.5;
        let mut cur = obj.value(&lam);
        for _ in 0..opts.iterations {
            let grad = obj.gradient(&lam);
            let mut trial: Vec<f64> = lam.iter().zip(&grad).map(|(l, g)| l - step * g).collect();
            project_simplex(&mut trial, INTERIOR_FLOOR);
            let val = obj.value(&trial);
            if val <= cur {
                lam = trial;
                cur = val;
                step *= 1.1;
            } else {
                step *= 0.5;
                if step < 1e-14 {
                    break;
                }
            }
        }
        if cur < best.value {
            best = LambdaResult {
                value: cur,
                weights: lam,
            };
        }
    }
    Ok(best)
}

/// Brute-force oracle: minimum of the divergence over a simplex grid with
/// roughly `points` nodes.
pub fn lambda_grid_oracle(rho: &DensityMatrix, alpha: f64, points: usize) -> Result<f64> {
    let w = wigner_of_state(rho)?;
    let obj = build_objective(&w, alpha)?;
    let m = obj.verts.len();
    if m != 4 {
        return Err(Error::Invalid(
            "grid oracle implemented for the single-qubit polytope".into(),
        ));
    }
    // choose resolution g with C(g+3, 3) >= points
    let mut g = 1usize;
    while (g + 1) * (g + 2) * (g + 3) / 6 < points {
        g += 1;
    }
    let mut best = f64::INFINITY;
    let mut lam = [0.0f64; 4];
    for i in 0..=g {
        for j in 0..=(g - i) {
            for k in 0..=(g - i - j) {
                let l = g - i - j - k;
                lam[0] = i as f64 / g as f64;
                lam[1] = j as f64 / g as f64;
                lam[2] = k as f64 / g as f64;
                lam[3] = l as f64 / g as f64;
                let mut v = lam.to_vec();
                project_simplex(&mut v, INTERIOR_FLOOR);
                let val = obj.value(&v);
                if val < best {
                    best = val;
                }
            }
        }
    }
    Ok(best)
}
