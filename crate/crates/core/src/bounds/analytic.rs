//! Closed-form bounds and derived scans (fidelity ceiling, error cutoff).

use super::{
    dpi_bounds, majorization_bounds, pencil_output, target_state, DistillationSpec, GridAlpha,
};
use crate::entropics::{mana_quasi, renyi_entropy_quasi};
use crate::phase_space::{wigner_of_state, DensityMatrix};
use crate::{Error, Result};
use serde::Serialize;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum BoundKind {
    Lower,
    Upper,
}

/// One order of the analytic single-expression bound.
#[derive(Clone, Debug, Serialize)]
pub struct AnalyticRow {
    pub label: String,
    pub alpha: f64,
    pub kind: BoundKind,
    pub n_bound: f64,
}

/// Single-expression bound on `n` from the linearised gap: the target term
/// uses the pure output with the trace-norm allowance folded in through the
/// entropy continuity envelope, and the sign of `1 - H_alpha(W_rho)`
/// decides which direction the inequality points.
pub fn analytic_bounds(spec: &DistillationSpec, grid: &[GridAlpha]) -> Result<Vec<AnalyticRow>> {
    spec.validate()?;
    let k = spec.k as f64;
    let w_in: Vec<f64> = wigner_of_state(&spec.input_state()?)?
        .values()
        .iter()
        .map(|v| v.norm())
        .collect();
    let psi = if spec.k == 1 {
        target_state(spec.target)
    } else {
        return Err(Error::Invalid(
            "analytic bound modelled for k = 1 only".into(),
        ));
    };
    let w_psi: Vec<f64> = wigner_of_state(&psi)?
        .values()
        .iter()
        .map(|v| v.norm())
        .collect();
    let mut rows = Vec::new();
    for ga in grid {
        let alpha = ga.value;
        if !alpha.is_finite() {
            continue;
        }
        let h_in = renyi_entropy_quasi(&w_in, alpha)?;
        let denom = 1.0 - h_in;
        if denom.abs() < 1e-12 {
            continue;
        }
        let h_psi = renyi_entropy_quasi(&w_psi, alpha)?;
        // trace-norm allowance enters through the l1-continuity slack,
        // delta * d^{5/2} with the local dimension d = 2
        let slack = spec.delta * 2f64.powf(2.5);
        let numer = k * (1.0 - h_psi)
            - (alpha / (1.0 - alpha)) * (spec.p.log2() - (1.0 + slack).log2());
        let n_bound = numer / denom;
        rows.push(AnalyticRow {
            label: ga.label.clone(),
            alpha,
            kind: if denom > 0.0 {
                BoundKind::Lower
            } else {
                BoundKind::Upper
            },
            n_bound,
        });
    }
    Ok(rows)
}

/// Crossover length estimate for depolarised Hadamard-eigenstate inputs:
/// `n* = 2 ln((1 + 6 delta) / p) / ln(1 / (1 - eps + eps^2/2))`.
pub fn n_star(spec: &DistillationSpec) -> Result<f64> {
    spec.validate()?;
    let base = 1.0 - spec.eps + spec.eps * spec.eps / 2.0;
    if base >= 1.0 {
        // noiseless input: the crossover recedes to infinity
        return Ok(f64::INFINITY);
    }
    Ok(2.0 * ((1.0 + 6.0 * spec.delta) / spec.p).ln() / (1.0 / base).ln())
}

/// Mana-monotonicity lower bound:
/// `n >= log2(p 2^{M(rho_out)} + 1 - p) / M(rho_in)`.
pub fn mana_limit_bound(spec: &DistillationSpec, rho_out: &DensityMatrix) -> Result<f64> {
    spec.validate()?;
    let m_in = mana_quasi(&wigner_of_state(&spec.input_state()?)?);
    let m_out = mana_quasi(&wigner_of_state(rho_out)?);
    if m_in <= 1e-12 {
        return Ok(f64::INFINITY);
    }
    Ok((spec.p * 2f64.powf(m_out) + 1.0 - spec.p).log2() / m_in)
}

/// Acceptance probability ceiling `2^k lambda_max(rho_in)^n` for projecting
/// `n` copies onto a `2^k`-dimensional code space.
pub fn acceptance_ceiling(rho_in: &DensityMatrix, k: u32, n: f64) -> Result<f64> {
    let lmax = rho_in.max_eigenvalue(1e-9)?;
    Ok(2f64.powi(k as i32) * lmax.powf(n))
}

/// Which gap pipeline feasibility scans consult.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum FmaxMethod {
    /// Wigner moduli against the uniform reference.
    Majorization,
    /// Sandwiched divergence against the maximally mixed reference.
    Dpi,
}

fn feasible_for_output(
    spec: &DistillationSpec,
    rho_out: &DensityMatrix,
    grid: &[GridAlpha],
    method: FmaxMethod,
) -> Result<bool> {
    let result = match method {
        FmaxMethod::Majorization => majorization_bounds(spec, rho_out, grid)?,
        FmaxMethod::Dpi => dpi_bounds(spec, rho_out, grid)?,
    };
    Ok(result.feasible)
}

/// Largest output fidelity any code of length up to `n_cap` can certify:
/// bisects the pencil-output fidelity over `[1/2, 1]` against window
/// feasibility at every grid order.
pub fn fmax_upper(
    spec: &DistillationSpec,
    grid: &[GridAlpha],
    method: FmaxMethod,
) -> Result<f64> {
    spec.validate()?;
    if spec.k != 1 {
        return Err(Error::Invalid("fidelity scan modelled for k = 1 only".into()));
    }
    let check = |f: f64| -> Result<bool> {
        let out = pencil_output(spec.target, f)?;
        feasible_for_output(spec, &out, grid, method)
    };
    if check(1.0)? {
        return Ok(1.0);
    }
    let mut lo = 0.5;
    let mut hi = 1.0;
    if !check(lo)? {
        return Ok(lo);
    }
    for _ in 0..40 {
        let mid = 0.5 * (lo + hi);
        if check(mid)? {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    Ok(0.5 * (lo + hi))
}

/// Largest input depolarising error for which the default query stays
/// feasible; bisected over `[0, 1]`.
pub fn cutoff_input_error(
    spec: &DistillationSpec,
    grid: &[GridAlpha],
    method: FmaxMethod,
) -> Result<f64> {
    spec.validate()?;
    let check = |eps: f64| -> Result<bool> {
        let mut s = spec.clone();
        s.eps = eps;
        let out = s.default_output()?;
        feasible_for_output(&s, &out, grid, method)
    };
    let mut lo = 0.0;
    let mut hi = 1.0;
    if !check(lo)? {
        return Ok(0.0);
    }
    if check(hi)? {
        return Ok(1.0);
    }
    for _ in 0..40 {
        let mid = 0.5 * (lo + hi);
        if check(mid)? {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    Ok(0.5 * (lo + hi))
}
