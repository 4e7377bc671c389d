//! Root extraction from the concave gap `n -> DeltaD_alpha(n)`.

use super::{DistillationSpec, DpiPipeline, GridAlpha, MajorizationPipeline};
use crate::phase_space::DensityMatrix;
use crate::{Error, Result};
use serde::Serialize;

/// Bounds contributed by a single order.
#[derive(Clone, Debug, Serialize)]
pub struct AlphaBound {
    pub label: String,
    pub alpha: f64,
    /// Whether any `n` satisfies the gap condition at this order.
    pub feasible: bool,
    /// Smallest admissible `n` (root below the peak).
    pub n_lower: f64,
    /// Largest admissible `n`; `None` when unbounded within the cap.
    pub n_upper: Option<f64>,
    /// Location of the gap maximum.
    pub n_peak: f64,
}

/// Aggregated window over an order grid.
#[derive(Clone, Debug, Serialize)]
pub struct BoundResult {
    pub rows: Vec<AlphaBound>,
    pub feasible: bool,
    /// `max` of the per-order lower roots.
    pub n_lower: f64,
    /// `min` of the per-order upper roots (`None` if all unbounded).
    pub n_upper: Option<f64>,
    /// `ceil` of the aggregate lower root.
    pub n_lower_int: Option<u64>,
    /// `floor` of the aggregate upper root.
    pub n_upper_int: Option<u64>,
}

const N_TOL: f64 = 1e-9;

fn golden_max(f: &dyn Fn(f64) -> f64, mut lo: f64, mut hi: f64) -> f64 {
    let inv_phi = 0.618_033_988_749_894_9;
    let mut c = hi - inv_phi * (hi - lo);
    let mut d = lo + inv_phi * (hi - lo);
    let mut fc = f(c);
    let mut fd = f(d);
    for _ in 0..200 {
        if hi - lo < N_TOL {
            break;
        }
        if fc >= fd {
            hi = d;
            d = c;
            fd = fc;
            c = hi - inv_phi * (hi - lo);
            fc = f(c);
        } else {
            lo = c;
            c = d;
            fc = fd;
            d = lo + inv_phi * (hi - lo);
            fd = f(d);
        }
    }
    0.5 * (lo + hi)
}

fn bisect_root(f: &dyn Fn(f64) -> f64, mut neg: f64, mut pos: f64) -> f64 {
    // f(neg) < 0 <= f(pos); neg may lie on either side of pos
    for _ in 0..200 {
        if (neg - pos).abs() < N_TOL {
            break;
        }
        let mid = 0.5 * (neg + pos);
        if f(mid) >= 0.0 {
            pos = mid;
        } else {
            neg = mid;
        }
    }
    0.5 * (neg + pos)
}

/// Finds the feasible window of a concave gap on `(k, n_cap]`.
pub fn root_bounds(
    f: &dyn Fn(f64) -> f64,
    grid_alpha: &GridAlpha,
    k: f64,
    n_cap: f64,
) -> Result<AlphaBound> {
    let lo = k + 1e-7;
    let n_peak = golden_max(f, lo, n_cap);
    let peak_val = f(n_peak);
    if !(peak_val >= 0.0) {
        return Ok(AlphaBound {
            label: grid_alpha.label.clone(),
            alpha: grid_alpha.value,
            feasible: false,
            n_lower: f64::NAN,
            n_upper: None,
            n_peak,
        });
    }
    let n_lower = if f(lo) >= 0.0 {
        lo
    } else {
        bisect_root(f, lo, n_peak)
    };
    let n_upper = if f(n_cap) >= 0.0 {
        None
    } else {
        // descending branch: reuse the bisector with roles swapped
        Some(bisect_root(f, n_cap, n_peak))
    };
    Ok(AlphaBound {
        label: grid_alpha.label.clone(),
        alpha: grid_alpha.value,
        feasible: true,
        n_lower,
        n_upper,
        n_peak,
    })
}

/// Full window query through the Wigner pipeline.
pub fn majorization_bounds(
    spec: &DistillationSpec,
    rho_out: &DensityMatrix,
    grid: &[GridAlpha],
) -> Result<BoundResult> {
    if grid.is_empty() {
        return Err(Error::Invalid("empty order grid".into()));
    }
    let pl = MajorizationPipeline::new(spec, rho_out)?;
    let mut rows = Vec::new();
    for ga in grid {
        let a = ga.value;
        let f = |n: f64| pl.delta_d(a, n).unwrap_or(f64::NEG_INFINITY);
        rows.push(root_bounds(&f, ga, spec.k as f64, spec.n_cap)?);
    }
    Ok(aggregate_bounds(rows))
}

/// Full window query through the sandwiched-divergence pipeline; infinite
/// orders are skipped.
pub fn dpi_bounds(
    spec: &DistillationSpec,
    rho_out: &DensityMatrix,
    grid: &[GridAlpha],
) -> Result<BoundResult> {
    if grid.is_empty() {
        return Err(Error::Invalid("empty order grid".into()));
    }
    let pl = DpiPipeline::new(spec, rho_out)?;
    let mut rows = Vec::new();
    for ga in grid {
        let a = ga.value;
        if !a.is_finite() {
            continue;
        }
        let f = |n: f64| pl.delta_d(a, n).unwrap_or(f64::NEG_INFINITY);
        rows.push(root_bounds(&f, ga, spec.k as f64, spec.n_cap)?);
    }
    Ok(aggregate_bounds(rows))
}

/// Intersects per-order windows into the final `[n_L, n_U]`.
pub fn aggregate_bounds(rows: Vec<AlphaBound>) -> BoundResult {
    let mut n_lower = f64::NEG_INFINITY;
    let mut n_upper: Option<f64> = None;
    let mut feasible = !rows.is_empty();
    for row in &rows {
        if !row.feasible {
            feasible = false;
            continue;
        }
        n_lower = n_lower.max(row.n_lower);
        if let Some(u) = row.n_upper {
            n_upper = Some(match n_upper {
                Some(cur) => cur.min(u),
                None => u,
            });
        }
    }
    if let Some(u) = n_upper {
        if n_lower > u {
            feasible = false;
        }
    }
    let n_lower_int = if feasible && n_lower.is_finite() {
        Some(n_lower.ceil() as u64)
    } else {
        None
    };
    let n_upper_int = match (feasible, n_upper) {
        (true, Some(u)) => Some(u.floor() as u64),
        _ => None,
    };
    BoundResult {
        rows,
        feasible,
        n_lower,
        n_upper,
        n_lower_int,
        n_upper_int,
    }
}
