//! Named self-check suites, shared between the `verify` CLI subcommand and
//! the test harness.

use crate::bounds::{
    delta_d_primal, target_state, DistillationSpec, MajorizationPipeline, Target,
};
use crate::css::{is_css_state, synth_encoder, tp_code_projection, CssCode};
use crate::entropics::{mana_quasi, renyi_divergence_quasi, sandwiched_divergence};
use crate::phase_space::{
    c, is_stochastic, phase_point_operator, state_of_wigner, wigner_of_state, CMat, DensityMatrix,
    PhasePoint,
};
use crate::Result;

/// Outcome of one named check.
#[derive(Clone, Debug)]
pub struct Check {
    pub name: String,
    pub pass: bool,
    /// Measured figure behind the verdict (a defect, count or value).
    pub detail: String,
}

impl Check {
    fn measure(name: &str, defect: f64, tol: f64) -> Self {
        Check {
            name: name.to_string(),
            pass: defect.abs() <= tol,
            detail: format!("defect {defect:.3e} (tol {tol:.1e})"),
        }
    }

    fn flag(name: &str, pass: bool, detail: String) -> Self {
        Check {
            name: name.to_string(),
            pass,
            detail,
        }
    }
}

pub const SUITES: [&str; 5] = ["phase-space", "css", "entropics", "bounds", "all"];

pub fn run_suite(name: &str) -> Result<Vec<Check>> {
    match name {
        "phase-space" => phase_space_suite(),
        "css" => css_suite(),
        "entropics" => entropics_suite(),
        "bounds" => bounds_suite(),
        "all" => {
            let mut out = phase_space_suite()?;
            out.extend(css_suite()?);
            out.extend(entropics_suite()?);
            out.extend(bounds_suite()?);
            Ok(out)
        }
        other => Err(crate::Error::Invalid(format!(
            "unknown suite '{other}'; choose one of {SUITES:?}"
        ))),
    }
}

fn max_abs(m: &CMat) -> f64 {
    m.iter().map(|v| v.norm()).fold(0.0, f64::max)
}

fn phase_space_suite() -> Result<Vec<Check>> {
    let mut out = Vec::new();
    for n in 1..=2usize {
        let dim = 1usize << n;
        let points = 1usize << (2 * n);
        // unit trace and mutual orthogonality of phase point operators
        let ops: Vec<CMat> = (0..points)
            .map(|i| phase_point_operator(&PhasePoint::from_index(n, i)?))
            .collect::<Result<_>>()?;
        let mut trace_defect = 0.0f64;
        let mut ortho_defect = 0.0f64;
        let mut sum = CMat::zeros(dim, dim);
        for (i, a) in ops.iter().enumerate() {
            trace_defect = trace_defect.max((a.trace() - c(1.0, 0.0)).norm());
            sum += a;
            for (j, b) in ops.iter().enumerate() {
                let overlap = (a.adjoint() * b).trace();
                let expect = if i == j { dim as f64 } else { 0.0 };
                ortho_defect = ortho_defect.max((overlap - c(expect, 0.0)).norm());
            }
        }
        let id_defect = max_abs(&(sum - CMat::identity(dim, dim) * c(dim as f64, 0.0)));
        out.push(Check::measure(
            &format!("phase-point trace, n={n}"),
            trace_defect,
            1e-12,
        ));
        out.push(Check::measure(
            &format!("phase-point orthogonality, n={n}"),
            ortho_defect,
            1e-12,
        ));
        out.push(Check::measure(
            &format!("phase-point completeness, n={n}"),
            id_defect,
            1e-12,
        ));
    }
    // transform round trip on a mixed two-qubit state
    let rho = DensityMatrix::basis_state(1, 0)?
        .mix(&target_state(Target::H), 0.3)?
        .tensor(&DensityMatrix::maximally_mixed(1)?)?;
    let back = state_of_wigner(&wigner_of_state(&rho)?)?;
    out.push(Check::measure(
        "state transform round trip",
        rho.trace_distance(&back)?,
        1e-10,
    ));
    Ok(out)
}

fn css_suite() -> Result<Vec<Check>> {
    let mut out = Vec::new();
    for name in ["rep2", "steane", "rm15", "golay"] {
        let code = CssCode::by_name(name)?;
        out.push(Check::flag(
            &format!("bundled code '{name}' valid"),
            code.validate().is_ok(),
            format!("[[{}, {}]]", code.n(), code.k()),
        ));
    }
    for name in ["rep2", "steane"] {
        let code = CssCode::by_name(name)?;
        let enc = synth_encoder(&code)?;
        out.push(Check::flag(
            &format!("encoder synthesised for '{name}'"),
            true,
            format!("{} gates", enc.to_circuit().steps.len()),
        ));
        let ch = tp_code_projection(&code, None)?;
        let report = is_stochastic(&ch)?;
        out.push(Check::flag(
            &format!("projection channel for '{name}' is positively represented"),
            report.ok,
            format!(
                "min entry {:.3e}, column defect {:.3e}",
                report.min_entry, report.max_col_defect
            ),
        ));
    }
    let inside = is_css_state(&DensityMatrix::basis_state(1, 0)?, 1e-7)?;
    let outside = is_css_state(&target_state(Target::H), 1e-7)?;
    out.push(Check::flag(
        "computational basis state inside CSS hull",
        inside.inside,
        format!("distance {:.3e}", inside.distance),
    ));
    out.push(Check::flag(
        "magic state outside CSS hull",
        !outside.inside,
        format!("distance {:.3e}", outside.distance),
    ));
    Ok(out)
}

fn entropics_suite() -> Result<Vec<Check>> {
    let mut out = Vec::new();
    let w = wigner_of_state(&target_state(Target::H))?;
    let wabs: Vec<f64> = w.values().iter().map(|v| v.norm()).collect();
    let expected = ((1.0 + 2f64.sqrt()) / 2.0).log2();
    out.push(Check::measure(
        "single-qubit magic mana",
        mana_quasi(&w) - expected,
        1e-12,
    ));
    let unif = vec![0.25; 4];
    out.push(Check::measure(
        "divergence of a probability distribution from itself",
        renyi_divergence_quasi(&unif, &unif, 2.0)?,
        1e-12,
    ));
    // for quasidistributions the self-divergence is the log l1 weight
    out.push(Check::measure(
        "quasidistribution self-divergence equals mana",
        renyi_divergence_quasi(&wabs, &wabs, 2.0)? - mana_quasi(&w),
        1e-12,
    ));
    out.push(Check::measure(
        "divergence from uniform matches 2 - entropy",
        renyi_divergence_quasi(&wabs, &unif, 1.5)?
            - (2.0 - crate::entropics::renyi_entropy_quasi(&wabs, 1.5)?),
        1e-12,
    ));
    let rho = DensityMatrix::maximally_mixed(1)?.mix(&target_state(Target::H), 0.4)?;
    out.push(Check::measure(
        "sandwiched divergence of a state from itself",
        sandwiched_divergence(&rho, &rho, 2.0)?,
        1e-10,
    ));
    Ok(out)
}

fn bounds_suite() -> Result<Vec<Check>> {
    let mut out = Vec::new();
    let spec = DistillationSpec::default();
    let rho_out = spec.default_output()?;
    let pipeline = MajorizationPipeline::new(&spec, &rho_out)?;
    let sigma = DensityMatrix::basis_state(1, 0)?;
    let mut worst = 0.0f64;
    for &(alpha, n) in &[(2.0, 7.0), (1.5, 20.0), (4.0, 35.0)] {
        let closed = pipeline.delta_d(alpha, n)?;
        let primal = delta_d_primal(
            spec.k,
            spec.p,
            n,
            &spec.input_state()?,
            &rho_out,
            &sigma,
            alpha,
        )?;
        worst = worst.max((closed - primal).abs());
    }
    out.push(Check::measure(
        "closed-form gap matches primal block construction",
        worst,
        1e-8,
    ));
    let grid = crate::bounds::default_alpha_grid(6, 3, 12.0);
    let agg = crate::bounds::majorization_bounds(&spec, &rho_out, &grid)?;
    out.push(Check::flag(
        "default query window feasible",
        agg.feasible && agg.n_lower.is_finite(),
        format!(
            "n in [{:.2}, {}]",
            agg.n_lower,
            agg.n_upper.map_or("unbounded".into(), |u| format!("{u:.2}")),
        ),
    ));
    let nstar = crate::bounds::n_star(&spec)?;
    out.push(Check::flag(
        "crossover estimate finite and above k",
        nstar.is_finite() && nstar > spec.k as f64,
        format!("n* = {nstar:.2}"),
    ));
    Ok(out)
}
