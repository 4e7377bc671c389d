//! Window computation: closed forms, root finding, and relaxations.

use approx::assert_abs_diff_eq;
use magicdist::bounds::{
    acceptance_ceiling, analytic_bounds, cutoff_input_error, default_alpha_grid,
    delta_d_primal, dpi_bounds, majorization_bounds, mana_limit_bound, n_star, noisy_input,
    pencil_output, root_bounds, BoundKind, DistillationSpec, DpiPipeline,
    FmaxMethod, MajorizationPipeline, Target,
};
use magicdist::phase_space::DensityMatrix;

fn default_spec() -> DistillationSpec {
    DistillationSpec::default()
}

#[test]
fn closed_form_matches_primal_block_construction() {
    let spec = default_spec();
    let rho_out = spec.default_output().unwrap();
    let rho_in = spec.input_state().unwrap();
    let maj = MajorizationPipeline::new(&spec, &rho_out).unwrap();
    let dpi = DpiPipeline::new(&spec, &rho_out).unwrap();
    let sigma = DensityMatrix::maximally_mixed(1).unwrap();
    for &(alpha, n) in &[(2.0, 5.0), (1.5, 12.0), (3.0, 20.0), (8.0, 33.0)] {
        let primal = delta_d_primal(spec.k, spec.p, n, &rho_in, &rho_out, &sigma, alpha).unwrap();
        let closed = maj.delta_d(alpha, n).unwrap();
        assert_abs_diff_eq!(closed, primal, epsilon = 1e-8);
        // the operator-divergence closed form stays finite on the same range
        assert!(dpi.delta_d(alpha, n).unwrap().is_finite());
    }
}

#[test]
fn sigma_independence_of_primal_gap() {
    let spec = default_spec();
    let rho_out = spec.default_output().unwrap();
    let rho_in = spec.input_state().unwrap();
    // the replacement state must be a CSS state for the reference to stay
    // a genuine distribution
    let h = 0.5f64.sqrt();
    let sigmas = [
        DensityMatrix::basis_state(1, 0).unwrap(),
        DensityMatrix::maximally_mixed(1).unwrap(),
        DensityMatrix::pure(1, &[magicdist::phase_space::c(h, 0.0), magicdist::phase_space::c(h, 0.0)]).unwrap(),
    ];
    let base = delta_d_primal(1, spec.p, 7.0, &rho_in, &rho_out, &sigmas[0], 2.0).unwrap();
    for sigma in &sigmas[1..] {
        let v = delta_d_primal(1, spec.p, 7.0, &rho_in, &rho_out, sigma, 2.0).unwrap();
        assert_abs_diff_eq!(v, base, epsilon = 1e-12);
    }
}

#[test]
fn gap_is_concave_in_n() {
    let spec = default_spec();
    let rho_out = spec.default_output().unwrap();
    let maj = MajorizationPipeline::new(&spec, &rho_out).unwrap();
    let dpi = DpiPipeline::new(&spec, &rho_out).unwrap();
    for alpha in [1.5, 2.0, 4.0] {
        for pipe in [
            &(|n: f64| maj.delta_d(alpha, n).unwrap()) as &dyn Fn(f64) -> f64,
            &(|n: f64| dpi.delta_d(alpha, n).unwrap()),
        ] {
            let h = 0.05;
            for i in 0..200 {
                let n = 1.2 + 0.2 * i as f64;
                let second = pipe(n - h) - 2.0 * pipe(n) + pipe(n + h);
                assert!(second <= 1e-8, "convex kink at alpha {alpha}, n {n}");
            }
        }
    }
}

#[test]
fn root_finder_matches_grid_scan() {
    let spec = default_spec();
    let rho_out = spec.default_output().unwrap();
    let maj = MajorizationPipeline::new(&spec, &rho_out).unwrap();
    let f = |n: f64| maj.delta_d(2.0, n).unwrap();
    let ga = magicdist::bounds::GridAlpha { label: "2".into(), value: 2.0 };
    let row = root_bounds(&f, &ga, spec.k as f64, spec.n_cap).unwrap();
    assert!(row.feasible);
    // brute-force scan of the sign pattern on a fine grid
    let mut lo_scan = f64::NAN;
    let mut hi_scan = f64::NAN;
    let mut prev = f(1.0 + 1e-7);
    let mut prev_n = 1.0 + 1e-7;
    let mut n = 1.01;
    while n <= 500.0 {
        let v = f(n);
        if prev < 0.0 && v >= 0.0 {
            lo_scan = prev_n;
        }
        if prev >= 0.0 && v < 0.0 {
            hi_scan = n;
        }
        prev = v;
        prev_n = n;
        n += 0.01;
    }
    assert!((row.n_lower - lo_scan).abs() <= 0.02, "{} vs {lo_scan}", row.n_lower);
    let upper = row.n_upper.unwrap();
    assert!((upper - hi_scan).abs() <= 0.02, "{upper} vs {hi_scan}");
    assert!(row.n_lower <= row.n_peak && row.n_peak <= upper);
}

#[test]
fn default_window_regression() {
    let spec = default_spec();
    let rho_out = spec.default_output().unwrap();
    let grid = default_alpha_grid(12, 6, 40.0);
    let maj = majorization_bounds(&spec, &rho_out, &grid).unwrap();
    assert!(maj.feasible);
    assert_abs_diff_eq!(maj.n_lower, 1.0783427, epsilon = 1e-4);
    assert_abs_diff_eq!(maj.n_upper.unwrap(), 3.5740027, epsilon = 1e-4);
    assert_eq!(maj.n_lower_int, Some(2));
    assert_eq!(maj.n_upper_int, Some(3));
    let dpi = dpi_bounds(&spec, &rho_out, &grid).unwrap();
    assert!(dpi.feasible);
    // relaxed pipeline can never give a tighter upper bound
    assert!(dpi.n_upper.unwrap() >= maj.n_upper.unwrap() - 1e-9);
}

#[test]
fn analytic_upper_dominates_numeric_upper() {
    // the analytic rows drop a negative failure-branch term, so every
    // analytic upper bound must sit at or above the numeric root
    let grid = default_alpha_grid(12, 6, 40.0);
    for (p, eps) in [(0.9, 0.05), (0.5, 0.02), (0.7, 0.1)] {
        let spec = DistillationSpec { p, eps, ..default_spec() };
        let rho_out = spec.default_output().unwrap();
        let numeric = majorization_bounds(&spec, &rho_out, &grid).unwrap();
        if !numeric.feasible {
            continue;
        }
        let analytic = analytic_bounds(&spec, &grid).unwrap();
        for row in analytic.iter().filter(|r| r.kind == BoundKind::Upper) {
            assert!(
                row.n_bound >= numeric.n_upper.unwrap() - 1e-6,
                "analytic upper {} below numeric {} at alpha {}",
                row.n_bound,
                numeric.n_upper.unwrap(),
                row.alpha
            );
        }
    }
}

#[test]
fn n_star_oracle_values() {
    let spec = DistillationSpec { p: 0.5, eps: 0.1, ..default_spec() };
    let want = 2.0 * (1.000000006f64 / 0.5).ln() / (1.0f64 / (1.0 - 0.1 + 0.01 / 2.0)).ln();
    assert_abs_diff_eq!(n_star(&spec).unwrap(), want, epsilon = 1e-12);
    assert!(n_star(&DistillationSpec { eps: 0.0, ..default_spec() })
        .unwrap()
        .is_infinite());
}

#[test]
fn mana_limit_vs_majorization_lower() {
    let spec = default_spec();
    let rho_out = spec.default_output().unwrap();
    let grid = default_alpha_grid(12, 6, 40.0);
    let maj = majorization_bounds(&spec, &rho_out, &grid).unwrap();
    let mana = mana_limit_bound(&spec, &rho_out).unwrap();
    // the near-one grid point resolves the mana limit to about 1e-4
    assert!(mana <= maj.n_lower + 1e-3, "mana {mana} vs lower {}", maj.n_lower);
    assert!(mana >= maj.n_lower - 1e-3);
}

#[test]
fn acceptance_ceiling_oracles() {
    let mixed = DensityMatrix::maximally_mixed(1).unwrap();
    // maximal eigenvalue 1/2 gives 2^k 2^-n
    assert_abs_diff_eq!(acceptance_ceiling(&mixed, 1, 5.0).unwrap(), 2f64.powi(-4), epsilon = 1e-12);
    let pure = DensityMatrix::basis_state(1, 0).unwrap();
    assert_abs_diff_eq!(acceptance_ceiling(&pure, 2, 9.0).unwrap(), 4.0, epsilon = 1e-12);
    let eps = 0.2;
    let rho = noisy_input(Target::H, eps).unwrap();
    let lam = (1.0 - eps) + eps / 2.0;
    assert_abs_diff_eq!(acceptance_ceiling(&rho, 1, 3.0).unwrap(), 2.0 * lam.powi(3), epsilon = 1e-12);
}

#[test]
fn infeasibility_beyond_boundary() {
    // no magic in the input: every order reports an empty window
    let spec = DistillationSpec { eps: 0.5, ..default_spec() };
    let rho_out = spec.default_output().unwrap();
    let grid = default_alpha_grid(6, 3, 12.0);
    let agg = majorization_bounds(&spec, &rho_out, &grid).unwrap();
    assert!(!agg.feasible);
    assert!(agg.n_lower_int.is_none());
}

#[test]
fn cutoff_and_fmax_bisections() {
    let spec = default_spec();
    let grid = default_alpha_grid(12, 6, 40.0);
    let cutoff = cutoff_input_error(&spec, &grid, FmaxMethod::Majorization).unwrap();
    assert!((cutoff - 0.12).abs() <= 0.02, "cutoff {cutoff}");
    // at eps = 0.25 perfect distillation needs acceptance above ~0.6
    let spec = DistillationSpec { eps: 0.25, p: 0.5, ..default_spec() };
    let fmax_low = magicdist::bounds::fmax_upper(&spec, &grid, FmaxMethod::Majorization).unwrap();
    let spec_hi = DistillationSpec { p: 0.7, ..spec };
    let fmax_high = magicdist::bounds::fmax_upper(&spec_hi, &grid, FmaxMethod::Majorization).unwrap();
    // a larger acceptance probability weakens the ceiling
    assert!(fmax_high <= fmax_low + 1e-9, "{fmax_high} vs {fmax_low}");
    let _ = pencil_output(Target::H, fmax_low).unwrap();
}
