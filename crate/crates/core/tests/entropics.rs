//! Oracles and properties for the entropic layer.

use approx::assert_abs_diff_eq;
use magicdist::bounds::{noisy_input, target_state, Target};
use magicdist::entropics::{
    alpha_grid, lambda_grid_oracle, lambda_monotone, lift_complex, lift_ref, mana, mana_quasi,
    renyi_divergence_quasi, renyi_entropy_quasi, sandwiched_divergence, wigner_l1_continuity,
    AlphaIndex, LambdaOptions, ALPHA_NEAR_ONE,
};
use magicdist::phase_space::{c, wigner_of_state, CMat, DensityMatrix};

fn wigner_moduli(rho: &DensityMatrix) -> Vec<f64> {
    wigner_of_state(rho)
        .unwrap()
        .values()
        .iter()
        .map(|v| v.norm())
        .collect()
}

#[test]
fn alpha_index_parse_label_round_trip() {
    for (text, value) in [("2", 2.0), ("4/3", 4.0 / 3.0), ("12/11", 12.0 / 11.0)] {
        let idx = AlphaIndex::parse(text).unwrap();
        assert_abs_diff_eq!(idx.value(), value, epsilon = 1e-15);
        assert_eq!(idx.label(), text);
    }
    assert_eq!(AlphaIndex::parse("inf").unwrap().label(), "inf");
    // odd numerators and even denominators are not of the 2a/(2b-1) form
    assert!(AlphaIndex::parse("3").is_err());
    assert!(AlphaIndex::parse("4/2").is_err());
    assert!(AlphaIndex::parse("1").is_err());
}

#[test]
fn alpha_grid_is_sorted_and_deduplicated() {
    let grid = alpha_grid(12, 6, 40.0, true);
    for pair in grid.windows(2) {
        assert!(pair[0].value() < pair[1].value() || pair[1].value().is_infinite());
    }
    // 2 = 2/1 = 4/3-free duplicate check: 6/3 reduces to 2, must appear once
    let twos = grid.iter().filter(|i| (i.value() - 2.0).abs() < 1e-12).count();
    assert_eq!(twos, 1);
}

#[test]
fn entropy_closed_form_for_depolarised_magic() {
    // H_2 of the Wigner moduli of (1-eps)|H><H| + eps I/2 equals
    // 1 - log2(1 - eps + eps^2/2)
    for i in 0..=100 {
        let eps = i as f64 / 100.0;
        let w = wigner_moduli(&noisy_input(Target::H, eps).unwrap());
        let got = renyi_entropy_quasi(&w, 2.0).unwrap();
        let want = 1.0 - (1.0 - eps + eps * eps / 2.0).log2();
        assert_abs_diff_eq!(got, want, epsilon = 1e-12);
    }
}

#[test]
fn near_one_residue_is_mana() {
    for eps in [0.0, 0.05, 0.15, 0.25] {
        let w = wigner_of_state(&noisy_input(Target::H, eps).unwrap()).unwrap();
        let moduli: Vec<f64> = w.values().iter().map(|v| v.norm()).collect();
        let h = renyi_entropy_quasi(&moduli, ALPHA_NEAR_ONE).unwrap();
        let residue = (1.0 - ALPHA_NEAR_ONE) * h;
        assert!(
            (residue - mana_quasi(&w)).abs() <= 1e-3,
            "residue {residue} vs mana {} at eps {eps}",
            mana_quasi(&w)
        );
    }
}

#[test]
fn infinite_order_limits() {
    let w = wigner_moduli(&noisy_input(Target::H, 0.1).unwrap());
    let h_inf = renyi_entropy_quasi(&w, f64::INFINITY).unwrap();
    let max = w.iter().copied().fold(0.0, f64::max);
    assert_abs_diff_eq!(h_inf, -max.log2(), epsilon = 1e-12);
    // finite orders decrease towards the infinite-order value
    let h40 = renyi_entropy_quasi(&w, 40.0).unwrap();
    assert!(h40 >= h_inf - 1e-12);
    let unif = vec![0.25; 4];
    let d_inf = renyi_divergence_quasi(&w, &unif, f64::INFINITY).unwrap();
    assert_abs_diff_eq!(d_inf, (max / 0.25).log2(), epsilon = 1e-12);
}

#[test]
fn divergence_support_rules() {
    // weight outside the reference support forces an infinite divergence
    let w = vec![0.5, 0.5];
    let r = vec![1.0, 0.0];
    assert!(renyi_divergence_quasi(&w, &r, 2.0).unwrap().is_infinite());
    // weight below the interior floor is ignored
    let w2 = vec![1.0, 1e-15];
    assert!(renyi_divergence_quasi(&w2, &r, 2.0).unwrap().is_finite());
}

#[test]
fn mana_facts() {
    assert_abs_diff_eq!(mana(&[0.25, 0.25, 0.25, 0.25]), 0.0, epsilon = 1e-15);
    let w = wigner_of_state(&target_state(Target::H)).unwrap();
    assert_abs_diff_eq!(
        mana_quasi(&w),
        ((1.0 + 2f64.sqrt()) / 2.0).log2(),
        epsilon = 1e-13
    );
    // mana vanishes exactly at the depolarisation boundary
    let boundary = 1.0 - 1.0 / 2f64.sqrt();
    let inside = wigner_of_state(&noisy_input(Target::H, boundary + 1e-9).unwrap()).unwrap();
    let outside = wigner_of_state(&noisy_input(Target::H, boundary - 1e-9).unwrap()).unwrap();
    assert!(mana_quasi(&inside) <= 1e-12);
    assert!(mana_quasi(&outside) > 0.0);
}

#[test]
fn lifts_preserve_divergences() {
    // the real/imaginary lift doubles the index set without changing
    // divergences against the duplicated reference
    let w = wigner_of_state(&noisy_input(Target::H, 0.1).unwrap()).unwrap();
    let lifted = lift_complex(&w);
    let r = vec![0.25; 4];
    let lifted_r = lift_ref(&r);
    let d_orig = renyi_divergence_quasi(
        &w.values().iter().map(|v| v.norm()).collect::<Vec<_>>(),
        &r,
        2.0,
    )
    .unwrap();
    let d_lift = renyi_divergence_quasi(&lifted, &lifted_r, 2.0).unwrap();
    // the lift halves the reference to keep it normalised; for a real
    // Wigner function the empty imaginary half then costs exactly one bit
    assert_abs_diff_eq!(d_orig + 1.0, d_lift, epsilon = 1e-12);
}

#[test]
fn continuity_envelope_value() {
    let v = wigner_l1_continuity(1e-9, 2.0, 2.0).unwrap();
    let expect = 2.0 * (1.0 + 1e-9 * 2f64.powf(2.5)).log2();
    assert_abs_diff_eq!(v, expect, epsilon = 1e-15);
}

#[test]
fn sandwiched_divergence_oracles() {
    // commuting case reduces to the classical divergence of the spectra
    let rho = DensityMatrix::from_matrix(
        1,
        CMat::from_row_slice(2, 2, &[c(0.7, 0.0), c(0.0, 0.0), c(0.0, 0.0), c(0.3, 0.0)]),
    )
    .unwrap();
    let tau = DensityMatrix::from_matrix(
        1,
        CMat::from_row_slice(2, 2, &[c(0.4, 0.0), c(0.0, 0.0), c(0.0, 0.0), c(0.6, 0.0)]),
    )
    .unwrap();
    let got = sandwiched_divergence(&rho, &tau, 2.0).unwrap();
    let classical = renyi_divergence_quasi(&[0.7, 0.3], &[0.4, 0.6], 2.0).unwrap();
    assert_abs_diff_eq!(got, classical, epsilon = 1e-12);
    // divergence from the maximally mixed state: 1 + log2 tr rho^2
    let mixed = DensityMatrix::maximally_mixed(1).unwrap();
    let got = sandwiched_divergence(&rho, &mixed, 2.0).unwrap();
    assert_abs_diff_eq!(got, 1.0 + (0.49f64 + 0.09).log2(), epsilon = 1e-12);
    // support violation
    let pure = DensityMatrix::basis_state(1, 0).unwrap();
    let ortho = DensityMatrix::basis_state(1, 1).unwrap();
    assert!(sandwiched_divergence(&pure, &ortho, 2.0).unwrap().is_infinite());
}

#[test]
fn lambda_optimiser_matches_grid_oracle() {
    let opts = LambdaOptions::default();
    for eps in [0.0, 0.1] {
        let rho = noisy_input(Target::H, eps).unwrap();
        let fast = lambda_monotone(&rho, 2.0, &opts).unwrap();
        let grid = lambda_grid_oracle(&rho, 2.0, 200_000).unwrap();
        // the oracle scans a coarse simplex grid, so it can only overshoot
        assert!(
            fast.value <= grid + 1e-6,
            "optimiser {} above grid oracle {grid} at eps {eps}",
            fast.value
        );
        assert!(
            fast.value >= grid - 0.05,
            "optimiser {} far below grid oracle {grid} at eps {eps}",
            fast.value
        );
        let wsum: f64 = fast.weights.iter().sum();
        assert_abs_diff_eq!(wsum, 1.0, epsilon = 1e-9);
    }
    // CSS states reach zero
    let css = DensityMatrix::basis_state(1, 0).unwrap();
    let res = lambda_monotone(&css, 2.0, &opts).unwrap();
    assert!(res.value.abs() <= 1e-6);
}
