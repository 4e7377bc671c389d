//! Randomized invariants of the representation and entropic layers.

use magicdist::entropics::{renyi_divergence_quasi, renyi_entropy_quasi};
use magicdist::phase_space::{c, state_of_wigner, wigner_of_state, CMat, DensityMatrix};
use proptest::prelude::*;

fn mixed_state(theta: f64, phi: f64, lam: f64) -> DensityMatrix {
    // mixture of two orthogonal pure states on the Bloch sphere
    let (a, b) = ((theta / 2.0).cos(), (theta / 2.0).sin());
    let psi = [c(a, 0.0), c(b * phi.cos(), b * phi.sin())];
    let psi_perp = [psi[1].conj(), -psi[0].conj()];
    let mut m = CMat::zeros(2, 2);
    for r in 0..2 {
        for s in 0..2 {
            m[(r, s)] = psi[r] * psi[s].conj() * c(lam, 0.0)
                + psi_perp[r] * psi_perp[s].conj() * c(1.0 - lam, 0.0);
        }
    }
    DensityMatrix::from_matrix(1, m).unwrap()
}

proptest! {
    #[test]
    fn wigner_round_trip_and_normalization(
        theta in 0.0..std::f64::consts::PI,
        phi in 0.0..std::f64::consts::TAU,
        lam in 0.0..1.0f64,
    ) {
        let rho = mixed_state(theta, phi, lam);
        let w = wigner_of_state(&rho).unwrap();
        prop_assert!((w.sum() - c(1.0, 0.0)).norm() <= 1e-12);
        let back = state_of_wigner(&w).unwrap();
        prop_assert!(rho.trace_distance(&back).unwrap() <= 1e-10);
    }

    #[test]
    fn negativity_only_with_imaginarity_for_rebits(
        theta in 0.0..std::f64::consts::PI,
        lam in 0.0..1.0f64,
    ) {
        // rebits have real Wigner functions
        let rho = mixed_state(theta, 0.0, lam);
        let w = wigner_of_state(&rho).unwrap();
        prop_assert!(w.is_real(1e-12));
        // total mass above 1 exactly when some entry is negative
        let negative = w.min_real() < -1e-12;
        let mass = w.l1_norm();
        prop_assert_eq!(negative, mass > 1.0 + 1e-12);
    }

    #[test]
    fn entropy_bounds_and_divergence_positivity(
        raw in prop::collection::vec(1e-6..1.0f64, 2..12),
        alpha in 1.0001..40.0f64,
    ) {
        let tot: f64 = raw.iter().sum();
        let p: Vec<f64> = raw.iter().map(|v| v / tot).collect();
        let h = renyi_entropy_quasi(&p, alpha).unwrap();
        prop_assert!(h >= -1e-12);
        prop_assert!(h <= (p.len() as f64).log2() + 1e-12);
        let unif = vec![1.0 / p.len() as f64; p.len()];
        let d = renyi_divergence_quasi(&p, &unif, alpha).unwrap();
        prop_assert!(d >= -1e-12);
        // divergence from the uniform reference complements the entropy
        prop_assert!((d - ((p.len() as f64).log2() - h)).abs() <= 1e-9);
        prop_assert!(renyi_divergence_quasi(&p, &p, alpha).unwrap().abs() <= 1e-9);
    }

    #[test]
    fn divergence_monotone_in_alpha(
        raw in prop::collection::vec(1e-6..1.0f64, 3..8),
    ) {
        let tot: f64 = raw.iter().sum();
        let p: Vec<f64> = raw.iter().map(|v| v / tot).collect();
        let unif = vec![1.0 / p.len() as f64; p.len()];
        let mut prev = f64::NEG_INFINITY;
        for alpha in [1.2, 1.5, 2.0, 4.0, 8.0, 40.0] {
            let d = renyi_divergence_quasi(&p, &unif, alpha).unwrap();
            prop_assert!(d >= prev - 1e-10);
            prev = d;
        }
    }
}
