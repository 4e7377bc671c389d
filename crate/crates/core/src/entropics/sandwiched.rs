//! Sandwiched quantum Renyi divergence on dense states.

use crate::phase_space::{CMat, DensityMatrix};
use crate::{Error, Result};
use num_complex::Complex64;

fn hermitian_power(m: &CMat, power: f64, tol: f64) -> Result<(CMat, Vec<f64>)> {
    let eig = nalgebra::SymmetricEigen::new(m.clone());
    let dim = m.nrows();
    let mut d = CMat::zeros(dim, dim);
    for (i, &lam) in eig.eigenvalues.iter().enumerate() {
        if lam < -tol {
            return Err(Error::Invalid(format!(
                "negative eigenvalue {lam:.3e} in operator power"
            )));
        }
        d[(i, i)] = Complex64::new(lam.max(0.0).powf(power), 0.0);
    }
    let v = &eig.eigenvectors;
    Ok((v * d * v.adjoint(), eig.eigenvalues.iter().copied().collect()))
}

/// `D~_alpha(rho || tau) = (alpha-1)^{-1} log2 tr[(tau^c rho tau^c)^alpha]`
/// with `c = (1-alpha)/(2 alpha)`.
///
/// Infinite on support violation (`rho` not within the support of `tau`).
pub fn sandwiched_divergence(
    rho: &DensityMatrix,
    tau: &DensityMatrix,
    alpha: f64,
) -> Result<f64> {
    if !(alpha > 1.0) || !alpha.is_finite() {
        return Err(Error::Invalid(format!(
            "order must be finite and exceed 1 (got {alpha})"
        )));
    }
    if rho.n_qubits() != tau.n_qubits() {
        return Err(Error::Dimension("state size mismatch".into()));
    }
    let tol = 1e-12;
    // support check before inverting powers of tau
    let eig_tau = nalgebra::SymmetricEigen::new(tau.matrix().clone());
    let v = &eig_tau.eigenvectors;
    let rot = v.adjoint() * rho.matrix() * v;
    for (i, &lam) in eig_tau.eigenvalues.iter().enumerate() {
        if lam < 1e-12 && rot[(i, i)].re > 1e-10 {
            return Ok(f64::INFINITY);
        }
    }
    let c = (1.0 - alpha) / (2.0 * alpha);
    let dim = tau.matrix().nrows();
    let mut tpow = CMat::zeros(dim, dim);
    for (i, &lam) in eig_tau.eigenvalues.iter().enumerate() {
        let val = if lam > 1e-12 { lam.powf(c) } else { 0.0 };
        tpow[(i, i)] = Complex64::new(val, 0.0);
    }
    let tpow = v * tpow * v.adjoint();
    let inner = &tpow * rho.matrix() * &tpow;
    let (_, eigs) = hermitian_power(&inner, 1.0, 1e-8)?;
    let s: f64 = eigs
        .iter()
        .map(|&mu| if mu > tol { mu.powf(alpha) } else { 0.0 })
        .sum();
    Ok(s.log2() / (alpha - 1.0))
}
