//! Classical Renyi quantities on (quasi)distributions.

use super::INTERIOR_FLOOR;
use crate::phase_space::QuasiDist;
use crate::{Error, Result};

const LN2: f64 = std::f64::consts::LN_2;

fn check_alpha(alpha: f64) -> Result<()> {
    if alpha.is_nan() || alpha <= 1.0 {
        return Err(Error::Invalid(format!(
            "order must exceed 1 (got {alpha})"
        )));
    }
    Ok(())
}

/// `H_alpha(w) = (1-alpha)^{-1} log2 sum |w_i|^alpha`; `-log2 max |w_i|`
/// at infinite order.
pub fn renyi_entropy_quasi(w: &[f64], alpha: f64) -> Result<f64> {
    check_alpha(alpha)?;
    if alpha.is_infinite() {
        let m = w.iter().map(|x| x.abs()).fold(0.0, f64::max);
        return Ok(-m.log2());
    }
    let s: f64 = w.iter().map(|x| x.abs().powf(alpha)).sum();
    Ok(s.ln() / (LN2 * (1.0 - alpha)))
}

/// The power mean `Q_alpha(w || r) = sum |w_i|^alpha r_i^{1-alpha}`.
///
/// Terms with `|w_i|` below the interior floor are dropped; a vanishing
/// reference under surviving weight yields infinity.
pub fn general_mean_q(w: &[f64], r: &[f64], alpha: f64) -> Result<f64> {
    check_alpha(alpha)?;
    if alpha.is_infinite() {
        return Err(Error::Invalid(
            "power mean undefined at infinite order; use the divergence".into(),
        ));
    }
    if w.len() != r.len() {
        return Err(Error::Dimension("weight/reference length mismatch".into()));
    }
    let mut s = 0.0;
    for (&wi, &ri) in w.iter().zip(r) {
        if ri < -1e-12 {
            return Err(Error::Invalid("negative reference entry".into()));
        }
        let a = wi.abs();
        if a < INTERIOR_FLOOR {
            continue;
        }
        if ri < INTERIOR_FLOOR * INTERIOR_FLOOR {
            return Ok(f64::INFINITY);
        }
        s += (alpha * a.ln() + (1.0 - alpha) * ri.ln()).exp();
    }
    Ok(s)
}

/// `D_alpha(w || r) = (alpha-1)^{-1} log2 Q_alpha(w || r)`, with
/// `log2 max |w_i|/r_i` at infinite order.
pub fn renyi_divergence_quasi(w: &[f64], r: &[f64], alpha: f64) -> Result<f64> {
    check_alpha(alpha)?;
    if alpha.is_infinite() {
        let mut m = 0.0f64;
        for (&wi, &ri) in w.iter().zip(r) {
            let a = wi.abs();
            if a < INTERIOR_FLOOR {
                continue;
            }
            if ri < INTERIOR_FLOOR * INTERIOR_FLOOR {
                return Ok(f64::INFINITY);
            }
            m = m.max(a / ri);
        }
        return Ok(m.log2());
    }
    Ok(general_mean_q(w, r, alpha)?.log2() / (alpha - 1.0))
}

/// A quasidistribution paired with a strictly positive reference.
#[derive(Clone, Debug)]
pub struct ReferencePair {
    w: Vec<f64>,
    r: Vec<f64>,
}

impl ReferencePair {
    pub fn new(w: Vec<f64>, r: Vec<f64>) -> Result<Self> {
        if w.len() != r.len() {
            return Err(Error::Dimension("weight/reference length mismatch".into()));
        }
        let rsum: f64 = r.iter().sum();
        if (rsum - 1.0).abs() > 1e-6 {
            return Err(Error::Invalid("reference does not sum to 1".into()));
        }
        for (&wi, &ri) in w.iter().zip(&r) {
            if ri < 0.0 {
                return Err(Error::Invalid("negative reference entry".into()));
            }
            if wi.abs() > INTERIOR_FLOOR && ri < INTERIOR_FLOOR {
                return Err(Error::Invalid(
                    "reference vanishes on the support of the weight".into(),
                ));
            }
        }
        Ok(Self { w, r })
    }

    pub fn weight(&self) -> &[f64] {
        &self.w
    }

    pub fn reference(&self) -> &[f64] {
        &self.r
    }

    pub fn divergence(&self, alpha: f64) -> Result<f64> {
        renyi_divergence_quasi(&self.w, &self.r, alpha)
    }
}

/// Mana `M(w) = log2 sum |w_i|` of a real quasidistribution.
pub fn mana(w: &[f64]) -> f64 {
    w.iter().map(|x| x.abs()).sum::<f64>().log2()
}

/// Mana of a (possibly complex) Wigner function, via moduli.
pub fn mana_quasi(w: &QuasiDist) -> f64 {
    w.l1_norm().log2()
}

/// Complex lift `mu(w) = Re w (+) Im w` used to reduce complex
/// majorization statements to real ones.
pub fn lift_complex(w: &QuasiDist) -> Vec<f64> {
    let mut out: Vec<f64> = w.values().iter().map(|v| v.re).collect();
    out.extend(w.values().iter().map(|v| v.im));
    out
}

/// Reference lift `nu(r) = (r (+) r) / 2` matching [`lift_complex`].
pub fn lift_ref(r: &[f64]) -> Vec<f64> {
    let mut out: Vec<f64> = r.iter().map(|x| x / 2.0).collect();
    out.extend(r.iter().map(|x| x / 2.0));
    out
}

/// Entropy perturbation bound under a Wigner one-norm shift:
/// `(alpha/(alpha-1)) log2(1 + delta d^{5/2})` for states `delta`-close in
/// trace norm on a `d`-dimensional system.
pub fn wigner_l1_continuity(delta: f64, d: f64, alpha: f64) -> Result<f64> {
    check_alpha(alpha)?;
    if alpha.is_infinite() {
        return Ok((1.0 + delta * d.powf(2.5)).log2());
    }
    Ok(alpha / (alpha - 1.0) * (1.0 + delta * d.powf(2.5)).log2())
}
