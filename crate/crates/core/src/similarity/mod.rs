//! Similarity conjugation, condition numbers, the contraction radius bound,
//! and the conversion pair between spectral-set constants and
//! numerical-radius constants.
//!
//! Conjugation convention, fixed everywhere: `conjugate(T, S) = S^-1 T S`.

mod disc;

pub use disc::{disc_similarity, SimilarityWitness};

use num_complex::Complex64;

use crate::cmatrix::CMatrix;
use crate::error::{Error, Result};
use crate::linalg::{herm_eig, operator_norm, solve};
use crate::numrange::numerical_radius;

/// Internal sweep tolerance for radius evaluations inside reports.
const SWEEP_TOL: f64 = 1e-9;

/// Paired constants `C >= 1` (spectral-set / completely bounded) and
/// `C' = (C + 1/C)/2` (numerical-radius counterpart).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ConstantPair {
    pub c: f64,
    pub c_prime: f64,
}

impl ConstantPair {
    pub fn from_cb(c: f64) -> Result<Self> {
        Ok(ConstantPair {
            c,
            c_prime: cb_to_wcb(c)?,
        })
    }

    pub fn from_wcb(c_prime: f64) -> Result<Self> {
        Ok(ConstantPair {
            c: wcb_to_cb(c_prime)?,
            c_prime,
        })
    }
}

/// Result of checking `w(S^-1 T S) <= (k + 1/k)/2` for a contraction `T`.
#[derive(Debug, Clone)]
pub struct RadiusBoundReport {
    /// `w(S^-1 T S)` by sweep.
    pub radius: f64,
    /// `(cond(S) + cond(S)^-1) / 2`.
    pub bound: f64,
    /// `bound - radius`; nonnegative up to numerical slack.
    pub slack: f64,
}

/// `S^-1 T S` via a pivoted solve.
pub fn conjugate(t: &CMatrix, s: &CMatrix) -> Result<CMatrix> {
    let n = t.require_square()?;
    if s.require_square()? != n {
        return Err(Error::dim("similarity must match the operator dimension"));
    }
    solve(s, &t.matmul(s))
}

/// Condition number `||S|| * ||S^-1||`.
pub fn cond(s: &CMatrix) -> Result<f64> {
    s.require_square()?;
    let inv = crate::linalg::inverse(s)?;
    Ok(operator_norm(s) * operator_norm(&inv))
}

/// Replace `(T, S)` by a unitarily equivalent pair with positive `S`.
///
/// Writes `S = U P` (polar form), returns `T' = U* T U` and `S'` equal to
/// `P` rescaled so its spectrum lies in `[cond(S)^-1/2, cond(S)^1/2]`.
/// Then `S'^-1 T' S' = S^-1 T S` identically, so the conjugated radius is
/// preserved.
pub fn balance_positive(t: &CMatrix, s: &CMatrix) -> Result<(CMatrix, CMatrix)> {
    let n = t.require_square()?;
    if s.require_square()? != n {
        return Err(Error::dim("similarity must match the operator dimension"));
    }
    let gram = s.adjoint().matmul(s);
    let (vals, v) = herm_eig(&gram)?;
    let sigma_min = vals[0].max(0.0).sqrt();
    let sigma_max = vals[n - 1].max(0.0).sqrt();
    if sigma_min <= 1e-12 * sigma_max.max(1e-300) {
        return Err(Error::SingularMatrix { pivot: sigma_min });
    }

    // P = (S*S)^{1/2} and its inverse share the eigenbasis.
    let mut p = CMatrix::zeros(n, n);
    let mut p_inv = CMatrix::zeros(n, n);
    for i in 0..n {
        for j in 0..n {
            let mut acc = Complex64::new(0.0, 0.0);
            let mut acc_inv = Complex64::new(0.0, 0.0);
            for k in 0..n {
                let sig = vals[k].max(0.0).sqrt();
                let outer = v[(i, k)] * v[(j, k)].conj();
                acc += outer * sig;
                acc_inv += outer / sig;
            }
            p[(i, j)] = acc;
            p_inv[(i, j)] = acc_inv;
        }
    }
    let u = s.matmul(&p_inv);
    let t_prime = u.adjoint().matmul(t).matmul(&u);
    let scale = 1.0 / (sigma_max * sigma_min).sqrt();
    let s_prime = p.scale_re(scale).hermitian_part();
    Ok((t_prime, s_prime))
}

/// Check the conjugated-radius bound for a contraction.
pub fn radius_bound_check(t: &CMatrix, s: &CMatrix) -> Result<RadiusBoundReport> {
    let norm = operator_norm(t);
    if norm > 1.0 + 1e-12 {
        return Err(Error::NormTooLarge { norm });
    }
    let conj = conjugate(t, s)?;
    let kappa = cond(s)?;
    let radius = numerical_radius(&conj, SWEEP_TOL).value;
    let bound = 0.5 * (kappa + 1.0 / kappa);
    Ok(RadiusBoundReport {
        radius,
        bound,
        slack: bound - radius,
    })
}

/// `C' = (C + 1/C)/2` for `C >= 1`.
pub fn cb_to_wcb(c: f64) -> Result<f64> {
    if !(c >= 1.0 - 1e-12) {
        return Err(Error::domain(format!("constant must be >= 1, got {c}")));
    }
    let c = c.max(1.0);
    Ok(0.5 * (c + 1.0 / c))
}

/// Inverse map `C = C' + sqrt(C'^2 - 1)` for `C' >= 1`.
pub fn wcb_to_cb(c_prime: f64) -> Result<f64> {
    if !(c_prime >= 1.0 - 1e-12) {
        return Err(Error::domain(format!(
            "constant must be >= 1, got {c_prime}"
        )));
    }
    let c_prime = c_prime.max(1.0);
    Ok(c_prime + (c_prime * c_prime - 1.0).max(0.0).sqrt())
}
