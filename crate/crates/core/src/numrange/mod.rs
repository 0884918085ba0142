//! Numerical range boundary, numerical radius, and closed forms for
//! `[[aI, B], [0, aI]]` block matrices.
//!
//! Orientation convention, fixed throughout: the support function of the
//! numerical range `W(T)` in direction `e^{i theta}` is
//! `h(theta) = lambda_max( (e^{-i theta} T + e^{i theta} T*) / 2 )`,
//! and `w(T) = max_theta h(theta)`.

mod ando;

pub use ando::{ando_radius, AndoCertificate};

use num_complex::Complex64;
use rayon::prelude::*;

use crate::cmatrix::{quad_form, CMatrix};
use crate::error::{Error, Result};
use crate::linalg::{herm_eig_max, lambda_max_hermitian};
use crate::opt::golden_max;

/// Default number of base sweep angles.
pub const DEFAULT_ANGLES: usize = 720;

/// Bracket width at which golden-section refinement of a local maximum stops.
const REFINE_WIDTH: f64 = 1e-10;

/// One sampled point of the support-function curve of `W(T)`.
#[derive(Debug, Clone)]
pub struct RangeSample {
    /// Direction angle in `[0, 2pi)`.
    pub theta: f64,
    /// Support value `h(theta)`.
    pub support: f64,
    /// Boundary point `<Tx, x>` at the top eigenvector `x`.
    pub point: Complex64,
}

/// Sampled support-function curve of the numerical range.
#[derive(Debug, Clone)]
pub struct RangeBoundary {
    pub samples: Vec<RangeSample>,
}

impl RangeBoundary {
    pub fn points(&self) -> Vec<Complex64> {
        self.samples.iter().map(|s| s.point).collect()
    }

    pub fn max_support(&self) -> f64 {
        self.samples
            .iter()
            .map(|s| s.support)
            .fold(f64::NEG_INFINITY, f64::max)
    }
}

/// Numerical radius together with the maximizing direction and a witness
/// unit vector.
#[derive(Debug, Clone)]
pub struct NumericalRadius {
    pub value: f64,
    pub theta_star: f64,
    pub witness: Vec<Complex64>,
}

fn rotated_real_part(t: &CMatrix, theta: f64) -> CMatrix {
    t.scale(Complex64::from_polar(1.0, -theta)).hermitian_part()
}

/// Support value `h(theta)` of `W(T)` and a boundary point attaining it.
pub fn support_value(t: &CMatrix, theta: f64) -> (f64, Complex64) {
    assert!(t.is_square(), "support_value requires a square matrix");
    let h = rotated_real_part(t, theta);
    let pair = herm_eig_max(&h).expect("validated square finite input");
    let z = quad_form(t, &pair.vector);
    (pair.value, z)
}

/// Support value only, via the tridiagonal fast path (no eigenvector).
pub fn support_value_only(t: &CMatrix, theta: f64) -> f64 {
    lambda_max_hermitian(&rotated_real_part(t, theta))
}

/// Numerical radius by support-function sweep with the default base grid.
pub fn numerical_radius(t: &CMatrix, tol: f64) -> NumericalRadius {
    numerical_radius_with_angles(t, tol, DEFAULT_ANGLES)
}

/// Numerical radius by coarse grid plus golden-section refinement around
/// every local maximum. Ties between equal maxima break toward the smallest
/// base-grid index, so the result does not depend on evaluation order.
pub fn numerical_radius_with_angles(t: &CMatrix, tol: f64, base_angles: usize) -> NumericalRadius {
    assert!(t.is_square(), "numerical_radius requires a square matrix");
    assert!(tol > 0.0, "tolerance must be positive");
    let k = base_angles.max(8);
    let n = t.rows();

    if t.max_abs() == 0.0 {
        let mut witness = vec![Complex64::new(0.0, 0.0); n];
        witness[0] = Complex64::new(1.0, 0.0);
        return NumericalRadius {
            value: 0.0,
            theta_star: 0.0,
            witness,
        };
    }

    let step = std::f64::consts::TAU / k as f64;
    let grid: Vec<f64> = (0..k)
        .into_par_iter()
        .map(|j| support_value_only(t, j as f64 * step))
        .collect();

    // Refine every local maximum of the periodic grid.
    let local_maxima: Vec<usize> = (0..k)
        .filter(|&j| {
            let prev = grid[(j + k - 1) % k];
            let next = grid[(j + 1) % k];
            grid[j] >= prev && grid[j] >= next
        })
        .collect();

    let refined: Vec<(f64, f64)> = local_maxima
        .par_iter()
        .map(|&j| {
            let center = j as f64 * step;
            golden_max(
                |theta| support_value_only(t, theta),
                center - step,
                center + step,
                REFINE_WIDTH,
            )
        })
        .collect();

    let mut best_val = f64::NEG_INFINITY;
    let mut best_theta = 0.0;
    for (theta, val) in refined {
        if val > best_val {
            best_val = val;
            best_theta = theta;
        }
    }

    let theta_star = best_theta.rem_euclid(std::f64::consts::TAU);
    let pair = herm_eig_max(&rotated_real_part(t, theta_star)).expect("square finite input");
    debug_assert!(
        (quad_form(t, &pair.vector).norm() - best_val).abs() <= tol.max(1e-9) * (1.0 + best_val.abs()),
        "witness does not attain the radius"
    );
    NumericalRadius {
        value: best_val,
        theta_star,
        witness: pair.vector,
    }
}

/// Uniformly sampled support-function curve of `W(T)`.
pub fn range_boundary(t: &CMatrix, n_angles: usize, _tol: f64) -> RangeBoundary {
    assert!(t.is_square(), "range_boundary requires a square matrix");
    assert!(n_angles >= 8, "need at least 8 angles");
    let step = std::f64::consts::TAU / n_angles as f64;
    let samples: Vec<RangeSample> = (0..n_angles)
        .into_par_iter()
        .map(|j| {
            let theta = j as f64 * step;
            let (support, point) = support_value(t, theta);
            RangeSample {
                theta,
                support,
                point,
            }
        })
        .collect();
    RangeBoundary { samples }
}

/// Operator norm of `[[aI, B], [0, aI]]` with `||B|| = b`:
/// `(b + sqrt(b^2 + 4|a|^2)) / 2`.
pub fn lemma22_norm(alpha: Complex64, b: f64) -> Result<f64> {
    if b < 0.0 {
        return Err(Error::domain(format!("block norm must be nonnegative, got {b}")));
    }
    let a2 = alpha.norm_sqr();
    Ok(0.5 * (b + (b * b + 4.0 * a2).sqrt()))
}

/// Numerical radius of `[[aI, B], [0, aI]]` with `||B|| = b`: `|a| + b/2`.
pub fn lemma22_radius(alpha: Complex64, b: f64) -> Result<f64> {
    if b < 0.0 {
        return Err(Error::domain(format!("block norm must be nonnegative, got {b}")));
    }
    Ok(alpha.norm() + 0.5 * b)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn support_of_identity() {
        let (h, z) = support_value(&CMatrix::identity(3), 0.0);
        assert!((h - 1.0).abs() < 1e-12);
        assert!((z - c(1.0, 0.0)).norm() < 1e-12);
    }

    #[test]
    fn support_of_nilpotent_is_unit_circle() {
        let t = CMatrix::from_real_rows(&[&[0.0, 2.0], &[0.0, 0.0]]).unwrap();
        for k in 0..12 {
            let theta = k as f64 * 0.48;
            let (h, z) = support_value(&t, theta);
            assert!((h - 1.0).abs() < 1e-10, "theta={theta} h={h}");
            assert!((z.norm() - 1.0).abs() < 1e-10, "theta={theta} |z|={}", z.norm());
        }
    }

    #[test]
    fn support_of_hermitian_diag() {
        let t = CMatrix::diag_real(&[-1.0, 3.0]);
        let (h, z) = support_value(&t, 0.0);
        assert!((h - 3.0).abs() < 1e-12);
        assert!((z - c(3.0, 0.0)).norm() < 1e-10);
    }

    #[test]
    fn radius_of_shifted_jordan_block() {
        // w([[1/2, 3/2], [0, 1/2]]) = 5/4.
        let t = CMatrix::from_real_rows(&[&[0.5, 1.5], &[0.0, 0.5]]).unwrap();
        let r = numerical_radius(&t, 1e-10);
        assert!((r.value - 1.25).abs() < 1e-10, "w={}", r.value);
        let witness_value = quad_form(&t, &r.witness).norm();
        assert!(witness_value >= r.value - 1e-9);
    }

    #[test]
    fn radius_of_nilpotent() {
        let t = CMatrix::from_real_rows(&[&[0.0, 2.0], &[0.0, 0.0]]).unwrap();
        let r = numerical_radius(&t, 1e-10);
        assert!((r.value - 1.0).abs() < 1e-10);
    }

    #[test]
    fn radius_of_hermitian_diag() {
        let t = CMatrix::diag_real(&[-1.0, 3.0]);
        let r = numerical_radius(&t, 1e-10);
        assert!((r.value - 3.0).abs() < 1e-10);
        assert!(r.theta_star.abs() < 1e-5 || (r.theta_star - std::f64::consts::TAU).abs() < 1e-5);
    }

    #[test]
    fn radius_of_zero_matrix() {
        let r = numerical_radius(&CMatrix::zeros(3, 3), 1e-10);
        assert_eq!(r.value, 0.0);
        assert_eq!(r.witness[0], c(1.0, 0.0));
    }

    #[test]
    fn boundary_of_scalar_matrix_is_constant() {
        let alpha = c(0.3, -0.7);
        let t = CMatrix::diag(&[alpha, alpha]);
        let boundary = range_boundary(&t, 16, 1e-9);
        for s in &boundary.samples {
            assert!((s.point - alpha).norm() < 1e-10);
        }
    }

    #[test]
    fn boundary_of_nilpotent_is_unit_circle() {
        let t = CMatrix::from_real_rows(&[&[0.0, 2.0], &[0.0, 0.0]]).unwrap();
        let boundary = range_boundary(&t, 64, 1e-9);
        for s in &boundary.samples {
            assert!((s.point.norm() - 1.0).abs() < 1e-8);
            // Sample consistency: Re(e^{-i theta} z) = h(theta).
            let proj = (s.point * Complex64::from_polar(1.0, -s.theta)).re;
            assert!((proj - s.support).abs() < 1e-8);
        }
    }

    #[test]
    fn lemma22_closed_forms() {
        assert!((lemma22_norm(c(0.5, 0.0), 0.75).unwrap() - 1.0).abs() < 1e-15);
        assert!((lemma22_radius(c(0.5, 0.0), 1.5).unwrap() - 1.25).abs() < 1e-15);
        assert!((lemma22_norm(c(0.0, 0.0), 2.0).unwrap() - 2.0).abs() < 1e-15);
        assert!((lemma22_radius(c(0.0, 0.0), 2.0).unwrap() - 1.0).abs() < 1e-15);
        assert!(lemma22_norm(c(0.0, 0.0), -0.1).is_err());
        assert!(lemma22_radius(c(0.0, 0.0), -0.1).is_err());
    }
}
