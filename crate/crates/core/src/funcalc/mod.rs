//! Polynomial functional calculus: scalar and matrix polynomial evaluation
//! at an operator, Moebius maps, sampled sup norms, and ratio probes.

mod probes;

pub use probes::{berger_stampfli_check, crouzeix_probe, ratio_probe, BergerStampfliReport, ConstantReport, RatioReport};

use num_complex::Complex64;
use rayon::prelude::*;

use crate::cmatrix::CMatrix;
use crate::error::{Error, Result};
use crate::linalg::{kron, operator_norm, solve};
use crate::opt::golden_max;

/// Default circle sample count for sampled sup norms.
pub const DEFAULT_SUP_SAMPLES: usize = 8192;

/// Scalar polynomial `p(z) = sum_k coeffs[k] z^k`.
#[derive(Debug, Clone, PartialEq)]
pub struct Polynomial {
    coeffs: Vec<Complex64>,
}

impl Polynomial {
    pub fn new(coeffs: Vec<Complex64>) -> Self {
        assert!(!coeffs.is_empty(), "a polynomial needs at least one coefficient");
        Polynomial { coeffs }
    }

    pub fn from_real(coeffs: &[f64]) -> Self {
        Polynomial::new(coeffs.iter().map(|&x| Complex64::new(x, 0.0)).collect())
    }

    pub fn coeffs(&self) -> &[Complex64] {
        &self.coeffs
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    /// Horner evaluation at a point.
    pub fn eval(&self, z: Complex64) -> Complex64 {
        let mut acc = Complex64::new(0.0, 0.0);
        for &c in self.coeffs.iter().rev() {
            acc = acc * z + c;
        }
        acc
    }
}

/// Matrix polynomial `F(z) = sum_k z^k F_k` with square coefficients of a
/// common dimension.
#[derive(Debug, Clone, PartialEq)]
pub struct MatrixPolynomial {
    coeffs: Vec<CMatrix>,
}

impl MatrixPolynomial {
    pub fn new(coeffs: Vec<CMatrix>) -> Result<Self> {
        let first = coeffs
            .first()
            .ok_or_else(|| Error::dim("a matrix polynomial needs at least one coefficient"))?;
        let m = first.require_square()?;
        for c in &coeffs {
            if c.require_square()? != m {
                return Err(Error::dim("coefficients must share one square dimension"));
            }
        }
        Ok(MatrixPolynomial { coeffs })
    }

    pub fn from_scalar(p: &Polynomial) -> Self {
        let coeffs = p
            .coeffs()
            .iter()
            .map(|&c| CMatrix::new(1, 1, vec![c]).expect("finite scalar"))
            .collect();
        MatrixPolynomial { coeffs }
    }

    pub fn coeffs(&self) -> &[CMatrix] {
        &self.coeffs
    }

    pub fn coeff_dim(&self) -> usize {
        self.coeffs[0].rows()
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    /// Rescale all coefficients by a real factor.
    pub fn scale(&self, factor: f64) -> MatrixPolynomial {
        MatrixPolynomial {
            coeffs: self.coeffs.iter().map(|c| c.scale_re(factor)).collect(),
        }
    }
}

/// Horner evaluation `p(T)`.
pub fn poly_eval_operator(p: &Polynomial, t: &CMatrix) -> CMatrix {
    assert!(t.is_square(), "polynomial evaluation requires a square matrix");
    let n = t.rows();
    let mut acc = CMatrix::zeros(n, n);
    for &c in p.coeffs().iter().rev() {
        acc = acc.matmul(t);
        for i in 0..n {
            acc[(i, i)] += c;
        }
    }
    acc
}

/// Block evaluation `F(T) = sum_k kron(F_k, T^k)`; block `(i, j)` of the
/// result is `sum_k (F_k)[i,j] T^k`.
pub fn matpoly_eval_operator(f: &MatrixPolynomial, t: &CMatrix) -> CMatrix {
    assert!(t.is_square(), "operator evaluation requires a square matrix");
    let d = t.rows();
    let mut acc = kron(&f.coeffs()[0], &CMatrix::identity(d));
    let mut power = CMatrix::identity(d);
    for fk in f.coeffs().iter().skip(1) {
        power = power.matmul(t);
        acc = acc.add(&kron(fk, &power));
    }
    acc
}

/// Horner evaluation of the matrix polynomial at a scalar point.
pub fn matpoly_eval_point(f: &MatrixPolynomial, z: Complex64) -> CMatrix {
    let m = f.coeff_dim();
    let mut acc = CMatrix::zeros(m, m);
    for fk in f.coeffs().iter().rev() {
        acc = acc.scale(z).add(fk);
    }
    acc
}

/// Norm of `F` on the unit circle at angle `theta`.
fn circle_norm(f: &MatrixPolynomial, theta: f64) -> f64 {
    operator_norm(&matpoly_eval_point(f, Complex64::from_polar(1.0, theta)))
}

/// Sampled sup of `||F||` over the closed unit disc. By the maximum
/// principle the sup lives on the circle; the estimate is a grid maximum
/// plus golden-section refinement around every local maximum, so it
/// under-shoots the true sup by at most the refinement width.
pub fn sup_norm_disc(f: &MatrixPolynomial, samples: usize) -> f64 {
    let m = samples.max(4 * (f.degree() + 1)).max(8);
    let step = std::f64::consts::TAU / m as f64;
    let grid: Vec<f64> = (0..m)
        .into_par_iter()
        .map(|j| circle_norm(f, j as f64 * step))
        .collect();

    let local_maxima: Vec<usize> = (0..m)
        .filter(|&j| {
            let prev = grid[(j + m - 1) % m];
            let next = grid[(j + 1) % m];
            grid[j] >= prev && grid[j] >= next
        })
        .collect();
    local_maxima
        .par_iter()
        .map(|&j| {
            let center = j as f64 * step;
            golden_max(|theta| circle_norm(f, theta), center - step, center + step, 1e-12).1
        })
        .reduce(|| f64::NEG_INFINITY, f64::max)
}

/// Max of `||F(z)||` over an explicit point set.
pub fn sup_norm_set(f: &MatrixPolynomial, pts: &[Complex64]) -> Result<f64> {
    if pts.is_empty() {
        return Err(Error::EmptySet);
    }
    Ok(pts
        .iter()
        .map(|&z| operator_norm(&matpoly_eval_point(f, z)))
        .fold(0.0, f64::max))
}

/// Moebius map `phi_a(z) = (a + z) / (1 + conj(a) z)` at a scalar.
pub fn mobius_eval_point(a: Complex64, z: Complex64) -> Complex64 {
    (a + z) / (Complex64::new(1.0, 0.0) + a.conj() * z)
}

/// Operator Moebius image `(aI + T)(I + conj(a) T)^-1`.
pub fn mobius_eval_operator(a: Complex64, t: &CMatrix) -> Result<CMatrix> {
    let n = t.require_square()?;
    if a.norm() >= 1.0 {
        return Err(Error::domain(format!(
            "Moebius parameter must lie in the open disc, got |a| = {}",
            a.norm()
        )));
    }
    let mut numerator = t.clone();
    let mut denominator = t.scale(a.conj());
    for i in 0..n {
        numerator[(i, i)] += a;
        denominator[(i, i)] += Complex64::new(1.0, 0.0);
    }
    // Factors commute (both are polynomials in T), so one solve suffices.
    solve(&denominator, &numerator)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rng::CounterRng;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn poly_identity_returns_t() {
        let mut rng = CounterRng::new(53);
        let t = rng.matrix(3, 3);
        let p = Polynomial::from_real(&[0.0, 1.0]);
        assert!(poly_eval_operator(&p, &t).sub(&t).frobenius_norm() < 1e-14);
    }

    #[test]
    fn poly_square_of_nilpotent_vanishes() {
        let t = CMatrix::from_real_rows(&[&[0.0, 2.0], &[0.0, 0.0]]).unwrap();
        let p = Polynomial::from_real(&[0.0, 0.0, 1.0]);
        assert!(poly_eval_operator(&p, &t).max_abs() < 1e-15);
    }

    #[test]
    fn poly_agrees_with_power_sums() {
        let mut rng = CounterRng::new(59);
        for _ in 0..10 {
            let t = rng.matrix(4, 4);
            let coeffs: Vec<Complex64> = (0..6).map(|_| rng.complex_gaussian()).collect();
            let p = Polynomial::new(coeffs.clone());
            let horner = poly_eval_operator(&p, &t);
            let mut naive = CMatrix::zeros(4, 4);
            for (k, &ck) in coeffs.iter().enumerate() {
                naive = naive.add(&t.pow(k).scale(ck));
            }
            let scale = 1.0 + naive.frobenius_norm();
            assert!(horner.sub(&naive).frobenius_norm() < 1e-10 * scale);
        }
    }

    #[test]
    fn matpoly_constant_is_kron_with_identity() {
        let mut rng = CounterRng::new(61);
        let f0 = rng.matrix(2, 2);
        let f = MatrixPolynomial::new(vec![f0.clone()]).unwrap();
        let t = rng.matrix(3, 3);
        let eval = matpoly_eval_operator(&f, &t);
        assert!(eval.sub(&kron(&f0, &CMatrix::identity(3))).frobenius_norm() < 1e-14);
    }

    #[test]
    fn matpoly_scalar_case_reduces_to_poly() {
        let mut rng = CounterRng::new(67);
        let t = rng.matrix(3, 3);
        let coeffs: Vec<Complex64> = (0..4).map(|_| rng.complex_gaussian()).collect();
        let p = Polynomial::new(coeffs);
        let f = MatrixPolynomial::from_scalar(&p);
        let a = matpoly_eval_operator(&f, &t);
        let b = poly_eval_operator(&p, &t);
        assert!(a.sub(&b).frobenius_norm() < 1e-12);
    }

    #[test]
    fn matpoly_point_matches_operator_on_1x1() {
        let mut rng = CounterRng::new(71);
        let f = MatrixPolynomial::new((0..4).map(|_| rng.matrix(2, 2)).collect()).unwrap();
        let z = c(0.3, -0.4);
        let t = CMatrix::new(1, 1, vec![z]).unwrap();
        let by_point = matpoly_eval_point(&f, z);
        let by_operator = matpoly_eval_operator(&f, &t);
        // The operator evaluation interleaves blocks; for d = 1 they agree
        // entrywise.
        assert!(by_operator.sub(&by_point).frobenius_norm() < 1e-12);
        assert!(matpoly_eval_point(&f, c(0.0, 0.0)).sub(&f.coeffs()[0]).frobenius_norm() < 1e-15);
    }

    #[test]
    fn sup_norm_of_monomials_is_one() {
        for k in 0..4 {
            let mut coeffs = vec![CMatrix::zeros(1, 1); k + 1];
            coeffs[k] = CMatrix::identity(1);
            let f = MatrixPolynomial::new(coeffs).unwrap();
            assert!((sup_norm_disc(&f, 64) - 1.0).abs() < 1e-10, "k={k}");
        }
    }

    #[test]
    fn sup_norm_set_basics() {
        let mut rng = CounterRng::new(73);
        let f = MatrixPolynomial::new((0..3).map(|_| rng.matrix(2, 2)).collect()).unwrap();
        let z0 = c(0.2, 0.5);
        let single = sup_norm_set(&f, &[z0]).unwrap();
        assert!((single - operator_norm(&matpoly_eval_point(&f, z0))).abs() < 1e-14);

        let constant = MatrixPolynomial::new(vec![rng.matrix(2, 2)]).unwrap();
        let pts: Vec<Complex64> = (0..10).map(|_| rng.complex_gaussian()).collect();
        let sup = sup_norm_set(&constant, &pts).unwrap();
        assert!((sup - operator_norm(&constant.coeffs()[0])).abs() < 1e-14);

        assert!(matches!(sup_norm_set(&f, &[]), Err(Error::EmptySet)));
    }

    #[test]
    fn sup_norm_set_on_fine_circle_matches_disc() {
        let mut rng = CounterRng::new(79);
        let f = MatrixPolynomial::new((0..5).map(|_| rng.matrix(2, 2)).collect()).unwrap();
        let disc = sup_norm_disc(&f, DEFAULT_SUP_SAMPLES);
        let pts: Vec<Complex64> = (0..20_000)
            .map(|j| Complex64::from_polar(1.0, std::f64::consts::TAU * j as f64 / 20_000.0))
            .collect();
        let circle = sup_norm_set(&f, &pts).unwrap();
        assert!((disc - circle).abs() < 1e-6 * (1.0 + disc), "disc={disc} circle={circle}");
        assert!(disc >= circle - 1e-12);
    }

    #[test]
    fn mobius_basics() {
        let mut rng = CounterRng::new(83);
        let t = rng.matrix(3, 3);
        let id = mobius_eval_operator(c(0.0, 0.0), &t).unwrap();
        assert!(id.sub(&t).frobenius_norm() < 1e-12);

        let half = mobius_eval_operator(c(0.5, 0.0), &CMatrix::zeros(2, 2)).unwrap();
        assert!(half.sub(&CMatrix::identity(2).scale_re(0.5)).frobenius_norm() < 1e-14);

        assert!(mobius_eval_operator(c(1.0, 0.0), &t).is_err());
    }

    #[test]
    fn mobius_on_nilpotent_matches_two_term_expansion() {
        let t = CMatrix::from_real_rows(&[&[0.0, 2.0], &[0.0, 0.0]]).unwrap();
        let img = mobius_eval_operator(c(0.5, 0.0), &t).unwrap();
        let expect = CMatrix::from_real_rows(&[&[0.5, 1.5], &[0.0, 0.5]]).unwrap();
        assert!(img.sub(&expect).frobenius_norm() < 1e-12);
    }

    #[test]
    fn mobius_scalar_and_operator_agree_on_1x1() {
        let mut rng = CounterRng::new(89);
        for _ in 0..20 {
            let g = rng.complex_gaussian();
            let a = g * (0.8 / (1.0 + g.norm()));
            let z = rng.complex_gaussian() * 0.6;
            let t = CMatrix::new(1, 1, vec![z]).unwrap();
            let op = mobius_eval_operator(a, &t).unwrap()[(0, 0)];
            let pt = mobius_eval_point(a, z);
            assert!((op - pt).norm() < 1e-12);
        }
    }
}
