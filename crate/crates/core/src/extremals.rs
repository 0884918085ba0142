//! Explicit matrix constructions where the toolkit's inequalities are tight.

use num_complex::Complex64;

use crate::cmatrix::CMatrix;
use crate::error::{Error, Result};
use crate::funcalc::{matpoly_eval_operator, sup_norm_disc, MatrixPolynomial, DEFAULT_SUP_SAMPLES};
use crate::linalg::kron;
use crate::numrange::numerical_radius;

/// Point evaluation `f -> f(T_model)` at an operator whose minimal
/// similarity to a contraction has condition exactly `c`, so the disc is a
/// spectral set for it with constant exactly `c` at every matrix level.
#[derive(Debug, Clone)]
pub struct ModelHomomorphism {
    /// `[[0, c], [0, 0]]`.
    pub t_model: CMatrix,
    /// The exact constant.
    pub c: f64,
    /// `diag(sqrt(c), 1/sqrt(c))`, the optimal similarity.
    pub s_opt: CMatrix,
}

impl ModelHomomorphism {
    /// `(c + 1/c) / 2`, the exact numerical-radius constant of the model.
    pub fn wcb_exact(&self) -> f64 {
        0.5 * (self.c + 1.0 / self.c)
    }

    /// The degree-one witness polynomial whose evaluation attains the
    /// numerical-radius constant.
    pub fn witness_polynomial(&self) -> MatrixPolynomial {
        let z = MatrixPolynomial::new(vec![CMatrix::zeros(1, 1), CMatrix::identity(1)])
            .expect("valid coefficients");
        theorem23_witness(self.c, &z).expect("A(z) = z has sup exactly 1")
    }

    /// Measure the constant by evaluating the witness at the model operator
    /// and sweeping the numerical radius.
    pub fn witness_value(&self) -> f64 {
        let b = self.witness_polynomial();
        let eval = matpoly_eval_operator(&b, &self.t_model);
        numerical_radius(&eval, 1e-10).value
    }
}

/// Operator and Moebius parameter where `w(phi_a(T)) = 5/4 ||phi_a||_disc`.
///
/// Returns `(T, a, expected_ratio)` with `T = [[0, 2], [0, 0]]`, `a = 1/2`,
/// and expected ratio `5/4`.
pub fn drury_pair() -> (CMatrix, Complex64, f64) {
    let t = CMatrix::from_real_rows(&[&[0.0, 2.0], &[0.0, 0.0]]).expect("static entries");
    (t, Complex64::new(0.5, 0.0), 1.25)
}

/// The pair `T = [[1/2, 3/2], [0, 1/2]]`, `S = diag(2, 1)`: the disc is a
/// complete 2-spectral set for `T` via `S`, yet `w(T) = 5/4 > 1`.
pub fn remark35() -> (CMatrix, CMatrix) {
    let t = CMatrix::from_real_rows(&[&[0.5, 1.5], &[0.0, 0.5]]).expect("static entries");
    let s = CMatrix::diag_real(&[2.0, 1.0]);
    debug_assert!((numerical_radius(&t, 1e-10).value - 1.25).abs() < 1e-9);
    (t, s)
}

/// Double a sup-normalized matrix polynomial `A` into the block witness
/// `B(z) = [[I/c, (1 - 1/c^2) A(z)], [0, I/c]]`, which again has sup norm 1
/// on the disc.
pub fn theorem23_witness(c: f64, a: &MatrixPolynomial) -> Result<MatrixPolynomial> {
    if !(c >= 1.0) {
        return Err(Error::domain(format!("constant must be >= 1, got {c}")));
    }
    let samples = DEFAULT_SUP_SAMPLES.max(4 * (a.degree() + 1));
    let sup = sup_norm_disc(a, samples);
    if (sup - 1.0).abs() > 1e-6 {
        return Err(Error::UnnormalizedA { sup });
    }
    let m = a.coeff_dim();
    let inv = 1.0 / c;
    let off_scale = 1.0 - inv * inv;
    let zero = CMatrix::zeros(m, m);
    let coeffs: Vec<CMatrix> = a
        .coeffs()
        .iter()
        .enumerate()
        .map(|(k, ak)| {
            let diag = if k == 0 {
                CMatrix::identity(m).scale_re(inv)
            } else {
                zero.clone()
            };
            CMatrix::block2x2(&diag, &ak.scale_re(off_scale), &zero, &diag)
        })
        .collect();
    MatrixPolynomial::new(coeffs)
}

/// Model operator family `T = [[0, c], [0, 0]]` with optimal similarity
/// `diag(sqrt(c), 1/sqrt(c))`.
pub fn model_homomorphism(c: f64) -> Result<ModelHomomorphism> {
    if !(c >= 1.0) {
        return Err(Error::domain(format!("constant must be >= 1, got {c}")));
    }
    let t_model = CMatrix::from_rows(&[
        vec![Complex64::new(0.0, 0.0), Complex64::new(c, 0.0)],
        vec![Complex64::new(0.0, 0.0), Complex64::new(0.0, 0.0)],
    ])?;
    let root = c.sqrt();
    let s_opt = CMatrix::diag_real(&[root, 1.0 / root]);
    Ok(ModelHomomorphism { t_model, c, s_opt })
}

/// Convenience: evaluate a matrix polynomial through the model homomorphism
/// (coefficientwise action of `f -> f(T_model)`).
pub fn model_apply(model: &ModelHomomorphism, g: &MatrixPolynomial) -> CMatrix {
    matpoly_eval_operator(g, &model.t_model)
}

/// Block layout sanity for the witness evaluation: evaluating
/// `B(z) = [[I/c, (1-1/c^2) A(z)], [0, I/c]]` at `T` must equal
/// `[[I/c, (1-1/c^2) A-eval], [0, I/c]]` as operators up to the kron
/// interleaving. Exposed for tests.
pub fn witness_eval_direct(c: f64, t: &CMatrix) -> CMatrix {
    let n = t.rows();
    let inv = 1.0 / c;
    let eye = kron(
        &CMatrix::identity(2).scale_re(inv),
        &CMatrix::identity(n),
    );
    let off = kron(
        &CMatrix::from_real_rows(&[&[0.0, 1.0 - inv * inv], &[0.0, 0.0]]).unwrap(),
        t,
    );
    eye.add(&off)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::funcalc::mobius_eval_operator;
    use crate::linalg::operator_norm;
    use crate::similarity::{cb_to_wcb, cond, conjugate};

    #[test]
    fn drury_pair_pipeline() {
        let (t, a, expected) = drury_pair();
        assert!((numerical_radius(&t, 1e-10).value - 1.0).abs() < 1e-10);
        let img = mobius_eval_operator(a, &t).unwrap();
        let expect = CMatrix::from_real_rows(&[&[0.5, 1.5], &[0.0, 0.5]]).unwrap();
        assert!(img.sub(&expect).frobenius_norm() < 1e-12);
        let w = numerical_radius(&img, 1e-10).value;
        assert!((w - expected).abs() < 1e-9);
    }

    #[test]
    fn remark35_displayed_facts() {
        let (t, s) = remark35();
        assert!((cond(&s).unwrap() - 2.0).abs() < 1e-12);
        let conj = conjugate(&t, &s).unwrap();
        assert!((operator_norm(&conj) - 1.0).abs() < 1e-12);
        assert!((numerical_radius(&t, 1e-10).value - 1.25).abs() < 1e-9);
    }

    #[test]
    fn witness_is_normalized_and_blocked() {
        let z = MatrixPolynomial::new(vec![CMatrix::zeros(1, 1), CMatrix::identity(1)]).unwrap();
        // c = 1: off block vanishes, diagonal is the identity.
        let b1 = theorem23_witness(1.0, &z).unwrap();
        assert!((sup_norm_disc(&b1, 4096) - 1.0).abs() < 1e-9);
        assert!(b1.coeffs()[1].max_abs() < 1e-15);

        // c = 2: B(z) = [[1/2, 3/4 z], [0, 1/2]].
        let b2 = theorem23_witness(2.0, &z).unwrap();
        assert!((b2.coeffs()[0][(0, 0)].re - 0.5).abs() < 1e-15);
        assert!((b2.coeffs()[1][(0, 1)].re - 0.75).abs() < 1e-15);
        assert!((sup_norm_disc(&b2, 4096) - 1.0).abs() < 1e-9);

        assert!(theorem23_witness(0.5, &z).is_err());
        let unnormalized =
            MatrixPolynomial::new(vec![CMatrix::zeros(1, 1), CMatrix::identity(1).scale_re(2.0)])
                .unwrap();
        assert!(matches!(
            theorem23_witness(2.0, &unnormalized),
            Err(Error::UnnormalizedA { .. })
        ));
    }

    #[test]
    fn model_constants_match_closed_form() {
        for c in [1.0, 2.0, 5.0] {
            let model = model_homomorphism(c).unwrap();
            assert!((cond(&model.s_opt).unwrap() - c).abs() < 1e-10);
            let conj = conjugate(&model.t_model, &model.s_opt).unwrap();
            assert!((operator_norm(&conj) - 1.0).abs() < 1e-10);
            let measured = model.witness_value();
            let exact = model.wcb_exact();
            assert!(
                (measured - exact).abs() < 1e-8,
                "c={c} measured={measured} exact={exact}"
            );
            assert!((exact - cb_to_wcb(c).unwrap()).abs() < 1e-15);
        }
    }

    #[test]
    fn witness_evaluation_matches_direct_block_assembly() {
        let model = model_homomorphism(2.0).unwrap();
        let eval = matpoly_eval_operator(&model.witness_polynomial(), &model.t_model);
        let direct = witness_eval_direct(2.0, &model.t_model);
        assert!(eval.sub(&direct).frobenius_norm() < 1e-12);
        // w = 1/2 + (3/4) * 2 / 2 = 5/4 by the closed form.
        assert!((numerical_radius(&eval, 1e-10).value - 1.25).abs() < 1e-9);
    }
}
