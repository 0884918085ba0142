//! Dependency-light dense complex linear algebra kernel.
//!
//! Everything here is a pure function of its inputs. Eigenvector-bearing
//! operations go through the cyclic Jacobi solver; value-only extreme
//! eigenvalues go through Householder tridiagonalization plus Sturm
//! bisection, which is an order of magnitude cheaper inside angle sweeps.
//! The two paths cross-check each other in the property tests.

pub mod jacobi;
pub mod solve;
pub mod tridiag;

use num_complex::Complex64;

use crate::cmatrix::CMatrix;
use crate::error::{Error, Result};

pub use jacobi::{jacobi_eig, jacobi_eig_with_basis};
pub use solve::{inverse, solve, LuFactor};
pub use tridiag::{lambda_max_hermitian, lambda_min_hermitian, tridiagonalize, Tridiagonal};

/// Largest eigenvalue of a Hermitian matrix together with a unit eigenvector.
#[derive(Debug, Clone)]
pub struct EigenPair {
    pub value: f64,
    pub vector: Vec<Complex64>,
}

fn validate_square_finite(h: &CMatrix) -> Result<usize> {
    let n = h.require_square()?;
    if !h.is_finite() {
        return Err(Error::NonFinite);
    }
    Ok(n)
}

/// Largest eigenvalue and eigenvector of the Hermitian part of `h`.
///
/// The input is symmetrized internally, so callers may pass matrices that
/// are Hermitian only up to roundoff.
pub fn herm_eig_max(h: &CMatrix) -> Result<EigenPair> {
    let n = validate_square_finite(h)?;
    let (values, vectors) = jacobi_eig(h);
    let vector = (0..n).map(|i| vectors[(i, n - 1)]).collect();
    Ok(EigenPair {
        value: values[n - 1],
        vector,
    })
}

/// Full Hermitian eigendecomposition, eigenvalues ascending.
pub fn herm_eig(h: &CMatrix) -> Result<(Vec<f64>, CMatrix)> {
    validate_square_finite(h)?;
    Ok(jacobi_eig(h))
}

/// Smallest eigenvalue of a Hermitian matrix. Callers judge `M >= 0` via
/// `psd_min_eig(M) >= -tol`.
pub fn psd_min_eig(m: &CMatrix) -> Result<f64> {
    validate_square_finite(m)?;
    let (values, _) = jacobi_eig(m);
    Ok(values[0])
}

/// Operator norm (largest singular value), zero for the zero matrix.
pub fn operator_norm(a: &CMatrix) -> f64 {
    if a.max_abs() == 0.0 {
        return 0.0;
    }
    // Form the Gram matrix on the smaller side.
    let gram = if a.rows() <= a.cols() {
        a.matmul(&a.adjoint())
    } else {
        a.adjoint().matmul(a)
    };
    lambda_max_hermitian(&gram).max(0.0).sqrt()
}

/// Kronecker product; block `(i, j)` of the result equals `A[i,j] * B`.
pub fn kron(a: &CMatrix, b: &CMatrix) -> CMatrix {
    let (ra, ca) = (a.rows(), a.cols());
    let (rb, cb) = (b.rows(), b.cols());
    let mut out = CMatrix::zeros(ra * rb, ca * cb);
    for i1 in 0..ra {
        for j1 in 0..ca {
            let f = a[(i1, j1)];
            if f.re == 0.0 && f.im == 0.0 {
                continue;
            }
            for i2 in 0..rb {
                for j2 in 0..cb {
                    out[(i1 * rb + i2, j1 * cb + j2)] = f * b[(i2, j2)];
                }
            }
        }
    }
    out
}

/// Hermitian square root via eigendecomposition; clamps tiny negative
/// eigenvalues to zero.
pub fn herm_sqrt(h: &CMatrix) -> Result<CMatrix> {
    let n = validate_square_finite(h)?;
    let (values, v) = jacobi_eig(h);
    let roots: Vec<f64> = values.iter().map(|&x| x.max(0.0).sqrt()).collect();
    let mut out = CMatrix::zeros(n, n);
    for i in 0..n {
        for j in 0..n {
            let mut acc = Complex64::new(0.0, 0.0);
            for k in 0..n {
                acc += v[(i, k)] * roots[k] * v[(j, k)].conj();
            }
            out[(i, j)] = acc;
        }
    }
    Ok(out.hermitian_part())
}

/// Projection of the Hermitian part of `m` onto the positive semidefinite
/// cone (eigenvalue clamping), using `basis` as the starting Jacobi basis.
/// Returns the projection, the eigenvector basis (whose columns match the
/// returned eigenvalues, unsorted), and the eigenvalues. The basis
/// warm-starts the next projection of a nearby matrix.
pub fn psd_project_warm_full(m: &CMatrix, basis: &CMatrix) -> (CMatrix, CMatrix, Vec<f64>) {
    let n = m.rows();
    let (values, v) = jacobi_eig_with_basis(m, basis);
    let mut out = CMatrix::zeros(n, n);
    for k in 0..n {
        let lam = values[k];
        if lam <= 0.0 {
            continue;
        }
        for i in 0..n {
            let vik = v[(i, k)] * lam;
            for j in 0..n {
                out[(i, j)] += vik * v[(j, k)].conj();
            }
        }
    }
    (out.hermitian_part(), v, values)
}

/// [`psd_project_warm_full`] without the eigenvalues.
pub fn psd_project_warm(m: &CMatrix, basis: &CMatrix) -> (CMatrix, CMatrix) {
    let (out, v, _) = psd_project_warm_full(m, basis);
    (out, v)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cmatrix::vec_norm;
    use crate::rng::CounterRng;

    #[test]
    fn eig_max_of_diagonal() {
        let h = CMatrix::diag_real(&[1.0, 2.0, 3.0]);
        let pair = herm_eig_max(&h).unwrap();
        assert!((pair.value - 3.0).abs() < 1e-14);
        assert!((pair.vector[2].norm() - 1.0).abs() < 1e-12);
        assert!(pair.vector[0].norm() < 1e-12 && pair.vector[1].norm() < 1e-12);
    }

    #[test]
    fn eig_max_of_symmetric_flip() {
        let h = CMatrix::from_real_rows(&[&[0.0, 1.0], &[1.0, 0.0]]).unwrap();
        let pair = herm_eig_max(&h).unwrap();
        assert!((pair.value - 1.0).abs() < 1e-14);
        let inv_sqrt2 = 1.0 / 2.0f64.sqrt();
        assert!((pair.vector[0].norm() - inv_sqrt2).abs() < 1e-10);
        assert!((pair.vector[1].norm() - inv_sqrt2).abs() < 1e-10);
    }

    #[test]
    fn eig_max_rejects_bad_input() {
        let rect = CMatrix::zeros(2, 3);
        assert!(matches!(herm_eig_max(&rect), Err(Error::NonSquare { .. })));
    }

    #[test]
    fn eigenpair_residual_is_tiny() {
        let mut rng = CounterRng::new(31);
        for _ in 0..10 {
            let h = rng.hermitian(6);
            let pair = herm_eig_max(&h).unwrap();
            assert!((vec_norm(&pair.vector) - 1.0).abs() < 1e-12);
            let hv = h.matvec(&pair.vector);
            let residual: f64 = hv
                .iter()
                .zip(&pair.vector)
                .map(|(a, b)| (a - b * pair.value).norm_sqr())
                .sum::<f64>()
                .sqrt();
            assert!(residual < 1e-9 * (1.0 + h.frobenius_norm()));
        }
    }

    #[test]
    fn operator_norm_examples() {
        let t = CMatrix::from_real_rows(&[&[0.0, 2.0], &[0.0, 0.0]]).unwrap();
        assert!((operator_norm(&t) - 2.0).abs() < 1e-12);

        let mut rng = CounterRng::new(37);
        let u = rng.unitary(5);
        assert!((operator_norm(&u) - 1.0).abs() < 1e-12);

        // ||[[1/2, 3/4], [0, 1/2]]|| = 1.
        let b = CMatrix::from_real_rows(&[&[0.5, 0.75], &[0.0, 0.5]]).unwrap();
        assert!((operator_norm(&b) - 1.0).abs() < 1e-12);

        assert_eq!(operator_norm(&CMatrix::zeros(3, 2)), 0.0);
    }

    #[test]
    fn kron_examples() {
        let mut rng = CounterRng::new(41);
        let b = rng.matrix(2, 2);
        let block_diag = kron(&CMatrix::identity(2), &b);
        assert_eq!(block_diag.block(0, 0, 2, 2), b);
        assert_eq!(block_diag.block(2, 2, 2, 2), b);
        assert!(block_diag.block(0, 2, 2, 2).max_abs() == 0.0);

        let a = rng.matrix(3, 2);
        let one = CMatrix::identity(1);
        assert_eq!(kron(&a, &one), a);
    }

    #[test]
    fn psd_min_eig_examples() {
        assert!((psd_min_eig(&CMatrix::diag_real(&[0.0, 1.0])).unwrap()).abs() < 1e-14);
        let m = CMatrix::from_real_rows(&[
            &[2.0, 0.0, 0.0, 2.0],
            &[0.0, 0.0, 0.0, 0.0],
            &[0.0, 0.0, 0.0, 0.0],
            &[2.0, 0.0, 0.0, 2.0],
        ])
        .unwrap();
        assert!(psd_min_eig(&m).unwrap().abs() < 1e-12);
        let ind = CMatrix::from_real_rows(&[&[1.0, 2.0], &[2.0, 1.0]]).unwrap();
        assert!((psd_min_eig(&ind).unwrap() + 1.0).abs() < 1e-12);
    }

    #[test]
    fn herm_sqrt_squares_back() {
        let mut rng = CounterRng::new(43);
        let g = rng.matrix(4, 4);
        let psd = g.adjoint().matmul(&g);
        let root = herm_sqrt(&psd).unwrap();
        let err = root.matmul(&root).sub(&psd).frobenius_norm();
        assert!(err < 1e-10 * (1.0 + psd.frobenius_norm()));
    }

    #[test]
    fn psd_projection_is_psd_and_idempotent() {
        let mut rng = CounterRng::new(47);
        let h = rng.hermitian(5);
        let eye = CMatrix::identity(5);
        let (proj, basis) = psd_project_warm(&h, &eye);
        assert!(psd_min_eig(&proj).unwrap() > -1e-11);
        let (proj2, _) = psd_project_warm(&proj, &basis);
        assert!(proj2.sub(&proj).frobenius_norm() < 1e-10);
    }
}
