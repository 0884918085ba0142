//! Cyclic Jacobi eigensolver for complex Hermitian matrices.
//!
//! Rotations are two-sided unitary Givens transforms with a phase factor
//! absorbing the argument of the pivot entry. Sweeps run until the
//! off-diagonal Frobenius mass drops below `1e-13 * ||H||_F` (with an
//! absolute floor guarding the zero matrix).

use num_complex::Complex64;

use crate::cmatrix::CMatrix;

const REL_TOL: f64 = 1e-13;
const ABS_FLOOR: f64 = 1e-300;
const MAX_SWEEPS: usize = 100;

fn off_diag_mass(a: &CMatrix) -> f64 {
    let n = a.rows();
    let mut acc = 0.0;
    for p in 0..n {
        for q in (p + 1)..n {
            acc += 2.0 * a[(p, q)].norm_sqr();
        }
    }
    acc.sqrt()
}

/// Diagonalize the Hermitian part of `h`, starting the accumulated basis at
/// `basis` (pass the identity for a cold start). Returns unsorted
/// eigenvalues on the diagonal order and the unitary `V` with `H = V D V*`.
pub fn jacobi_eig_with_basis(h: &CMatrix, basis: &CMatrix) -> (Vec<f64>, CMatrix) {
    let n = h.rows();
    debug_assert!(h.is_square());
    debug_assert_eq!(basis.rows(), n);

    // Rotate into the starting basis; for a warm start this leaves a nearly
    // diagonal matrix and the sweep count collapses.
    let mut a = if basis == &CMatrix::identity(n) {
        h.hermitian_part()
    } else {
        basis.adjoint().matmul(h).matmul(basis).hermitian_part()
    };
    let mut v = basis.clone();

    let scale = a.frobenius_norm();
    let tol = (REL_TOL * scale).max(ABS_FLOOR);

    for _sweep in 0..MAX_SWEEPS {
        if off_diag_mass(&a) <= tol {
            break;
        }
        for p in 0..n {
            for q in (p + 1)..n {
                let apq = a[(p, q)];
                let r = apq.norm();
                if r <= ABS_FLOOR {
                    continue;
                }
                let w = apq / r; // e^{i phi}
                let app = a[(p, p)].re;
                let aqq = a[(q, q)].re;
                let tau = (aqq - app) / (2.0 * r);
                let t = if tau == 0.0 {
                    1.0
                } else {
                    tau.signum() / (tau.abs() + (1.0 + tau * tau).sqrt())
                };
                let c = 1.0 / (1.0 + t * t).sqrt();
                let s = t * c;
                let sw = w * s; // s * e^{i phi}
                let swc = w.conj() * s; // s * e^{-i phi}

                // Columns p, q for rows outside the pivot pair; rows mirror
                // by Hermitian symmetry.
                for k in 0..n {
                    if k == p || k == q {
                        continue;
                    }
                    let tp = a[(k, p)];
                    let tq = a[(k, q)];
                    let np = tp * c - tq * swc;
                    let nq = tp * sw + tq * c;
                    a[(k, p)] = np;
                    a[(k, q)] = nq;
                    a[(p, k)] = np.conj();
                    a[(q, k)] = nq.conj();
                }
                // Pivot block in closed form; the rotation zeroes (p, q).
                let two_csr = 2.0 * c * s * r;
                a[(p, p)] = Complex64::new(c * c * app + s * s * aqq - two_csr, 0.0);
                a[(q, q)] = Complex64::new(s * s * app + c * c * aqq + two_csr, 0.0);
                a[(p, q)] = Complex64::new(0.0, 0.0);
                a[(q, p)] = Complex64::new(0.0, 0.0);

                // Accumulate V <- V G.
                for k in 0..n {
                    let tp = v[(k, p)];
                    let tq = v[(k, q)];
                    v[(k, p)] = tp * c - tq * swc;
                    v[(k, q)] = tp * sw + tq * c;
                }
            }
        }
    }

    let values = (0..n).map(|i| a[(i, i)].re).collect();
    (values, v)
}

/// Full eigendecomposition of the Hermitian part of `h`, eigenvalues
/// ascending, eigenvectors as matching columns of the returned unitary.
pub fn jacobi_eig(h: &CMatrix) -> (Vec<f64>, CMatrix) {
    let n = h.rows();
    let (values, v) = jacobi_eig_with_basis(h, &CMatrix::identity(n));
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| values[i].partial_cmp(&values[j]).unwrap());
    let sorted: Vec<f64> = order.iter().map(|&i| values[i]).collect();
    let mut vec_sorted = CMatrix::zeros(n, n);
    for (new_col, &old_col) in order.iter().enumerate() {
        for i in 0..n {
            vec_sorted[(i, new_col)] = v[(i, old_col)];
        }
    }
    (sorted, vec_sorted)
}
