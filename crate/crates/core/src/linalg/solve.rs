//! LU factorization with partial pivoting and linear solves.

use num_complex::Complex64;

use crate::cmatrix::CMatrix;
use crate::error::{Error, Result};

/// Relative pivot tolerance: pivots below `1e-12 * ||A||_F` are singular.
const PIVOT_REL_TOL: f64 = 1e-12;

pub struct LuFactor {
    lu: CMatrix,
    perm: Vec<usize>,
}

impl LuFactor {
    pub fn new(a: &CMatrix) -> Result<Self> {
        let n = a.require_square()?;
        if !a.is_finite() {
            return Err(Error::NonFinite);
        }
        let scale = a.frobenius_norm().max(1e-300);
        let tol = PIVOT_REL_TOL * scale;

        let mut lu = a.clone();
        let mut perm: Vec<usize> = (0..n).collect();
        for k in 0..n {
            let mut pivot_row = k;
            let mut pivot_mag = lu[(k, k)].norm();
            for i in (k + 1)..n {
                let mag = lu[(i, k)].norm();
                if mag > pivot_mag {
                    pivot_mag = mag;
                    pivot_row = i;
                }
            }
            if pivot_mag < tol {
                return Err(Error::SingularMatrix { pivot: pivot_mag });
            }
            if pivot_row != k {
                for j in 0..n {
                    let tmp = lu[(k, j)];
                    lu[(k, j)] = lu[(pivot_row, j)];
                    lu[(pivot_row, j)] = tmp;
                }
                perm.swap(k, pivot_row);
            }
            let inv_pivot = Complex64::new(1.0, 0.0) / lu[(k, k)];
            for i in (k + 1)..n {
                let factor = lu[(i, k)] * inv_pivot;
                lu[(i, k)] = factor;
                for j in (k + 1)..n {
                    let sub = factor * lu[(k, j)];
                    lu[(i, j)] -= sub;
                }
            }
        }
        Ok(LuFactor { lu, perm })
    }

    /// Solve `A X = Y` for all columns of `Y`.
    pub fn solve(&self, y: &CMatrix) -> CMatrix {
        let n = self.lu.rows();
        assert_eq!(y.rows(), n, "right-hand side row mismatch");
        let m = y.cols();
        let mut x = CMatrix::zeros(n, m);
        let mut col = vec![Complex64::new(0.0, 0.0); n];
        for j in 0..m {
            for i in 0..n {
                col[i] = y[(self.perm[i], j)];
            }
            // Forward substitution with unit lower triangle.
            for i in 1..n {
                let mut acc = col[i];
                for k in 0..i {
                    acc -= self.lu[(i, k)] * col[k];
                }
                col[i] = acc;
            }
            // Back substitution.
            for i in (0..n).rev() {
                let mut acc = col[i];
                for k in (i + 1)..n {
                    acc -= self.lu[(i, k)] * col[k];
                }
                col[i] = acc / self.lu[(i, i)];
            }
            for i in 0..n {
                x[(i, j)] = col[i];
            }
        }
        x
    }
}

/// Solve `A X = Y` by pivoted elimination with one step of iterative
/// refinement.
pub fn solve(a: &CMatrix, y: &CMatrix) -> Result<CMatrix> {
    let n = a.require_square()?;
    if y.rows() != n {
        return Err(Error::dim(format!(
            "solve: A is {}x{} but Y has {} rows",
            n,
            n,
            y.rows()
        )));
    }
    let factor = LuFactor::new(a)?;
    let mut x = factor.solve(y);
    let residual = y.sub(&a.matmul(&x));
    let correction = factor.solve(&residual);
    x = x.add(&correction);
    Ok(x)
}

/// Matrix inverse via `solve(A, I)`.
pub fn inverse(a: &CMatrix) -> Result<CMatrix> {
    let n = a.require_square()?;
    solve(a, &CMatrix::identity(n))
}
