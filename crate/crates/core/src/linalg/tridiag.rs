//! Householder tridiagonalization and Sturm-sequence bisection.
//!
//! This is the value-only fast path for extreme eigenvalues of Hermitian
//! matrices: angle sweeps and sampled sup norms call it thousands of times
//! and never need eigenvectors. The full Jacobi solver remains the source
//! of eigenvectors and the cross-check oracle.

use num_complex::Complex64;

use crate::cmatrix::CMatrix;

/// Real symmetric tridiagonal form of a Hermitian matrix (unitarily
/// equivalent, so the spectrum is identical).
#[derive(Debug, Clone)]
pub struct Tridiagonal {
    pub diag: Vec<f64>,
    pub off: Vec<f64>, // off[i] couples i and i+1; length n-1, nonnegative
}

/// Reduce the Hermitian part of `h` to real symmetric tridiagonal form.
pub fn tridiagonalize(h: &CMatrix) -> Tridiagonal {
    let n = h.rows();
    debug_assert!(h.is_square());
    let mut a = h.hermitian_part();

    for k in 0..n.saturating_sub(2) {
        let m = n - k - 1; // length of the column below the diagonal
        let mut xnorm_sq = 0.0;
        for i in 0..m {
            xnorm_sq += a[(k + 1 + i, k)].norm_sqr();
        }
        let xnorm = xnorm_sq.sqrt();
        if xnorm < 1e-300 {
            continue;
        }
        let x0 = a[(k + 1, k)];
        let phase = if x0.norm() > 0.0 {
            x0 / x0.norm()
        } else {
            Complex64::new(1.0, 0.0)
        };
        let alpha = -phase * xnorm;

        // Householder vector v = x - alpha e1.
        let mut v = vec![Complex64::new(0.0, 0.0); m];
        for i in 0..m {
            v[i] = a[(k + 1 + i, k)];
        }
        v[0] -= alpha;
        let vv: f64 = v.iter().map(|e| e.norm_sqr()).sum();
        if vv < 1e-300 {
            continue;
        }
        let beta = 2.0 / vv;

        // p = beta * S v on the trailing block S = a[k+1.., k+1..].
        let mut p = vec![Complex64::new(0.0, 0.0); m];
        for i in 0..m {
            let mut acc = Complex64::new(0.0, 0.0);
            for j in 0..m {
                acc += a[(k + 1 + i, k + 1 + j)] * v[j];
            }
            p[i] = acc * beta;
        }
        // w = p - (beta/2) (v* p) v ; v* S v is real so v* p is real.
        let vp: Complex64 = v.iter().zip(&p).map(|(vi, pi)| vi.conj() * pi).sum();
        let kappa = 0.5 * beta * vp.re;
        let mut w = p;
        for i in 0..m {
            w[i] -= kappa * v[i];
        }
        // S <- S - v w* - w v*.
        for i in 0..m {
            for j in 0..m {
                let delta = v[i] * w[j].conj() + w[i] * v[j].conj();
                a[(k + 1 + i, k + 1 + j)] -= delta;
            }
            let d = a[(k + 1 + i, k + 1 + i)];
            a[(k + 1 + i, k + 1 + i)] = Complex64::new(d.re, 0.0);
        }
        a[(k + 1, k)] = alpha;
        a[(k, k + 1)] = alpha.conj();
        for i in 1..m {
            a[(k + 1 + i, k)] = Complex64::new(0.0, 0.0);
            a[(k, k + 1 + i)] = Complex64::new(0.0, 0.0);
        }
    }

    // Phase-scale the subdiagonal onto the nonnegative real axis.
    let diag: Vec<f64> = (0..n).map(|i| a[(i, i)].re).collect();
    let off: Vec<f64> = (0..n.saturating_sub(1)).map(|i| a[(i + 1, i)].norm()).collect();
    Tridiagonal { diag, off }
}

impl Tridiagonal {
    fn pivmin(&self) -> f64 {
        let max_off_sq = self
            .off
            .iter()
            .map(|b| b * b)
            .fold(0.0f64, f64::max);
        f64::MIN_POSITIVE * (1.0 + max_off_sq)
    }

    /// Number of eigenvalues strictly below `x` (Sturm count via LDL).
    pub fn count_below(&self, x: f64) -> usize {
        let n = self.diag.len();
        let pivmin = self.pivmin();
        let mut count = 0;
        let mut q = self.diag[0] - x;
        if q.abs() < pivmin {
            q = -pivmin;
        }
        if q < 0.0 {
            count += 1;
        }
        for i in 1..n {
            q = self.diag[i] - x - self.off[i - 1] * self.off[i - 1] / q;
            if q.abs() < pivmin {
                q = -pivmin;
            }
            if q < 0.0 {
                count += 1;
            }
        }
        count
    }

    fn gershgorin(&self) -> (f64, f64) {
        let n = self.diag.len();
        let mut lo = f64::INFINITY;
        let mut hi = f64::NEG_INFINITY;
        for i in 0..n {
            let left = if i > 0 { self.off[i - 1] } else { 0.0 };
            let right = if i < n - 1 { self.off[i] } else { 0.0 };
            let r = left + right;
            lo = lo.min(self.diag[i] - r);
            hi = hi.max(self.diag[i] + r);
        }
        (lo, hi)
    }

    pub fn lambda_max(&self) -> f64 {
        let n = self.diag.len();
        if n == 1 {
            return self.diag[0];
        }
        let (mut lo, mut hi) = self.gershgorin();
        let scale = lo.abs().max(hi.abs()).max(1e-300);
        for _ in 0..120 {
            if hi - lo <= 1e-15 * scale {
                break;
            }
            let mid = 0.5 * (lo + hi);
            if self.count_below(mid) == n {
                hi = mid;
            } else {
                lo = mid;
            }
        }
        0.5 * (lo + hi)
    }

    pub fn lambda_min(&self) -> f64 {
        let n = self.diag.len();
        if n == 1 {
            return self.diag[0];
        }
        let (mut lo, mut hi) = self.gershgorin();
        let scale = lo.abs().max(hi.abs()).max(1e-300);
        for _ in 0..120 {
            if hi - lo <= 1e-15 * scale {
                break;
            }
            let mid = 0.5 * (lo + hi);
            if self.count_below(mid) == 0 {
                lo = mid;
            } else {
                hi = mid;
            }
        }
        0.5 * (lo + hi)
    }
}

/// Largest eigenvalue of the Hermitian part of `h`, value only.
pub fn lambda_max_hermitian(h: &CMatrix) -> f64 {
    tridiagonalize(h).lambda_max()
}

/// Smallest eigenvalue of the Hermitian part of `h`, value only.
pub fn lambda_min_hermitian(h: &CMatrix) -> f64 {
    tridiagonalize(h).lambda_min()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::jacobi::jacobi_eig;
    use crate::rng::CounterRng;

    #[test]
    fn matches_closed_form_2x2() {
        let h = CMatrix::from_real_rows(&[&[0.0, 1.0], &[1.0, 0.0]]).unwrap();
        assert!((lambda_max_hermitian(&h) - 1.0).abs() < 1e-14);
        assert!((lambda_min_hermitian(&h) + 1.0).abs() < 1e-14);
    }

    #[test]
    fn agrees_with_jacobi_on_random_hermitians() {
        let mut rng = CounterRng::new(23);
        for n in [1, 2, 3, 5, 9, 16] {
            for _ in 0..5 {
                let h = rng.hermitian(n);
                let scale = 1.0 + h.frobenius_norm();
                let (vals, _) = jacobi_eig(&h);
                let jmax = *vals.last().unwrap();
                let jmin = vals[0];
                assert!(
                    (lambda_max_hermitian(&h) - jmax).abs() < 1e-11 * scale,
                    "n={n}"
                );
                assert!(
                    (lambda_min_hermitian(&h) - jmin).abs() < 1e-11 * scale,
                    "n={n}"
                );
            }
        }
    }

    #[test]
    fn sturm_count_is_monotone() {
        let mut rng = CounterRng::new(29);
        let h = rng.hermitian(7);
        let t = tridiagonalize(&h);
        let (lo, hi) = (t.lambda_min() - 1.0, t.lambda_max() + 1.0);
        let mut prev = 0;
        for k in 0..=40 {
            let x = lo + (hi - lo) * k as f64 / 40.0;
            let c = t.count_below(x);
            assert!(c >= prev);
            prev = c;
        }
        assert_eq!(prev, 7);
    }
}
