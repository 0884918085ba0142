//! Counter-based pseudo-random generator and matrix ensembles.
//!
//! The generator is SplitMix64: output `k` for seed `s` is
//! `mix64(s + (k+1) * 0x9E3779B97F4A7C15)` where `mix64` is the finalizer
//! `z ^= z >> 30; z *= 0xBF58476D1CE4E5B9; z ^= z >> 27;
//!  z *= 0x94D049BB133111EB; z ^= z >> 31`.
//! Being a pure function of `(seed, counter)` it reproduces across
//! implementations and is safe to split per trial: trial `i` of a suite with
//! seed `s` uses the stream seeded by `mix64(s ^ mix64(i + 1))`.

use num_complex::Complex64;

use crate::cmatrix::CMatrix;

const GAMMA: u64 = 0x9E37_79B9_7F4A_7C15;

#[inline]
pub fn mix64(mut z: u64) -> u64 {
    z ^= z >> 30;
    z = z.wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z ^= z >> 27;
    z = z.wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^= z >> 31;
    z
}

/// SplitMix64 stream: a seed plus a counter.
#[derive(Clone, Debug)]
pub struct CounterRng {
    seed: u64,
    counter: u64,
}

impl CounterRng {
    pub fn new(seed: u64) -> Self {
        CounterRng { seed, counter: 0 }
    }

    /// Independent stream for trial `index`, derived only from `(seed, index)`.
    pub fn substream(seed: u64, index: u64) -> Self {
        CounterRng::new(mix64(seed ^ mix64(index.wrapping_add(1))))
    }

    #[inline]
    pub fn next_u64(&mut self) -> u64 {
        self.counter = self.counter.wrapping_add(1);
        mix64(self.seed.wrapping_add(self.counter.wrapping_mul(GAMMA)))
    }

    /// Uniform in `[0, 1)` with 53 bits of precision.
    #[inline]
    pub fn uniform(&mut self) -> f64 {
        (self.next_u64() >> 11) as f64 * (1.0 / (1u64 << 53) as f64)
    }

    /// Uniform integer in `[0, n)`.
    pub fn below(&mut self, n: u64) -> u64 {
        assert!(n > 0);
        // Modulo bias is < 2^-53 for the n used here (small ranges).
        self.next_u64() % n
    }

    /// Standard normal pair via Box-Muller.
    pub fn gaussian_pair(&mut self) -> (f64, f64) {
        let u1 = 1.0 - self.uniform(); // (0, 1]
        let u2 = self.uniform();
        let r = (-2.0 * u1.ln()).sqrt();
        let phi = std::f64::consts::TAU * u2;
        (r * phi.cos(), r * phi.sin())
    }

    /// Complex Gaussian with independent unit-variance real and imaginary parts.
    pub fn complex_gaussian(&mut self) -> Complex64 {
        let (re, im) = self.gaussian_pair();
        Complex64::new(re, im)
    }

    /// Matrix of independent complex Gaussian entries.
    pub fn matrix(&mut self, rows: usize, cols: usize) -> CMatrix {
        let mut m = CMatrix::zeros(rows, cols);
        for i in 0..rows {
            for j in 0..cols {
                m[(i, j)] = self.complex_gaussian();
            }
        }
        m
    }

    /// Random Hermitian matrix `(G + G*)/2` from a Gaussian `G`.
    pub fn hermitian(&mut self, n: usize) -> CMatrix {
        self.matrix(n, n).hermitian_part()
    }

    /// Haar-like unitary: Gram-Schmidt of a Gaussian matrix, orthogonalized
    /// twice for stability.
    pub fn unitary(&mut self, n: usize) -> CMatrix {
        let g = self.matrix(n, n);
        let mut cols: Vec<Vec<Complex64>> = (0..n)
            .map(|j| (0..n).map(|i| g[(i, j)]).collect())
            .collect();
        for _pass in 0..2 {
            for j in 0..n {
                for k in 0..j {
                    let proj = crate::cmatrix::dotc(&cols[k], &cols[j]);
                    for i in 0..n {
                        let c = cols[k][i];
                        cols[j][i] -= proj * c;
                    }
                }
                let norm = crate::cmatrix::vec_norm(&cols[j]);
                assert!(norm > 1e-12, "degenerate Gaussian draw");
                for e in cols[j].iter_mut() {
                    *e /= norm;
                }
            }
        }
        let mut u = CMatrix::zeros(n, n);
        for j in 0..n {
            for i in 0..n {
                u[(i, j)] = cols[j][i];
            }
        }
        u
    }

    /// Normal matrix `U diag(values) U*` with the given eigenvalues.
    pub fn normal_with_eigenvalues(&mut self, values: &[Complex64]) -> CMatrix {
        let u = self.unitary(values.len());
        u.matmul(&CMatrix::diag(values)).matmul(&u.adjoint())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cmatrix::dotc;

    #[test]
    fn streams_are_deterministic() {
        let mut a = CounterRng::new(42);
        let mut b = CounterRng::new(42);
        for _ in 0..100 {
            assert_eq!(a.next_u64(), b.next_u64());
        }
        let mut s1 = CounterRng::substream(42, 7);
        let mut s2 = CounterRng::substream(42, 8);
        assert_ne!(s1.next_u64(), s2.next_u64());
    }

    #[test]
    fn uniform_in_range() {
        let mut rng = CounterRng::new(1);
        for _ in 0..1000 {
            let x = rng.uniform();
            assert!((0.0..1.0).contains(&x));
        }
    }

    #[test]
    fn gaussian_moments_are_sane() {
        let mut rng = CounterRng::new(3);
        let n = 20_000;
        let mut sum = 0.0;
        let mut sumsq = 0.0;
        for _ in 0..n {
            let (x, y) = rng.gaussian_pair();
            sum += x + y;
            sumsq += x * x + y * y;
        }
        let mean = sum / (2 * n) as f64;
        let var = sumsq / (2 * n) as f64;
        assert!(mean.abs() < 0.02, "mean {mean}");
        assert!((var - 1.0).abs() < 0.05, "var {var}");
    }

    #[test]
    fn unitary_is_unitary() {
        let mut rng = CounterRng::new(9);
        for n in [1, 2, 5, 8] {
            let u = rng.unitary(n);
            let prod = u.adjoint().matmul(&u);
            let defect = prod.sub(&CMatrix::identity(n)).frobenius_norm();
            assert!(defect < 1e-12, "n={n} defect={defect}");
        }
    }

    #[test]
    fn normal_matrix_has_prescribed_diagonalization() {
        let mut rng = CounterRng::new(11);
        let vals = [
            Complex64::new(1.0, 0.0),
            Complex64::new(-0.5, 2.0),
            Complex64::new(0.0, -1.0),
        ];
        let t = rng.normal_with_eigenvalues(&vals);
        // Normality: T T* = T* T.
        let d = t.matmul(&t.adjoint()).sub(&t.adjoint().matmul(&t));
        assert!(d.frobenius_norm() < 1e-12);
        // Trace equals the eigenvalue sum.
        let tr = t.trace();
        let expect: Complex64 = vals.iter().sum();
        assert!((tr - expect).norm() < 1e-12);
        let _ = dotc(&[Complex64::new(1.0, 0.0)], &[Complex64::new(1.0, 0.0)]);
    }
}
