//! Scalar golden-section maximization on a bracket.

const INV_PHI: f64 = 0.618_033_988_749_894_9;

/// Maximize `f` on `[a, b]`, shrinking the bracket to `tol_width`.
/// Returns `(argmax, max)`. Assumes `f` is unimodal on the bracket; on
/// multimodal brackets it still returns a local maximum no worse than the
/// better of the two inner probes.
pub(crate) fn golden_max(f: impl Fn(f64) -> f64, a: f64, b: f64, tol_width: f64) -> (f64, f64) {
    let (mut lo, mut hi) = (a, b);
    let mut x1 = hi - INV_PHI * (hi - lo);
    let mut x2 = lo + INV_PHI * (hi - lo);
    let mut f1 = f(x1);
    let mut f2 = f(x2);
    while hi - lo > tol_width {
        if f1 >= f2 {
            hi = x2;
            x2 = x1;
            f2 = f1;
            x1 = hi - INV_PHI * (hi - lo);
            f1 = f(x1);
        } else {
            lo = x1;
            x1 = x2;
            f1 = f2;
            x2 = lo + INV_PHI * (hi - lo);
            f2 = f(x2);
        }
    }
    if f1 >= f2 {
        (x1, f1)
    } else {
        (x2, f2)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn finds_parabola_peak() {
        let (x, v) = golden_max(|x| 1.0 - (x - 0.3) * (x - 0.3), -1.0, 1.0, 1e-12);
        assert!((x - 0.3).abs() < 1e-6);
        assert!((v - 1.0).abs() < 1e-12);
    }

    #[test]
    fn finds_cosine_peak_off_center() {
        let (x, v) = golden_max(|x| (x - 1.234).cos(), 0.0, 2.0, 1e-12);
        assert!((x - 1.234).abs() < 1e-6);
        assert!((v - 1.0).abs() < 1e-12);
    }
}
