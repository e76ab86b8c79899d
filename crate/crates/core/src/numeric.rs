//! Small numeric kernels shared across the crate.

/// Golden-section search for the maximum of `f` on `[a, b]`.
///
/// Returns `(x_max, f_max)` once the bracket is narrower than `xtol`.
pub(crate) fn golden_max(f: impl Fn(f64) -> f64, mut a: f64, mut b: f64, xtol: f64) -> (f64, f64) {
    const INV_PHI: f64 = 0.618_033_988_749_894_9;
    let mut x1 = b - INV_PHI * (b - a);
    let mut x2 = a + INV_PHI * (b - a);
    let mut f1 = f(x1);
    let mut f2 = f(x2);
    let mut iter = 0;
    while (b - a).abs() > xtol && iter < 400 {
        if f1 > f2 {
            b = x2;
            x2 = x1;
            f2 = f1;
            x1 = b - INV_PHI * (b - a);
            f1 = f(x1);
        } else {
            a = x1;
            x1 = x2;
            f1 = f2;
            x2 = a + INV_PHI * (b - a);
            f2 = f(x2);
        }
        iter += 1;
    }
    if f1 > f2 {
        (x1, f1)
    } else {
        (x2, f2)
    }
}

/// Golden-section minimization on `[a, b]`.
pub(crate) fn golden_min(f: impl Fn(f64) -> f64, a: f64, b: f64, xtol: f64) -> (f64, f64) {
    let (x, fneg) = golden_max(|q| -f(q), a, b, xtol);
    (x, -fneg)
}

/// Bisection on a sign change of `f` over `[lo, hi]`, assuming
/// `f(lo) > 0 > f(hi)` (checked by the caller). Returns the midpoint of
/// the final bracket of width `xtol`.
pub(crate) fn bisect_descending(f: impl Fn(f64) -> f64, mut lo: f64, mut hi: f64, xtol: f64) -> f64 {
    while hi - lo > xtol {
        let mid = 0.5 * (lo + hi);
        if f(mid) > 0.0 {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    0.5 * (lo + hi)
}

/// Central-difference first derivative with step `h`.
pub(crate) fn central_diff(f: impl Fn(f64) -> f64, x: f64, h: f64) -> f64 {
    (f(x + h) - f(x - h)) / (2.0 * h)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn golden_finds_parabola_peak() {
        let (x, v) = golden_max(|q| -(q - 0.3) * (q - 0.3), 0.0, 1.0, 1e-12);
        assert!((x - 0.3).abs() < 1e-9);
        assert!(v.abs() < 1e-15);
    }

    #[test]
    fn bisect_locates_root() {
        let r = bisect_descending(|x| 2.5 - x, 0.0, 10.0, 1e-9);
        assert!((r - 2.5).abs() < 1e-8);
    }

    #[test]
    fn central_diff_matches_analytic() {
        let d = central_diff(|x| x * x * x, 2.0, 1e-6);
        assert!((d - 12.0).abs() < 1e-5);
    }
}
