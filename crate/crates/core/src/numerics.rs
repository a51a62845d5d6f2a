//! Numerical workhorses: adaptive quadrature, the Lobachevsky function, and
//! the two ideal-solid volume constants everything else is measured in.

use std::f64::consts::PI;
use std::sync::LazyLock;

/// Adaptive Simpson quadrature with Richardson extrapolation. The tolerance
/// is an absolute target for the whole interval; panels split until the
/// local Simpson discrepancy is within budget.
pub fn adaptive_simpson<F: Fn(f64) -> f64>(f: F, a: f64, b: f64, tol: f64) -> f64 {
    fn simpson(fa: f64, fm: f64, fb: f64, a: f64, b: f64) -> f64 {
        (b - a) / 6.0 * (fa + 4.0 * fm + fb)
    }
    #[allow(clippy::too_many_arguments)]
    fn split<F: Fn(f64) -> f64>(
        f: &F,
        a: f64,
        b: f64,
        fa: f64,
        fm: f64,
        fb: f64,
        whole: f64,
        tol: f64,
        depth: u32,
    ) -> f64 {
        let m = 0.5 * (a + b);
        let flm = f(0.5 * (a + m));
        let frm = f(0.5 * (m + b));
        let left = simpson(fa, flm, fm, a, m);
        let right = simpson(fm, frm, fb, m, b);
        let delta = left + right - whole;
        if depth == 0 || delta.abs() <= 15.0 * tol {
            left + right + delta / 15.0
        } else {
            split(f, a, m, fa, flm, fm, left, 0.5 * tol, depth - 1)
                + split(f, m, b, fm, frm, fb, right, 0.5 * tol, depth - 1)
        }
    }

    if a == b {
        return 0.0;
    }
    let m = 0.5 * (a + b);
    let (fa, fm, fb) = (f(a), f(m), f(b));
    let whole = simpson(fa, fm, fb, a, b);
    split(&f, a, b, fa, fm, fb, whole, tol, 48)
}

/// The Lobachevsky function: minus the antiderivative of `log|2 sin t|`.
/// Odd, periodic with period pi, and the currency in which hyperbolic
/// volumes are paid out.
pub fn lobachevsky(theta: f64) -> f64 {
    let r = theta.rem_euclid(PI);
    if r <= 0.5 * PI {
        half_branch(r)
    } else {
        -half_branch(PI - r)
    }
}

/// Value on [0, pi/2], where the integrand is tame. Splitting off the
/// closed-form part of the singularity at 0 leaves `log(t / sin t)`, which
/// extends smoothly by 0.
fn half_branch(r: f64) -> f64 {
    if r == 0.0 {
        return 0.0;
    }
    let smooth = adaptive_simpson(
        |t| if t == 0.0 { 0.0 } else { (t / t.sin()).ln() },
        0.0,
        r,
        1e-12,
    );
    r - r * (2.0 * r).ln() + smooth
}

static TETRAHEDRON: LazyLock<f64> = LazyLock::new(|| 2.0 * lobachevsky(PI / 6.0));
static OCTAHEDRON: LazyLock<f64> = LazyLock::new(|| 8.0 * lobachevsky(PI / 4.0));

/// Volume of the regular ideal tetrahedron, about 1.0149.
pub fn ideal_tetrahedron_volume() -> f64 {
    *TETRAHEDRON
}

/// Volume of the regular ideal octahedron, about 3.6639.
pub fn ideal_octahedron_volume() -> f64 {
    *OCTAHEDRON
}

/// Bisection on a sign change. Returns the midpoint once the bracket is
/// shorter than `tol`, or `None` when `f(lo)` and `f(hi)` agree in sign.
pub fn bisect<F: Fn(f64) -> f64>(f: F, mut lo: f64, mut hi: f64, tol: f64) -> Option<f64> {
    let mut flo = f(lo);
    let fhi = f(hi);
    if flo == 0.0 {
        return Some(lo);
    }
    if fhi == 0.0 {
        return Some(hi);
    }
    if flo.signum() == fhi.signum() {
        return None;
    }
    while hi - lo > tol {
        let mid = 0.5 * (lo + hi);
        let fmid = f(mid);
        if fmid == 0.0 {
            return Some(mid);
        }
        if fmid.signum() == flo.signum() {
            lo = mid;
            flo = fmid;
        } else {
            hi = mid;
        }
    }
    Some(0.5 * (lo + hi))
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;
    use proptest::prelude::*;

    /// Independent series for the same function: half the sine series with
    /// quadratic decay. Partial sums of sin(2nt) stay below 1/|sin t|, so by
    /// Abel summation the tail after N terms is below 1/(N^2 |sin t|).
    fn lobachevsky_series(theta: f64, terms: u32) -> f64 {
        let mut sum = 0.0;
        for n in (1..=terms).rev() {
            let n = n as f64;
            sum += (2.0 * n * theta).sin() / (n * n);
        }
        0.5 * sum
    }

    #[test]
    fn simpson_is_exact_on_cubics() {
        let got = adaptive_simpson(|x| x * x * x - 2.0 * x, 0.0, 2.0, 1e-12);
        assert_abs_diff_eq!(got, 0.0, epsilon = 1e-13);
    }

    #[test]
    fn simpson_integrates_sine_over_half_period() {
        let got = adaptive_simpson(f64::sin, 0.0, PI, 1e-12);
        assert_abs_diff_eq!(got, 2.0, epsilon = 1e-11);
    }

    #[test]
    fn matches_the_sine_series() {
        for theta in [0.2, PI / 6.0, PI / 4.0, 1.0, 1.5] {
            let oracle = lobachevsky_series(theta, 200_000);
            assert_abs_diff_eq!(lobachevsky(theta), oracle, epsilon = 1e-8);
        }
    }

    #[test]
    fn vanishes_at_multiples_of_half_pi() {
        for theta in [0.0, PI / 2.0, PI, -PI / 2.0, 3.0 * PI] {
            assert_abs_diff_eq!(lobachevsky(theta), 0.0, epsilon = 1e-11);
        }
    }

    #[test]
    fn doubling_identity_holds() {
        for theta in [0.1, 0.3, PI / 5.0, 0.7, 1.2] {
            let lhs = lobachevsky(2.0 * theta);
            let rhs = 2.0 * lobachevsky(theta) - 2.0 * lobachevsky(PI / 2.0 - theta);
            assert_abs_diff_eq!(lhs, rhs, epsilon = 1e-10);
        }
    }

    #[test]
    fn ideal_solid_volumes_match_pinned_values() {
        // 2 L(pi/6) and 8 L(pi/4) = 4 * Catalan.
        assert_abs_diff_eq!(ideal_tetrahedron_volume(), 1.0149416064096536, epsilon = 1e-9);
        assert_abs_diff_eq!(ideal_octahedron_volume(), 3.6638623767088760, epsilon = 1e-9);
    }

    #[test]
    fn bisect_finds_the_root_and_rejects_bad_brackets() {
        let root = bisect(|x| x * x - 2.0, 0.0, 2.0, 1e-13).unwrap();
        assert_abs_diff_eq!(root, 2f64.sqrt(), epsilon = 1e-12);
        assert!(bisect(|x| x * x + 1.0, -1.0, 1.0, 1e-13).is_none());
    }

    proptest! {
        #[test]
        fn odd_periodic_and_equal_to_the_series(theta in -9.0f64..9.0) {
            let v = lobachevsky(theta);
            prop_assert!((lobachevsky(theta + PI) - v).abs() < 1e-10);
            prop_assert!((lobachevsky(-theta) + v).abs() < 1e-10);

            // The series tail bound needs sin(theta) away from zero.
            let r = theta.rem_euclid(PI);
            if r > 0.05 && r < PI - 0.05 {
                let oracle = lobachevsky_series(theta, 100_000);
                prop_assert!((v - oracle).abs() < 1e-8);
            }
        }
    }
}
