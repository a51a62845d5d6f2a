//! The two one-parameter cube families every Coxeter prism decomposes into.
//!
//! A basic n-prism cuts along planes through its distinguished vertical edge
//! into cubes of two shapes: `C1(mu)`, a Lambert cube whose two pi/3 edges
//! are non-adjacent, and `C2(nu)`, where they are adjacent. The shared edge
//! forces a compatibility between the angle parameters, expressed through
//! the edge-length functions `rho1`, `rho2` below. `C1` has a closed-form
//! volume thanks to Kellerhals; `C2` does not, and its volume is obtained by
//! integrating the Schlafli differential from the right-angled endpoint.

use std::f64::consts::{FRAC_PI_2, FRAC_PI_3, PI, SQRT_2};
use std::sync::LazyLock;

use crate::numerics::{adaptive_simpson, bisect, lobachevsky};

#[derive(Debug, thiserror::Error, Clone, Copy, PartialEq)]
#[error("angle parameter {mu} lies outside the cube domain [0, pi/2)")]
pub struct DomainError {
    pub mu: f64,
}

fn check_domain(mu: f64) -> Result<(), DomainError> {
    if (0.0..FRAC_PI_2).contains(&mu) {
        Ok(())
    } else {
        Err(DomainError { mu })
    }
}

/// Length of the edge of `C1(mu)` carrying the angle `mu`. Strictly
/// increasing, zero at zero, unbounded as `mu` approaches pi/2.
pub fn rho1(mu: f64) -> Result<f64, DomainError> {
    check_domain(mu)?;
    let c2 = mu.cos().powi(2);
    let cosh = ((1.0 + 24.0 * c2 + (1.0 + 48.0 * c2).sqrt()) / (32.0 * c2)).sqrt();
    Ok(cosh.acosh())
}

/// Length of the edge of `C2(nu)` carrying the angle `nu`.
pub fn rho2(nu: f64) -> Result<f64, DomainError> {
    check_domain(nu)?;
    let c = nu.cos();
    let cosh = ((3.0 * c + 1.0) / (4.0 * c)).sqrt();
    Ok(cosh.acosh())
}

/// Invert `rho2`: the angle whose edge comes out at the given length.
/// Closed form, since the defining relation is linear in cos(nu).
fn rho2_inverse(length: f64) -> f64 {
    let c2 = length.cosh().powi(2);
    (1.0 / (4.0 * c2 - 3.0)).acos()
}

/// Kellerhals' volume formula for a Lambert cube with essential angles
/// `(a3, b4, c1)`, given the length `rho` of the `c1` edge.
pub fn lambert_volume(a3: f64, b4: f64, c1: f64, rho: f64) -> f64 {
    let radicand = rho.cosh().powi(2) - (a3.sin() * b4.sin()).powi(2);
    let theta = radicand.sqrt().atan2(a3.cos() * b4.cos());
    0.25 * (lobachevsky(a3 + theta) - lobachevsky(a3 - theta)
        + lobachevsky(b4 + theta)
        - lobachevsky(b4 - theta)
        + lobachevsky(c1 + theta)
        - lobachevsky(c1 - theta)
        - lobachevsky(2.0 * theta)
        + 2.0 * lobachevsky(FRAC_PI_2 - theta))
}

/// The collapsed case `c1 = 0`, where the edge degenerates (`rho = 0`) and
/// the last three terms of the general formula fold into one.
pub fn lambert_volume_collapsed(a3: f64, b4: f64) -> f64 {
    let radicand = 1.0 - (a3.sin() * b4.sin()).powi(2);
    let theta = radicand.sqrt().atan2(a3.cos() * b4.cos());
    0.25 * (lobachevsky(a3 + theta) - lobachevsky(a3 - theta)
        + lobachevsky(b4 + theta)
        - lobachevsky(b4 - theta)
        + 4.0 * lobachevsky(FRAC_PI_2 - theta))
}

/// Volume of `C1(mu)`, by Kellerhals' formula with both fixed essential
/// angles at pi/3.
pub fn c1_volume(mu: f64) -> Result<f64, DomainError> {
    let rho = rho1(mu)?;
    Ok(lambert_volume(FRAC_PI_3, FRAC_PI_3, mu, rho))
}

/// `C2(0)` glues from two copies of the half-space region over the rectangle
/// `[0, sqrt(2)/2] x [0, 1/2]` above the unit hemisphere; the height
/// integral of the volume form is available in closed form.
static C2_AT_ZERO: LazyLock<f64> = LazyLock::new(|| {
    let column = |x: f64| {
        adaptive_simpson(
            move |y| 1.0 / (2.0 * (1.0 - x * x - y * y)),
            0.0,
            0.5,
            1e-13,
        )
    };
    2.0 * adaptive_simpson(column, 0.0, SQRT_2 / 2.0, 1e-12)
});

/// Volume of `C2(mu)`, integrated via the Schlafli differential from the
/// right-angled endpoint: only the varying edge contributes, at a rate of
/// half its length.
pub fn c2_volume(mu: f64) -> Result<f64, DomainError> {
    check_domain(mu)?;
    let swept = adaptive_simpson(
        |t| rho2(t).expect("integration stays inside the domain"),
        0.0,
        mu,
        1e-12,
    );
    Ok(*C2_AT_ZERO - 0.5 * swept)
}

/// Volume of the alternating n-prism: `n - 3` copies of `C1` sharing the
/// distinguished edge, a quarter turn split evenly.
pub fn alternating_prism_volume(n: usize) -> Result<f64, DomainError> {
    if n < 5 {
        // n = 4 would need the full quarter turn on a single cube, which
        // degenerates; n < 4 is not a prism at all.
        return Err(DomainError { mu: FRAC_PI_2 });
    }
    let mu = PI / (2.0 * (n as f64 - 3.0));
    Ok((n as f64 - 3.0) * c1_volume(mu)?)
}

#[derive(Debug, thiserror::Error, Clone, Copy, PartialEq, Eq)]
pub enum PrismSolveError {
    #[error("a basic prism decomposes into at least one cube")]
    NoCubes,
    #[error("no common edge length balances the angle budget")]
    NoSolution,
}

/// A basic n-prism resolved into its cube decomposition: `r` copies of
/// `C1(mu)` and `s` copies of `C2(nu)` around a common edge.
#[derive(Clone, Copy, Debug, PartialEq, serde::Serialize)]
pub struct BasicPrismDecomposition {
    pub r: u32,
    pub s: u32,
    /// Angle parameter of the `C1` cubes. When `r = 0` this is the angle a
    /// `C1` cube of the same edge length would have.
    pub mu: f64,
    /// Angle parameter of the `C2` cubes.
    pub nu: f64,
    /// Length of the shared edge.
    pub edge_length: f64,
    pub volume: f64,
}

/// Solve the angle budget for a basic prism of `r + s + 3` lateral faces:
/// all cubes share the distinguished edge, so their angle parameters are
/// coupled through its length, and together they must fill a quarter turn.
pub fn solve_basic_prism(r: u32, s: u32) -> Result<BasicPrismDecomposition, PrismSolveError> {
    if r + s == 0 {
        return Err(PrismSolveError::NoCubes);
    }
    let budget = |mu: f64| {
        let length = rho1(mu).expect("bisection stays inside the domain");
        let nu = rho2_inverse(length);
        r as f64 * mu + s as f64 * nu - FRAC_PI_2
    };
    let (lo, hi) = (1e-9, FRAC_PI_2 - 1e-9);
    if budget(lo) >= 0.0 || budget(hi) <= 0.0 {
        return Err(PrismSolveError::NoSolution);
    }
    let mu = bisect(budget, lo, hi, 1e-12).ok_or(PrismSolveError::NoSolution)?;
    let edge_length = rho1(mu).expect("solution lies inside the domain");
    let nu = rho2_inverse(edge_length);
    let volume = r as f64 * c1_volume(mu).expect("solution lies inside the domain")
        + s as f64 * c2_volume(nu).expect("solution lies inside the domain");
    Ok(BasicPrismDecomposition { r, s, mu, nu, edge_length, volume })
}

/// Consistency check on the Gram matrix of `C1(mu)`: with the face normals
/// in Minkowski space the matrix has rank at most 4, so each 5x5 minor
/// vanishes. Two minors determine the remaining inner products from
/// `rho1(mu)`; the third must then vanish on its own.
#[derive(Clone, Copy, Debug)]
pub struct GramCheck {
    /// Inner products between the three pairs of non-adjacent faces.
    pub x1: f64,
    pub x2: f64,
    pub x3: f64,
    /// The three minor equations evaluated at those values.
    pub residuals: [f64; 3],
}

pub fn gram_check(mu: f64) -> Result<GramCheck, DomainError> {
    let m = -mu.cos();
    let m2 = m * m;
    let x1sq = rho1(mu)?.cosh().powi(2);
    let x2sq = (x1sq - 9.0 / 16.0) / (x1sq - 0.75);
    let x3sq = (x2sq - 0.75 * (1.0 - m2)) / (x2sq - 0.75);
    let residuals = [
        x2sq * x3sq - x2sq - 0.75 * x3sq + 0.75 * (1.0 - m2),
        x1sq * x3sq + (m2 - 1.0) * x1sq - x3sq + 0.75 * (1.0 - m2),
        x1sq * x2sq - x1sq - 0.75 * x2sq + 9.0 / 16.0,
    ];
    Ok(GramCheck {
        x1: -x1sq.sqrt(),
        x2: -x2sq.sqrt(),
        x3: -x3sq.sqrt(),
        residuals,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    #[test]
    fn edge_lengths_start_at_zero_and_grow() {
        assert_abs_diff_eq!(rho1(0.0).unwrap(), 0.0, epsilon = 1e-9);
        assert_abs_diff_eq!(rho2(0.0).unwrap(), 0.0, epsilon = 1e-9);
        let grid: Vec<f64> = (0..60).map(|i| i as f64 * FRAC_PI_2 / 60.0).collect();
        for w in grid.windows(2) {
            assert!(rho1(w[1]).unwrap() > rho1(w[0]).unwrap());
            assert!(rho2(w[1]).unwrap() > rho2(w[0]).unwrap());
        }
    }

    #[test]
    fn the_non_adjacent_cube_has_the_longer_edge() {
        for i in 1..60 {
            let mu = i as f64 * FRAC_PI_2 / 60.0;
            assert!(rho1(mu).unwrap() >= rho2(mu).unwrap(), "mu = {mu}");
        }
    }

    #[test]
    fn domain_is_half_open() {
        assert!(rho1(FRAC_PI_2).is_err());
        assert!(rho1(-0.1).is_err());
        assert!(c1_volume(1.6).is_err());
        assert!(c2_volume(FRAC_PI_2).is_err());
        assert!(rho1(FRAC_PI_2 - 1e-6).is_ok());
    }

    #[test]
    fn collapsed_formula_agrees_with_the_general_one() {
        for (a3, b4) in [(FRAC_PI_3, FRAC_PI_3), (0.3, 0.9), (FRAC_PI_2 - 0.2, 0.5)] {
            assert_abs_diff_eq!(
                lambert_volume(a3, b4, 0.0, 0.0),
                lambert_volume_collapsed(a3, b4),
                epsilon = 1e-12
            );
        }
    }

    #[test]
    fn known_lambert_cube_volumes() {
        assert_abs_diff_eq!(c1_volume(0.0).unwrap(), 0.44446, epsilon = 1e-5);
        assert_abs_diff_eq!(c1_volume(FRAC_PI_3).unwrap(), 0.324423, epsilon = 1e-6);
    }

    #[test]
    fn right_angled_c2_volume_against_the_closed_form_column() {
        // Independent route: integrate the column heights analytically,
        // leaving one numeric integral with a different integrand.
        let s = |x: f64| (1.0 - x * x).sqrt();
        let oracle = adaptive_simpson(
            |x| (0.5 / s(x)).atanh() / s(x),
            0.0,
            SQRT_2 / 2.0,
            1e-12,
        );
        let v0 = c2_volume(0.0).unwrap();
        assert_abs_diff_eq!(v0, oracle, epsilon = 1e-9);
        assert_abs_diff_eq!(v0, 0.50192, epsilon = 1e-5);
    }

    #[test]
    fn schlafli_route_reproduces_the_closed_form_for_c1() {
        for mu in [0.3, FRAC_PI_3, 1.2] {
            let swept = adaptive_simpson(|t| rho1(t).unwrap(), 0.0, mu, 1e-12);
            let via_schlafli = c1_volume(0.0).unwrap() - 0.5 * swept;
            assert_abs_diff_eq!(c1_volume(mu).unwrap(), via_schlafli, epsilon = 1e-8);
        }
    }

    #[test]
    fn adjacent_cube_always_costs_more() {
        for i in 0..30 {
            let mu = i as f64 * FRAC_PI_2 / 30.0;
            assert!(
                c1_volume(mu).unwrap() < c2_volume(mu).unwrap(),
                "mu = {mu}"
            );
        }
    }

    #[test]
    fn alternating_prisms_split_the_quarter_turn_evenly() {
        let five = alternating_prism_volume(5).unwrap();
        assert_abs_diff_eq!(five, 2.0 * c1_volume(PI / 4.0).unwrap(), epsilon = 1e-12);
        // Volume grows with n, and each cube stays above the pi/3 cube.
        let mut last = 0.0;
        for n in 5..=12 {
            let v = alternating_prism_volume(n).unwrap();
            assert!(v > last);
            last = v;
            let per_cube = v / (n as f64 - 3.0);
            assert!(per_cube > c1_volume(FRAC_PI_3).unwrap());
        }
        assert!(alternating_prism_volume(4).is_err());
    }

    #[test]
    fn basic_prism_solution_balances_both_constraints() {
        // Pure C1 stacks split evenly.
        let alt = solve_basic_prism(3, 0).unwrap();
        assert_abs_diff_eq!(alt.mu, PI / 6.0, epsilon = 1e-10);
        assert_abs_diff_eq!(alt.volume, alternating_prism_volume(6).unwrap(), epsilon = 1e-9);

        // A mixed stack balances angles against the shared edge length.
        let mixed = solve_basic_prism(2, 3).unwrap();
        assert_abs_diff_eq!(
            2.0 * mixed.mu + 3.0 * mixed.nu,
            FRAC_PI_2,
            epsilon = 1e-10
        );
        assert_abs_diff_eq!(
            rho1(mixed.mu).unwrap(),
            rho2(mixed.nu).unwrap(),
            epsilon = 1e-10
        );
        assert_abs_diff_eq!(rho1(mixed.mu).unwrap(), mixed.edge_length, epsilon = 1e-12);
        assert!(mixed.volume > 0.0);

        // One cube cannot absorb the whole quarter turn, and zero cubes are
        // not a prism.
        assert_eq!(solve_basic_prism(1, 0), Err(PrismSolveError::NoSolution));
        assert_eq!(solve_basic_prism(0, 1), Err(PrismSolveError::NoSolution));
        assert_eq!(solve_basic_prism(0, 0), Err(PrismSolveError::NoCubes));
    }

    #[test]
    fn mixed_stacks_cost_more_than_alternating_ones() {
        // Same lateral count, different cube mix: the alternating prism is
        // the cheapest basic prism.
        let n = 8;
        let alternating = alternating_prism_volume(n).unwrap();
        for r in 0..=(n as u32 - 4) {
            let s = n as u32 - 3 - r;
            let mix = solve_basic_prism(r, s).unwrap();
            assert!(
                mix.volume > alternating + 1e-9,
                "r = {r}, s = {s}: {} vs {alternating}",
                mix.volume
            );
        }
    }

    #[test]
    fn gram_minors_vanish_along_the_family() {
        for i in 0..50 {
            let mu = i as f64 * (FRAC_PI_2 - 1e-3) / 50.0;
            let check = gram_check(mu).unwrap();
            for r in check.residuals {
                assert!(r.abs() < 1e-10, "mu = {mu}: residuals {:?}", check.residuals);
            }
            assert!(check.x1 <= -1.0 + 1e-12 && check.x2 < 0.0 && check.x3 < 0.0);
        }
    }
}
