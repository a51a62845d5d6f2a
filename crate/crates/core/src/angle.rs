//! Dihedral-angle values that stay exact when they can.
//!
//! Almost every comparison in this crate is of the form "is this sum of
//! labels less than / equal to / greater than a rational multiple of pi?".
//! When every label involved is a rational multiple of pi the comparison is
//! done in exact rational arithmetic; only labels supplied as raw radians
//! force a floating-point comparison, and those carry a tolerance band so
//! the caller can surface borderline verdicts.

use std::cmp::Ordering;
use std::f64::consts::PI;
use std::fmt;

use num::rational::Ratio;
use num::{One, Signed, Zero};
use serde::ser::SerializeMap;
use serde::{Serialize, Serializer};

/// Absolute tolerance for comparisons that involve at least one
/// floating-point label.
pub const FLOAT_SUM_TOLERANCE: f64 = 1e-9;

/// A dihedral angle: either an exact rational multiple of pi or a raw
/// radian value.
#[derive(Clone, Copy, Debug)]
pub enum Angle {
    /// `PiTimes(p/q)` is the angle `pi * p / q`, kept in lowest terms.
    PiTimes(Ratio<i64>),
    /// An angle supplied directly in radians (never NaN).
    Radians(f64),
}

impl Angle {
    /// The Coxeter label `pi / n`.
    pub fn pi_over(n: i64) -> Angle {
        assert!(n != 0, "pi/0 is not an angle");
        Angle::PiTimes(Ratio::new(1, n))
    }

    /// The angle `pi * p / q`.
    pub fn pi_times(p: i64, q: i64) -> Angle {
        assert!(q != 0, "zero denominator");
        Angle::PiTimes(Ratio::new(p, q))
    }

    /// An inexact angle in radians. Panics on NaN, which would poison every
    /// comparison downstream.
    pub fn radians(x: f64) -> Angle {
        assert!(!x.is_nan(), "angle cannot be NaN");
        Angle::Radians(x)
    }

    pub fn right_angle() -> Angle {
        Angle::pi_over(2)
    }

    /// Numeric value in radians.
    pub fn to_radians(self) -> f64 {
        match self {
            Angle::PiTimes(r) => PI * ratio_to_f64(r),
            Angle::Radians(x) => x,
        }
    }

    /// The exact rational multiple of pi, when there is one.
    pub fn exact(self) -> Option<Ratio<i64>> {
        match self {
            Angle::PiTimes(r) => Some(r),
            Angle::Radians(_) => None,
        }
    }

    pub fn is_exact(self) -> bool {
        matches!(self, Angle::PiTimes(_))
    }

    /// `Some(n)` when the angle is exactly `pi / n` with `n >= 1`.
    pub fn coxeter_order(self) -> Option<i64> {
        match self {
            Angle::PiTimes(r) if r.numer().is_one() && *r.denom() >= 1 => Some(*r.denom()),
            _ => None,
        }
    }

    /// Whether the label lies in the admissible band `(0, pi/2]`.
    pub fn in_label_range(self) -> bool {
        match self {
            Angle::PiTimes(r) => r.is_positive() && r <= Ratio::new(1, 2),
            Angle::Radians(x) => x > 0.0 && x <= PI / 2.0 + FLOAT_SUM_TOLERANCE,
        }
    }

    /// Exact equality with `pi * p / q` for exact angles; tolerance-band
    /// equality for radian labels.
    pub fn is_pi_multiple(self, p: i64, q: i64) -> bool {
        match self {
            Angle::PiTimes(r) => r == Ratio::new(p, q),
            Angle::Radians(x) => (x - PI * p as f64 / q as f64).abs() <= FLOAT_SUM_TOLERANCE,
        }
    }

    pub fn is_right_angle(self) -> bool {
        self.is_pi_multiple(1, 2)
    }

    /// Total order used for canonical forms; exact values sort before a
    /// radian value that happens to round to the same float.
    pub fn canonical_cmp(self, other: Angle) -> Ordering {
        match self
            .to_radians()
            .partial_cmp(&other.to_radians())
            .expect("angles are never NaN")
        {
            Ordering::Equal => match (self, other) {
                (Angle::PiTimes(a), Angle::PiTimes(b)) => a.cmp(&b),
                (Angle::PiTimes(_), Angle::Radians(_)) => Ordering::Less,
                (Angle::Radians(_), Angle::PiTimes(_)) => Ordering::Greater,
                (Angle::Radians(_), Angle::Radians(_)) => Ordering::Equal,
            },
            ord => ord,
        }
    }
}

impl PartialEq for Angle {
    fn eq(&self, other: &Self) -> bool {
        match (self, other) {
            (Angle::PiTimes(a), Angle::PiTimes(b)) => a == b,
            (a, b) => a.to_radians() == b.to_radians(),
        }
    }
}

impl fmt::Display for Angle {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Angle::PiTimes(r) if r.numer().is_one() => write!(f, "pi/{}", r.denom()),
            Angle::PiTimes(r) => write!(f, "{}pi/{}", r.numer(), r.denom()),
            Angle::Radians(x) => write!(f, "{x}"),
        }
    }
}

impl Serialize for Angle {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let mut map = serializer.serialize_map(Some(1))?;
        match self {
            Angle::PiTimes(r) if r.numer().is_one() => {
                map.serialize_entry("pi_over", r.denom())?;
            }
            other => {
                map.serialize_entry("radians", &other.to_radians())?;
            }
        }
        map.end()
    }
}

fn ratio_to_f64(r: Ratio<i64>) -> f64 {
    *r.numer() as f64 / *r.denom() as f64
}

/// Outcome of comparing an angle sum against a rational multiple of pi.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SumComparison {
    pub ordering: Ordering,
    /// True when the verdict was decided by the floating-point tolerance
    /// band rather than exact arithmetic.
    pub borderline: bool,
}

/// Accumulator for sums of labels, exact as long as every summand is.
#[derive(Clone, Copy, Debug)]
pub struct AngleSum {
    rational: Option<Ratio<i64>>,
    float: f64,
}

impl AngleSum {
    pub fn new() -> AngleSum {
        AngleSum { rational: Some(Ratio::zero()), float: 0.0 }
    }

    pub fn of(angles: impl IntoIterator<Item = Angle>) -> AngleSum {
        let mut sum = AngleSum::new();
        for a in angles {
            sum.add(a);
        }
        sum
    }

    pub fn add(&mut self, a: Angle) {
        self.float += a.to_radians();
        self.rational = match (self.rational, a.exact()) {
            (Some(acc), Some(r)) => Some(acc + r),
            _ => None,
        };
    }

    pub fn is_exact(&self) -> bool {
        self.rational.is_some()
    }

    pub fn radians(&self) -> f64 {
        match self.rational {
            Some(r) => PI * ratio_to_f64(r),
            None => self.float,
        }
    }

    /// Compare the sum against `pi * p / q`.
    pub fn compare_to_pi_multiple(&self, p: i64, q: i64) -> SumComparison {
        let target = Ratio::new(p, q);
        match self.rational {
            Some(r) => SumComparison { ordering: r.cmp(&target), borderline: false },
            None => {
                let diff = self.float - PI * ratio_to_f64(target);
                if diff.abs() <= FLOAT_SUM_TOLERANCE {
                    SumComparison { ordering: Ordering::Equal, borderline: true }
                } else if diff < 0.0 {
                    SumComparison { ordering: Ordering::Less, borderline: false }
                } else {
                    SumComparison { ordering: Ordering::Greater, borderline: false }
                }
            }
        }
    }
}

impl Default for AngleSum {
    fn default() -> Self {
        AngleSum::new()
    }
}

/// Link geometry of a vertex, or equivalently the class of a prismatic
/// circuit: the sum of the surrounding labels against the flat threshold.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum GeometryClass {
    /// Sum below the threshold.
    Hyperbolic,
    /// Sum exactly at the threshold.
    Euclidean,
    /// Sum above the threshold.
    Spherical,
}

impl GeometryClass {
    /// Classify a sum against `pi * p / q` (pi for triangles and trivalent
    /// vertex links, 2pi for quadrilaterals and 4-valent links).
    pub fn from_comparison(cmp: SumComparison) -> GeometryClass {
        match cmp.ordering {
            Ordering::Less => GeometryClass::Hyperbolic,
            Ordering::Equal => GeometryClass::Euclidean,
            Ordering::Greater => GeometryClass::Spherical,
        }
    }
}

impl fmt::Display for GeometryClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            GeometryClass::Hyperbolic => "hyperbolic",
            GeometryClass::Euclidean => "euclidean",
            GeometryClass::Spherical => "spherical",
        };
        f.write_str(s)
    }
}
