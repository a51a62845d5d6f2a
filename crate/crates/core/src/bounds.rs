//! Two-sided volume bounds assembled from combinatorial counts.
//!
//! The closed-form bounds all price a polyhedron in ideal octahedra and
//! ideal tetrahedra, keyed by counts the rest of the crate computes: vertex
//! degrees, prismatic circuits, and the vertex census of the full
//! truncation. `estimate` picks the strongest applicable lower bound — the
//! small-angle census, the prism sandwich, or a cut-and-count pass that
//! splits along every nontrivial prismatic 3-circuit and decomposes the
//! right-angled shadow (the same graph with every label read as π/2, which
//! is where the toroidal circuits live) — and always reads the upper bound
//! off the full truncation.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::f64::consts::PI;

use serde::Serialize;

use crate::andreev::{check_andreev, check_generalized, AndreevError, RealizabilityReport};
use crate::angle::Angle;
use crate::circuits::prismatic_circuits;
use crate::cubes;
use crate::decompose::{decompose, DecomposeError, DecomposeOptions, Step};
use crate::dual::{CountError, DualGraph, DualVertexOrigin};
use crate::mesh::Edge;
use crate::numerics::{ideal_octahedron_volume, ideal_tetrahedron_volume};
use crate::polyhedron::{LabeledPolyhedron, ValidityError};
use crate::truncate::{full_truncation, TruncationCounts};

fn v8() -> f64 {
    ideal_octahedron_volume()
}

fn v3() -> f64 {
    ideal_tetrahedron_volume()
}

/// Volume of the Coxeter cube with essential angle π/3, the unit all the
/// prism-region bounds are priced in.
fn coxeter_cube() -> f64 {
    cubes::c1_volume(PI / 3.0).expect("pi/3 is inside the parameter domain")
}

#[derive(Debug, thiserror::Error)]
pub enum BoundsError {
    #[error("prism volume bounds need at least 4 lateral faces, got {0}")]
    PrismTooSmall(usize),
    #[error("the small-angle census bound needs at least 8 vertices, got {0}")]
    HypothesisViolated(usize),
    #[error("a prism region holds an even number of polyhedron vertices, got {0}")]
    OddVertexCount(usize),
    #[error(transparent)]
    Cube(#[from] cubes::DomainError),
}

/// Census lower bound for inputs free of prismatic 4-circuits:
/// (4·N4 + N3 − 8)/32 octahedra. Negative for tiny censuses; callers that
/// report it clamp at zero and flag.
pub fn lower_no_prismatic4(n4: usize, n3: usize) -> f64 {
    (4 * n4 as i64 + n3 as i64 - 8) as f64 / 32.0 * v8()
}

/// The same census sharpened by the prismatic 3-circuit count: each circuit
/// is worth one more degree-3 vertex, because extending across it turns the
/// circuit into a corner of a combinatorially larger polyhedron.
pub fn lower_with_m3(n4: usize, n3: usize, m3: usize) -> f64 {
    lower_no_prismatic4(n4, n3 + m3)
}

/// Lower bound for a right-angled polyhedron with the given ideal and finite
/// vertex counts: (4·N∞ + N_F − 8)/32 octahedra.
pub fn right_angled_lower(ideal: usize, finite: usize) -> f64 {
    (4 * ideal as i64 + finite as i64 - 8) as f64 / 32.0 * v8()
}

/// Lower bound when every label is at most π/3: (N + 2M)·3/8 tetrahedra,
/// with M the prismatic 3-circuit count. Needs at least 8 vertices.
pub fn pi3_lower(vertices: usize, circuits: usize) -> Result<f64, BoundsError> {
    if vertices < 8 {
        return Err(BoundsError::HypothesisViolated(vertices));
    }
    Ok((vertices + 2 * circuits) as f64 * 3.0 * v3() / 8.0)
}

/// Lower half of the prism sandwich: (n − 3) Coxeter cubes. Valid only when
/// no label lies strictly between π/3 and π/2; `estimate` checks that before
/// applying it.
pub fn prism_lower(n: usize) -> Result<f64, BoundsError> {
    if n < 4 {
        return Err(BoundsError::PrismTooSmall(n));
    }
    Ok((n - 3) as f64 * coxeter_cube())
}

/// Upper half of the prism sandwich: (3n − 4)/2 octahedra, read off the
/// ideal rectification of the prism (every edge gets an ideal midpoint).
pub fn prism_upper(n: usize) -> Result<f64, BoundsError> {
    if n < 4 {
        return Err(BoundsError::PrismTooSmall(n));
    }
    Ok((3 * n as i64 - 4) as f64 / 2.0 * v8())
}

/// A prism-region bound, with the note raised when the theory only promises
/// unquantified positive volume.
#[derive(Clone, Debug, Serialize)]
pub struct RegionEstimate {
    pub value: f64,
    pub note: Option<String>,
}

/// Lower bound for a prism region containing `vertices` vertices of the
/// input. Regions with at least 10 vertices are worth (V/2 − 3) Coxeter
/// cubes outright; smaller ones contain a single cube whose essential angle
/// is instance-dependent, so they contribute zero unless the caller knows
/// it; the exceptional boundary patterns admit no bound at all.
pub fn prism_region_lower(
    vertices: usize,
    exceptional: bool,
    lambda: Option<f64>,
) -> Result<RegionEstimate, BoundsError> {
    if vertices % 2 != 0 {
        return Err(BoundsError::OddVertexCount(vertices));
    }
    if exceptional {
        return Ok(RegionEstimate {
            value: 0.0,
            note: Some("exceptional prism region: positive volume, but no bound holds".into()),
        });
    }
    if vertices >= 10 {
        return Ok(RegionEstimate {
            value: (vertices as f64 / 2.0 - 3.0) * coxeter_cube(),
            note: None,
        });
    }
    match lambda {
        Some(mu) if vertices >= 2 => Ok(RegionEstimate { value: cubes::c1_volume(mu)?, note: None }),
        _ => Ok(RegionEstimate {
            value: 0.0,
            note: Some(
                "prism region with at most 8 vertices contributes unquantified positive volume; \
                 the lower bound is not tight"
                    .into(),
            ),
        }),
    }
}

/// Upper bound from the full-truncation census: (n4 + E33 − 1)/2 octahedra
/// plus 5(E34 + n2)/8 tetrahedra.
pub fn general_upper(n4: usize, e33: usize, e34: usize, n2: usize) -> f64 {
    ((n4 + e33) as i64 - 1) as f64 / 2.0 * v8() + 5.0 * (e34 + n2) as f64 / 8.0 * v3()
}

/// Sharper variant when every vertex of the truncation is ideal:
/// (N∞ − 4)/2 octahedra.
pub fn general_upper_all_ideal(ideal: usize) -> f64 {
    (ideal as i64 - 4) as f64 / 2.0 * v8()
}

/// Upper bound relaxed to the degree census alone, with no truncation
/// counting: (2N4 + 3N3 − 2)/4 octahedra plus (15N3 + 20N4)/16 tetrahedra.
pub fn weak_upper(n4: usize, n3: usize) -> f64 {
    (2 * n4 as i64 + 3 * n3 as i64 - 2) as f64 / 4.0 * v8()
        + (15 * n3 + 20 * n4) as f64 / 16.0 * v3()
}

/// Two-sided bounds from the vertex count alone: ((N − 8)/32 octahedra,
/// clamped at zero, and the linear relaxation 4.0166·N − 1.8319).
pub fn corollary_bounds(vertices: usize) -> (f64, f64) {
    let lower = ((vertices as i64 - 8) as f64 / 32.0 * v8()).max(0.0);
    (lower, 4.0166 * vertices as f64 - 1.8319)
}

/// One summand of an assembled bound, citing the formula that produced it.
#[derive(Clone, Debug, Serialize)]
pub struct Contribution {
    pub component: String,
    pub theorem: String,
    pub value: f64,
}

/// Per-region decomposition data for `assemble_lower`, for callers that
/// bring their own decomposition instead of running `estimate`.
#[derive(Clone, Debug)]
pub enum Region {
    /// An n-prism component.
    Prism { n: usize },
    /// A component deformable to a right-angled polyhedron with the given
    /// ideal and finite vertex counts.
    RightAngled { ideal: usize, finite: usize },
    /// A prism region containing `vertices` vertices of the input.
    PrismRegion { vertices: usize, exceptional: bool, lambda: Option<f64> },
    /// A contribution supplied from outside the formulas implemented here,
    /// recorded verbatim and flagged.
    Quoted { label: String, value: f64 },
}

/// Sum per-region lower bounds into a total, a breakdown, and the flags the
/// regions raised along the way.
pub fn assemble_lower(
    regions: &[Region],
) -> Result<(f64, Vec<Contribution>, Vec<String>), BoundsError> {
    let mut total = 0.0;
    let mut breakdown = Vec::new();
    let mut flags = Vec::new();
    for (i, region) in regions.iter().enumerate() {
        let (component, theorem, value) = match region {
            Region::Prism { n } => {
                (format!("region {i}: {n}-prism"), "prism_lower", prism_lower(*n)?)
            }
            Region::RightAngled { ideal, finite } => {
                let raw = right_angled_lower(*ideal, *finite);
                let value = if raw < 0.0 {
                    flags.push(format!("region {i}: census bound is negative, clamped to 0"));
                    0.0
                } else {
                    raw
                };
                (
                    format!("region {i}: right-angled, {ideal} ideal + {finite} finite"),
                    "right_angled_lower",
                    value,
                )
            }
            Region::PrismRegion { vertices, exceptional, lambda } => {
                let estimate = prism_region_lower(*vertices, *exceptional, *lambda)?;
                if let Some(note) = estimate.note {
                    flags.push(format!("region {i}: {note}"));
                }
                (
                    format!("region {i}: prism region, {vertices} vertices"),
                    "prism_region_lower",
                    estimate.value,
                )
            }
            Region::Quoted { label, value } => {
                flags.push(format!(
                    "region {i}: contribution supplied externally, not derived here"
                ));
                (format!("region {i}: {label}"), "quoted", *value)
            }
        };
        total += value;
        breakdown.push(Contribution { component, theorem: theorem.into(), value });
    }
    Ok((total, breakdown, flags))
}

/// Hand-worked decomposition data for a reference example: a 50-vertex
/// non-obtuse polyhedron with six degree-4 vertices whose cut-and-count pass
/// yields an order-4 Coxeter prism, a 22-vertex right-angled piece, an
/// atoroidal piece with 7 ideal and 2 finite corners, and two prism regions
/// holding 6 and 12 of the original vertices. Its full truncation has
/// census (n2, n3, n4, E33, E34) = (0, 44, 6, 63, 6), so `general_upper`
/// prices it just over 128.
///
/// With `sharper_atoroidal` the 7-ideal piece contributes the quoted value
/// 25/16 octahedra, which finer arguments than the census support; the
/// assembly then totals about 8.625 against the census pipeline's 5.42.
pub fn reference_decomposition(sharper_atoroidal: bool) -> Vec<Region> {
    let atoroidal = if sharper_atoroidal {
        Region::Quoted {
            label: "atoroidal piece, 7 ideal + 2 finite corners".into(),
            value: 25.0 / 16.0 * v8(),
        }
    } else {
        Region::RightAngled { ideal: 7, finite: 2 }
    };
    vec![
        Region::Prism { n: 4 },
        Region::RightAngled { ideal: 0, finite: 22 },
        atoroidal,
        Region::PrismRegion { vertices: 6, exceptional: false, lambda: None },
        Region::PrismRegion { vertices: 12, exceptional: false, lambda: None },
    ]
}

/// Full-truncation census of the reference example.
pub fn reference_truncation_counts() -> TruncationCounts {
    TruncationCounts { n2: 0, n3: 44, n4: 6, e33: 63, e34: 6 }
}

/// Counts of the input that the bound formulas consumed.
#[derive(Clone, Copy, Debug, Serialize)]
pub struct InputCounts {
    pub vertices: usize,
    pub degree3: usize,
    pub degree4: usize,
    /// Prismatic 3-circuits, face-parallel ones included.
    pub prismatic3: usize,
    pub prismatic4: usize,
    pub truncation: TruncationCounts,
    /// Ideal vertices of the full truncation (degree-4 plus both-sides-thin
    /// edge midpoints).
    pub truncated_ideal: usize,
    /// Finite vertices of the full truncation (walled vertices plus mixed
    /// edge midpoints).
    pub truncated_finite: usize,
}

/// Two-sided bounds with the per-piece breakdown and any caveats raised
/// while assembling them.
#[derive(Clone, Debug, Serialize)]
pub struct BoundReport {
    pub lower: f64,
    pub upper: f64,
    pub breakdown: Vec<Contribution>,
    pub flags: Vec<String>,
    pub counts: InputCounts,
}

#[derive(Debug, thiserror::Error)]
pub enum EstimateError {
    #[error(transparent)]
    Check(#[from] AndreevError),
    #[error("input fails the generalized realizability conditions")]
    NotRealizable(Box<RealizabilityReport>),
    #[error("input has hyperideal corners, so there is no finite volume to bound; truncate it first")]
    InfiniteVolume(Box<RealizabilityReport>),
    #[error(transparent)]
    Decompose(#[from] DecomposeError),
    #[error(transparent)]
    Formula(#[from] BoundsError),
    #[error("decomposition piece is not polyhedral: {0}")]
    Piece(#[from] ValidityError),
    #[error(transparent)]
    Counting(#[from] CountError),
}

/// Two-sided volume bounds with the canonical decomposition order.
pub fn estimate(p: &LabeledPolyhedron) -> Result<BoundReport, EstimateError> {
    estimate_with(p, &DecomposeOptions::default())
}

/// Two-sided volume bounds for a realizable input.
///
/// Lower-bound strategy, first match wins: the small-angle census when every
/// label is at most π/3 and there are at least 8 vertices; the prism
/// sandwich when the input is a combinatorial prism; otherwise the
/// cut-and-count pass over the right-angled shadow. Whatever the path, when
/// the input has no prismatic 4-circuits the whole-graph census is also
/// computed and the larger value reported, since splitting pays an 8/32
/// deficit per extra piece. The upper bound reads the full-truncation
/// census, switching to the sharper variant when every truncation vertex is
/// ideal.
///
/// `options` seeds the decomposition choice order; the assembled lower
/// bound must not depend on it.
pub fn estimate_with(
    p: &LabeledPolyhedron,
    options: &DecomposeOptions,
) -> Result<BoundReport, EstimateError> {
    let gate = check_generalized(p)?;
    if !gate.realizable {
        return Err(EstimateError::NotRealizable(Box::new(gate)));
    }
    if !gate.finite_volume {
        return Err(EstimateError::InfiniteVolume(Box::new(gate)));
    }

    let dual = DualGraph::of(p);
    let degrees = p.degree_counts();
    let (_, truncation) = full_truncation(p);
    let counts = InputCounts {
        vertices: p.vertex_count(),
        degree3: degrees.degree3,
        degree4: degrees.degree4,
        prismatic3: prismatic_circuits(&dual, 3).len(),
        prismatic4: prismatic_circuits(&dual, 4).len(),
        truncation,
        truncated_ideal: truncation.n4 + truncation.e33,
        truncated_finite: truncation.n2 + truncation.e34,
    };

    let mut breakdown = Vec::new();
    let mut flags = Vec::new();
    let prism = p.prism_form().map(|f| f.n).filter(|&n| n >= 4);

    let upper = if let Some(n) = prism {
        let value = prism_upper(n)?;
        breakdown.push(Contribution {
            component: format!("{n}-prism"),
            theorem: "prism_upper".into(),
            value,
        });
        value
    } else {
        let t = counts.truncation;
        let literal = general_upper(t.n4, t.e33, t.e34, t.n2);
        breakdown.push(Contribution {
            component: "full truncation".into(),
            theorem: "general_upper".into(),
            value: literal,
        });
        if counts.truncated_finite == 0 {
            let sharper = general_upper_all_ideal(counts.truncated_ideal);
            flags.push("every truncation vertex is ideal; the sharper upper bound applies".into());
            breakdown.push(Contribution {
                component: "full truncation".into(),
                theorem: "general_upper_all_ideal".into(),
                value: sharper,
            });
            sharper
        } else {
            literal
        }
    };

    let small = p
        .labels()
        .values()
        .all(|a| a.canonical_cmp(Angle::pi_over(3)) != Ordering::Greater);
    let mut lower = if small && counts.vertices >= 8 {
        let value = pi3_lower(counts.vertices, counts.prismatic3)?;
        breakdown.push(Contribution {
            component: "input".into(),
            theorem: "pi3_lower".into(),
            value,
        });
        value
    } else if let Some(n) = prism {
        if p.labels().values().any(|a| in_forbidden_gap(*a)) {
            flags.push(
                "prism has labels strictly between pi/3 and pi/2; the prism lower bound does not apply"
                    .into(),
            );
            0.0
        } else {
            let value = prism_lower(n)?;
            breakdown.push(Contribution {
                component: format!("{n}-prism"),
                theorem: "prism_lower".into(),
                value,
            });
            value
        }
    } else {
        shadow_pass(&dual, options, &mut breakdown, &mut flags)?
    };

    if counts.prismatic4 == 0 {
        let whole = lower_with_m3(counts.degree4, counts.degree3, counts.prismatic3);
        if whole > lower {
            flags.push(format!(
                "whole-graph census bound {whole:.6} beats the assembled {lower:.6}; reporting the larger"
            ));
            breakdown.push(Contribution {
                component: "whole graph".into(),
                theorem: "lower_with_m3".into(),
                value: whole,
            });
            lower = whole;
        }
    }

    Ok(BoundReport { lower, upper, breakdown, flags, counts })
}

fn in_forbidden_gap(a: Angle) -> bool {
    a.canonical_cmp(Angle::pi_over(3)) == Ordering::Greater
        && a.canonical_cmp(Angle::right_angle()) == Ordering::Less
}

/// Split along every nontrivial prismatic 3-circuit and decompose the
/// right-angled shadow, then price the pieces: atoroidal ones as
/// right-angled polyhedra (after restoring the input's labels, with π/2 on
/// every cut edge, and checking realizability), fibered ones as prism
/// regions counted by the input vertices they retain.
fn shadow_pass(
    dual: &DualGraph,
    options: &DecomposeOptions,
    breakdown: &mut Vec<Contribution>,
    flags: &mut Vec<String>,
) -> Result<f64, EstimateError> {
    let shadow = right_angled_shadow(dual);
    let result = decompose(&shadow, options)?;

    if !result.spherical_splits.is_empty() {
        flags.push(format!(
            "turnover stage cut {} circuit(s)",
            result.spherical_splits.len()
        ));
    }
    let toroidal = result
        .trace
        .iter()
        .filter(|s| matches!(s, Step::FourCircuitSplit { .. }))
        .count();
    if toroidal > 0 {
        flags.push(format!("toroidal stage performed {toroidal} split(s)"));
    }
    for (before, after) in result.descent_violations() {
        flags.push(format!("complexity did not drop at a split ({before} -> {after})"));
    }

    let mut total = 0.0;
    for (i, piece) in result.atoroidal.iter().enumerate() {
        let restored = restore_labels(piece, dual.labels());
        let verdict = check_andreev(&restored.primal()?)?;
        let kinds = piece.cap_collapsed_counts()?;
        let raw = right_angled_lower(kinds.ideal, kinds.finite);
        let value = if !verdict.realizable {
            flags.push(format!(
                "atoroidal piece {i} fails the realizability conditions; its contribution is dropped"
            ));
            0.0
        } else if raw < 0.0 {
            flags.push(format!("atoroidal piece {i}: census bound is negative, clamped to 0"));
            0.0
        } else {
            raw
        };
        breakdown.push(Contribution {
            component: format!("atoroidal piece {i}: {} ideal + {} finite", kinds.ideal, kinds.finite),
            theorem: "right_angled_lower".into(),
            value,
        });
        total += value;
    }
    for (i, piece) in result.seifert.iter().enumerate() {
        let vertices = original_vertex_count(piece);
        let estimate = prism_region_lower(vertices, false, None)?;
        if let Some(note) = estimate.note {
            flags.push(format!("prism region {i}: {note}"));
        }
        breakdown.push(Contribution {
            component: format!("prism region {i}: {vertices} vertices"),
            theorem: "prism_region_lower".into(),
            value: estimate.value,
        });
        total += estimate.value;
    }
    Ok(total)
}

/// The same graph with every label read as π/2. Cut apexes keep their
/// origins, so the piece counting downstream still knows which faces are
/// caps.
fn right_angled_shadow(dual: &DualGraph) -> DualGraph {
    let labels: BTreeMap<Edge, Angle> =
        dual.mesh().edges().map(|e| (e, Angle::right_angle())).collect();
    let origins = dual.vertices().iter().map(|&v| (v, dual.origin(v))).collect();
    DualGraph::from_parts(dual.mesh().faces().to_vec(), labels, origins)
        .expect("the shadow reuses a valid mesh")
}

/// Put the input's labels back on a piece of the shadow decomposition:
/// edges between original faces take their original angle, every edge at a
/// cut apex takes π/2.
fn restore_labels(piece: &DualGraph, original: &BTreeMap<Edge, Angle>) -> DualGraph {
    let labels: BTreeMap<Edge, Angle> = piece
        .mesh()
        .edges()
        .map(|e| {
            let (u, v) = e.endpoints();
            let angle = match (piece.origin(u), piece.origin(v)) {
                (DualVertexOrigin::Face(a), DualVertexOrigin::Face(b)) => original
                    .get(&Edge::new(a, b))
                    .copied()
                    .expect("faces adjacent in a piece were adjacent in the input"),
                _ => Angle::right_angle(),
            };
            (e, angle)
        })
        .collect();
    let origins = piece.vertices().iter().map(|&v| (v, piece.origin(v))).collect();
    DualGraph::from_parts(piece.mesh().faces().to_vec(), labels, origins)
        .expect("relabeling reuses a valid mesh")
}

/// Vertices of a piece that come from the input polyhedron: exactly the
/// dual faces that touch no cut apex.
fn original_vertex_count(piece: &DualGraph) -> usize {
    piece
        .mesh()
        .faces()
        .iter()
        .filter(|f| !f.iter().any(|&d| piece.is_apex(d)))
        .count()
}
