//! Which labelings are the dihedral angles of a hyperbolic polyhedron.
//!
//! Andreev's theorem answers this combinatorially for non-obtuse labelings
//! with more than four vertices: a handful of inequalities on angle sums
//! around vertices, around prismatic circuits, and across ideal pinch points
//! decide realizability as a finite-volume polyhedron. A weaker set of three
//! conditions characterizes the generalized polyhedra whose vertices may
//! also be hyperideal. Both checkers report every violated condition with
//! the edges and vertices that witness it, not just a yes/no.

use std::cmp::Ordering;
use std::collections::BTreeMap;

use crate::angle::{Angle, AngleSum};
use crate::circuits::prismatic_circuits;
use crate::dual::DualGraph;
use crate::mesh::Edge;
use crate::polyhedron::{LabeledPolyhedron, VertexLink};

#[derive(Debug, thiserror::Error, Clone, PartialEq, Eq)]
pub enum AndreevError {
    #[error("the characterization needs more than 4 vertices, got {0}")]
    TooFewVertices(usize),
    #[error("triangular prisms fall outside the generalized characterization")]
    IsTriangularPrism,
}

/// The individual conditions of the finite-volume characterization, in its
/// traditional order. The generalized characterization reuses the last four.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, serde::Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Condition {
    /// Every vertex meets 3 or 4 edges. Enforced at construction, so it can
    /// never appear in a report; listed for completeness.
    VertexDegrees,
    /// Three edges sharing a vertex have angle sum at least pi.
    VertexTripleSum,
    /// Four edges sharing a vertex have angle sum exactly 2 pi.
    VertexQuadSum,
    /// A prismatic 3-circuit has angle sum strictly below pi.
    Prismatic3Sum,
    /// A prismatic 4-circuit has angle sum strictly below 2 pi.
    Prismatic4Sum,
    /// On a triangular prism, the six edges along the two triangular faces
    /// have angle sum strictly below 3 pi.
    TriangularPrismCaps,
    /// Two faces touching in a single ideal vertex, both adjacent to a third
    /// face along edges missing that vertex: those two edges sum below pi.
    IdealPinch,
}

#[derive(Clone, Debug, PartialEq, serde::Serialize)]
pub struct Violation {
    pub condition: Condition,
    /// The edges whose labels make up the offending sum.
    pub edges: Vec<Edge>,
    /// The vertex at stake, for the vertex-local and pinch conditions.
    pub vertex: Option<usize>,
    /// The offending angle sum, in radians.
    pub sum: f64,
}

#[derive(Clone, Debug, serde::Serialize)]
pub struct RealizabilityReport {
    pub realizable: bool,
    pub violations: Vec<Violation>,
    /// Link classification per vertex: spherical links realize as finite
    /// vertices, Euclidean as ideal, hyperbolic as hyperideal.
    pub links: Vec<VertexLink>,
    pub finite_volume: bool,
    /// True when some verdict came down to the floating-point tolerance band
    /// rather than exact arithmetic.
    pub borderline: bool,
}

impl RealizabilityReport {
    pub fn violated_conditions(&self) -> Vec<Condition> {
        let mut out: Vec<Condition> = self.violations.iter().map(|v| v.condition).collect();
        out.sort();
        out.dedup();
        out
    }

    pub fn ideal_vertex_count(&self) -> usize {
        self.links.iter().filter(|l| l.is_ideal()).count()
    }

    pub fn finite_vertex_count(&self) -> usize {
        self.links
            .iter()
            .filter(|l| l.class == crate::angle::GeometryClass::Spherical)
            .count()
    }
}

/// Decide realizability as a finite-volume hyperbolic polyhedron.
pub fn check_andreev(poly: &LabeledPolyhedron) -> Result<RealizabilityReport, AndreevError> {
    if poly.vertex_count() <= 4 {
        return Err(AndreevError::TooFewVertices(poly.vertex_count()));
    }
    let links = poly.links();
    let mut violations = Vec::new();
    let mut borderline = links.iter().any(|l| l.borderline);

    vertex_sum_violations(poly, &mut violations, &mut borderline);
    circuit_violations(poly, &mut violations, &mut borderline);
    triangular_prism_violation(poly, &mut violations, &mut borderline);

    // For this characterization a degree-4 vertex of the realization is
    // always ideal; a degree-3 vertex is ideal exactly when its angle sum
    // lands on pi.
    let ideal = |v: usize| poly.degree(v) == 4 || links[v].is_ideal();
    pinch_violations(poly, &ideal, &mut violations, &mut borderline);

    let realizable = violations.is_empty();
    Ok(RealizabilityReport {
        realizable,
        violations,
        links,
        // Everything this characterization accepts has finite volume.
        finite_volume: realizable,
        borderline,
    })
}

/// Decide realizability as a generalized hyperbolic polyhedron, where
/// vertices may also be hyperideal. Only the circuit and pinch conditions
/// remain; vertex angle sums instead determine the vertex type.
pub fn check_generalized(poly: &LabeledPolyhedron) -> Result<RealizabilityReport, AndreevError> {
    if poly.vertex_count() <= 4 {
        return Err(AndreevError::TooFewVertices(poly.vertex_count()));
    }
    if poly.is_triangular_prism() {
        return Err(AndreevError::IsTriangularPrism);
    }
    let links = poly.links();
    let mut violations = Vec::new();
    let mut borderline = links.iter().any(|l| l.borderline);

    circuit_violations(poly, &mut violations, &mut borderline);
    let ideal = |v: usize| links[v].is_ideal();
    pinch_violations(poly, &ideal, &mut violations, &mut borderline);

    let realizable = violations.is_empty();
    let hyperideal = links.iter().any(|l| l.is_hyperideal());
    Ok(RealizabilityReport {
        realizable,
        violations,
        links,
        finite_volume: realizable && !hyperideal,
        borderline,
    })
}

fn vertex_sum_violations(
    poly: &LabeledPolyhedron,
    violations: &mut Vec<Violation>,
    borderline: &mut bool,
) {
    for v in 0..poly.vertex_count() {
        let edges = poly.edges_at(v);
        // Any three edges sharing the vertex must reach pi. At a degree-4
        // vertex that is four triples, each one redundant once the full sum
        // hits 2 pi, but stated this way the check stays literal.
        for skip in 0..=edges.len() {
            let triple: Vec<Edge> = edges
                .iter()
                .enumerate()
                .filter(|(i, _)| edges.len() == 3 || *i != skip)
                .map(|(_, &e)| e)
                .collect();
            if triple.len() != 3 {
                continue;
            }
            let sum = AngleSum::of(triple.iter().map(|&e| label(poly, e)));
            let cmp = sum.compare_to_pi_multiple(1, 1);
            *borderline |= cmp.borderline;
            if cmp.ordering == Ordering::Less {
                violations.push(Violation {
                    condition: Condition::VertexTripleSum,
                    edges: triple,
                    vertex: Some(v),
                    sum: sum.radians(),
                });
            }
            if edges.len() == 3 {
                break;
            }
        }
        if edges.len() == 4 {
            let sum = AngleSum::of(edges.iter().map(|&e| label(poly, e)));
            let cmp = sum.compare_to_pi_multiple(2, 1);
            *borderline |= cmp.borderline;
            if cmp.ordering != Ordering::Equal {
                violations.push(Violation {
                    condition: Condition::VertexQuadSum,
                    edges,
                    vertex: Some(v),
                    sum: sum.radians(),
                });
            }
        }
    }
}

fn circuit_violations(
    poly: &LabeledPolyhedron,
    violations: &mut Vec<Violation>,
    borderline: &mut bool,
) {
    let dual = DualGraph::of(poly);
    let crossed = crossing_map(poly);
    for k in [3usize, 4] {
        for circuit in prismatic_circuits(&dual, k) {
            *borderline |= circuit.is_borderline();
            if circuit.class() == crate::angle::GeometryClass::Hyperbolic {
                continue;
            }
            let edges: Vec<Edge> = circuit.edges().iter().map(|e| crossed[e]).collect();
            let sum = AngleSum::of(edges.iter().map(|&e| label(poly, e)));
            violations.push(Violation {
                condition: if k == 3 {
                    Condition::Prismatic3Sum
                } else {
                    Condition::Prismatic4Sum
                },
                edges,
                vertex: None,
                sum: sum.radians(),
            });
        }
    }
}

fn triangular_prism_violation(
    poly: &LabeledPolyhedron,
    violations: &mut Vec<Violation>,
    borderline: &mut bool,
) {
    let Some(form) = poly.prism_form() else { return };
    if form.n != 3 {
        return;
    }
    let mut edges = Vec::new();
    for cap in form.caps {
        let face = &poly.faces()[cap];
        for t in 0..face.len() {
            edges.push(Edge::new(face[t], face[(t + 1) % face.len()]));
        }
    }
    let sum = AngleSum::of(edges.iter().map(|&e| label(poly, e)));
    let cmp = sum.compare_to_pi_multiple(3, 1);
    *borderline |= cmp.borderline;
    if cmp.ordering != Ordering::Less {
        violations.push(Violation {
            condition: Condition::TriangularPrismCaps,
            edges,
            vertex: None,
            sum: sum.radians(),
        });
    }
}

fn pinch_violations(
    poly: &LabeledPolyhedron,
    ideal: &dyn Fn(usize) -> bool,
    violations: &mut Vec<Violation>,
    borderline: &mut bool,
) {
    let faces = poly.faces();
    for (j, face) in faces.iter().enumerate() {
        let s = face.len();
        // Each boundary edge of the middle face, with the face across it.
        let boundary: Vec<(Edge, usize)> = (0..s)
            .map(|t| {
                let e = Edge::new(face[t], face[(t + 1) % s]);
                let [a, b] = poly.mesh().faces_of_edge(e).expect("face edge");
                (e, if a == j { b } else { a })
            })
            .collect();
        for x in 0..s {
            for y in x + 1..s {
                let (e1, fi) = boundary[x];
                let (e2, fk) = boundary[y];
                if fi == fk {
                    continue;
                }
                let shared: Vec<usize> = faces[fi]
                    .iter()
                    .filter(|v| faces[fk].contains(v))
                    .copied()
                    .collect();
                let [v] = shared[..] else { continue };
                if !ideal(v) || e1.touches(v) || e2.touches(v) {
                    continue;
                }
                let sum = AngleSum::of([label(poly, e1), label(poly, e2)]);
                let cmp = sum.compare_to_pi_multiple(1, 1);
                *borderline |= cmp.borderline;
                if cmp.ordering != Ordering::Less {
                    violations.push(Violation {
                        condition: Condition::IdealPinch,
                        edges: vec![e1, e2],
                        vertex: Some(v),
                        sum: sum.radians(),
                    });
                }
            }
        }
    }
}

fn label(poly: &LabeledPolyhedron, e: Edge) -> Angle {
    let (u, v) = e.endpoints();
    poly.label(u, v).expect("every edge is labeled")
}

fn crossing_map(poly: &LabeledPolyhedron) -> BTreeMap<Edge, Edge> {
    poly.edges()
        .map(|e| {
            let [f, g] = poly.mesh().faces_of_edge(e).expect("edge of the polyhedron");
            (Edge::new(f, g), e)
        })
        .collect()
}
