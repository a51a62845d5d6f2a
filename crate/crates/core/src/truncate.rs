//! Corner surgery: truncating corners into faces, extending triangular faces
//! back into corners, and the full truncation that rebuilds a polyhedron over
//! its edge midpoints.
//!
//! Truncation and extension are combinatorial shadows of the geometric moves
//! on generalized polyhedra: a hyperideal corner is cut by its polar plane,
//! leaving a right-angled polygon, and a triangular face whose three
//! neighbors close up into a prismatic circuit can degenerate back to a
//! corner. Full truncation is the coarser move behind the general upper
//! bound: every plain trivalent corner is replaced by the triangle of its
//! edge midpoints, an edge between two such corners collapses to a single
//! degree-four midpoint, and the result carries π/2 everywhere.

use std::collections::{BTreeMap, BTreeSet};

use crate::andreev::{check_andreev, RealizabilityReport};
use crate::angle::Angle;
use crate::circuits::{prismatic_circuits, PrismaticCircuit};
use crate::dual::DualGraph;
use crate::mesh::Edge;
use crate::polyhedron::LabeledPolyhedron;

/// Renumber to a dense vertex range and rebuild, which re-runs the full
/// validity suite on the rewritten complex.
fn rebuild(faces: Vec<Vec<usize>>, labels: Vec<((usize, usize), Angle)>) -> LabeledPolyhedron {
    let used: BTreeSet<usize> = faces.iter().flatten().copied().collect();
    let rename: BTreeMap<usize, usize> = used.into_iter().zip(0..).collect();
    let faces = faces
        .iter()
        .map(|face| face.iter().map(|v| rename[v]).collect())
        .collect();
    let labels = labels
        .into_iter()
        .map(|((u, v), a)| ((rename[&u], rename[&v]), a));
    LabeledPolyhedron::new(faces, labels).expect("corner rewrites preserve polyhedral validity")
}

/// Collapse runs of equal vertices in a face cycle, including across the
/// wrap-around.
fn dedup_cyclic(mut cycle: Vec<usize>) -> Vec<usize> {
    cycle.dedup();
    if cycle.len() > 1 && cycle.first() == cycle.last() {
        cycle.pop();
    }
    cycle
}

/// Clip the chosen corners. Every clipped vertex is replaced by a polygon
/// with one fresh vertex per incident edge; the stub of a clipped edge keeps
/// the original label (between two fresh vertices if both endpoints were
/// clipped), and the polygon edges carry π/2.
pub fn truncate_vertices(p: &LabeledPolyhedron, chosen: &BTreeSet<usize>) -> LabeledPolyhedron {
    if chosen.is_empty() {
        return p.clone();
    }
    assert!(
        chosen.iter().all(|&v| v < p.vertex_count()),
        "clipped corners must be vertices of the polyhedron"
    );

    let mut next = p.vertex_count();
    let mut stub: BTreeMap<(usize, Edge), usize> = BTreeMap::new();
    for &v in chosen {
        for e in p.edges_at(v) {
            stub.insert((v, e), next);
            next += 1;
        }
    }

    // Each face traverses a clipped corner as in-stub then out-stub; the
    // reversed chain of those pairs is the clipping polygon.
    let mut faces = Vec::with_capacity(p.face_count() + chosen.len());
    let mut successor: BTreeMap<usize, BTreeMap<usize, usize>> =
        chosen.iter().map(|&v| (v, BTreeMap::new())).collect();
    for face in p.faces() {
        let len = face.len();
        let mut out = Vec::with_capacity(len + 2);
        for (i, &x) in face.iter().enumerate() {
            if !chosen.contains(&x) {
                out.push(x);
                continue;
            }
            let a = stub[&(x, Edge::new(face[(i + len - 1) % len], x))];
            let b = stub[&(x, Edge::new(x, face[(i + 1) % len]))];
            out.push(a);
            out.push(b);
            successor.get_mut(&x).expect("chosen corner").insert(a, b);
        }
        faces.push(out);
    }
    for &v in chosen {
        faces.push(reversed_chain(&successor[&v]));
    }

    let right = Angle::right_angle();
    let mut labels: Vec<((usize, usize), Angle)> = Vec::new();
    for (&e, &a) in p.labels() {
        let (u, v) = e.endpoints();
        let nu = if chosen.contains(&u) { stub[&(u, e)] } else { u };
        let nv = if chosen.contains(&v) { stub[&(v, e)] } else { v };
        labels.push(((nu, nv), a));
    }
    for &v in chosen {
        for (&a, &b) in &successor[&v] {
            labels.push(((a, b), right));
        }
    }
    rebuild(faces, labels)
}

/// Walk the directed pairs into their unique cycle and reverse it, so the new
/// face runs against the surrounding faces.
fn reversed_chain(pairs: &BTreeMap<usize, usize>) -> Vec<usize> {
    let start = *pairs.keys().next().expect("a corner lies on at least one face");
    let mut cycle = vec![start];
    let mut at = pairs[&start];
    while at != start {
        cycle.push(at);
        at = pairs[&at];
    }
    assert_eq!(cycle.len(), pairs.len(), "corner pairs chain into one cycle");
    cycle.reverse();
    cycle
}

/// Truncate every corner whose link is hyperbolic. Without such corners the
/// polyhedron comes back untouched.
pub fn truncation(p: &LabeledPolyhedron) -> LabeledPolyhedron {
    let chosen: BTreeSet<usize> = (0..p.vertex_count())
        .filter(|&v| p.vertex_link(v).is_hyperideal())
        .collect();
    truncate_vertices(p, &chosen)
}

/// Contract the triangular faces of the input that are parallel to prismatic
/// 3-circuits back to corners. Each corner picks up the labels of the three
/// edges its circuit crossed.
///
/// This is a single pass over the input's own faces — triangles that only
/// appear once other faces have shrunk are not touched. Candidates are
/// re-checked as the pass goes: when two triangles are parallel to the same
/// circuit (the two caps of a triangular prism), contracting the first
/// degenerates the other's circuit into a dual face, and it stays.
pub fn extension(p: &LabeledPolyhedron) -> LabeledPolyhedron {
    let mut current = p.clone();
    // Descending order, so contraction never shifts a pending candidate.
    for t in parallel_triangles(p).into_iter().rev() {
        if is_parallel_triangle(&current, &DualGraph::of(&current), t) {
            current = contract_face(&current, t);
        }
    }
    current
}

/// The faces that are triangular and parallel to a prismatic 3-circuit, in
/// face order. The faces of a simplex never qualify — their neighbor cycles
/// bound dual faces.
fn parallel_triangles(p: &LabeledPolyhedron) -> Vec<usize> {
    let dual = DualGraph::of(p);
    (0..p.face_count())
        .filter(|&t| is_parallel_triangle(p, &dual, t))
        .collect()
}

fn is_parallel_triangle(p: &LabeledPolyhedron, dual: &DualGraph, t: usize) -> bool {
    let face = &p.faces()[t];
    if face.len() != 3 {
        return false;
    }
    let neighbors: Vec<usize> = (0..3)
        .map(|i| {
            let e = Edge::new(face[i], face[(i + 1) % 3]);
            let [f, g] = p.mesh().faces_of_edge(e).expect("face edge");
            if f == t {
                g
            } else {
                f
            }
        })
        .collect();
    PrismaticCircuit::from_cycle(dual, &neighbors).is_ok()
}

/// Contract the triangular face `t` to a fresh corner. Its three corners are
/// trivalent whenever the parallel-circuit test passed, so only the triangle
/// itself and its three neighbor faces are touched.
fn contract_face(p: &LabeledPolyhedron, t: usize) -> LabeledPolyhedron {
    let tri: BTreeSet<usize> = p.faces()[t].iter().copied().collect();
    let w = p.vertex_count();

    let mut faces = Vec::with_capacity(p.face_count() - 1);
    for (i, face) in p.faces().iter().enumerate() {
        if i == t {
            continue;
        }
        let mapped = face
            .iter()
            .map(|&x| if tri.contains(&x) { w } else { x })
            .collect();
        faces.push(dedup_cyclic(mapped));
    }

    let mut labels = Vec::new();
    for (&e, &a) in p.labels() {
        let (u, v) = e.endpoints();
        match (tri.contains(&u), tri.contains(&v)) {
            (true, true) => {}
            (true, false) => labels.push(((w, v), a)),
            (false, true) => labels.push(((u, w), a)),
            (false, false) => labels.push(((u, v), a)),
        }
    }
    rebuild(faces, labels)
}

/// Extension followed by truncation. On a polyhedron whose parallel
/// triangles carry π/2 on their own edges and hyperbolic sums across their
/// circuits — which realizability forces — this is the identity; otherwise
/// it normalizes: parallel triangles are swallowed and hyperideal corners
/// are cut.
pub fn truncate_and_extend(p: &LabeledPolyhedron) -> LabeledPolyhedron {
    truncation(&extension(p))
}

/// How the vertices and edges fall into the full-truncation partition:
/// degree-four vertices, the trivalent vertices walled in by them, and the
/// plain trivalent rest, plus the two edge counts the upper bound reads.
#[derive(Clone, Copy, Debug, PartialEq, Eq, serde::Serialize)]
pub struct TruncationCounts {
    pub n2: usize,
    pub n3: usize,
    pub n4: usize,
    pub e33: usize,
    pub e34: usize,
}

/// Replace every plain trivalent corner by the triangle of its edge
/// midpoints and relabel everything π/2.
///
/// A vertex is plain when it has degree three and some neighbor of degree
/// three; the walled-in trivalent vertices (all three neighbors of degree
/// four) and the degree-four vertices survive unchanged. An edge between two
/// plain corners is collapsed: both replacement triangles use the same
/// midpoint, which ends up with degree four and an ideal link, while the
/// midpoint of an edge running from a plain corner to a degree-four vertex
/// keeps degree three. The counts of those two midpoint kinds — `e33` and
/// `e34` — together with the surviving vertices are what the volume bound
/// consumes.
pub fn full_truncation(p: &LabeledPolyhedron) -> (LabeledPolyhedron, TruncationCounts) {
    let deg4: BTreeSet<usize> = (0..p.vertex_count()).filter(|&v| p.degree(v) == 4).collect();
    let walled: BTreeSet<usize> = (0..p.vertex_count())
        .filter(|&v| {
            p.degree(v) == 3 && p.mesh().neighbors(v).iter().all(|u| deg4.contains(u))
        })
        .collect();
    let plain: BTreeSet<usize> = (0..p.vertex_count())
        .filter(|&v| p.degree(v) == 3 && !walled.contains(&v))
        .collect();

    let mut e33 = 0;
    let mut e34 = 0;
    for e in p.edges() {
        let (u, v) = e.endpoints();
        match [u, v].iter().filter(|x| plain.contains(x)).count() {
            2 => e33 += 1,
            1 if deg4.contains(&u) || deg4.contains(&v) => e34 += 1,
            _ => {}
        }
    }
    let counts = TruncationCounts {
        n2: walled.len(),
        n3: plain.len(),
        n4: deg4.len(),
        e33,
        e34,
    };
    if plain.is_empty() {
        return (p.with_right_angles(), counts);
    }

    let mut next = p.vertex_count();
    let mut midpoint: BTreeMap<Edge, usize> = BTreeMap::new();
    for e in p.edges() {
        let (u, v) = e.endpoints();
        if plain.contains(&u) || plain.contains(&v) {
            midpoint.insert(e, next);
            next += 1;
        }
    }

    // Same scheme as corner clipping, except that the waypoint lives on the
    // edge rather than on a (corner, edge) pair, which is exactly what merges
    // the two triangles along a collapsed edge.
    let mut faces = Vec::with_capacity(p.face_count() + plain.len());
    let mut successor: BTreeMap<usize, BTreeMap<usize, usize>> =
        plain.iter().map(|&v| (v, BTreeMap::new())).collect();
    for face in p.faces() {
        let len = face.len();
        let mut out = Vec::with_capacity(2 * len);
        for (i, &x) in face.iter().enumerate() {
            if !plain.contains(&x) {
                out.push(x);
                continue;
            }
            let a = midpoint[&Edge::new(face[(i + len - 1) % len], x)];
            let b = midpoint[&Edge::new(x, face[(i + 1) % len])];
            out.push(a);
            out.push(b);
            successor.get_mut(&x).expect("plain corner").insert(a, b);
        }
        faces.push(dedup_cyclic(out));
    }
    for &v in &plain {
        faces.push(reversed_chain(&successor[&v]));
    }

    let right = Angle::right_angle();
    let mut edges: BTreeSet<Edge> = BTreeSet::new();
    for face in &faces {
        for i in 0..face.len() {
            edges.insert(Edge::new(face[i], face[(i + 1) % face.len()]));
        }
    }
    let labels = edges.into_iter().map(|e| (e.endpoints(), right)).collect();
    (rebuild(faces, labels), counts)
}

#[derive(Debug, thiserror::Error)]
pub enum UniformizeError {
    #[error("uniformization needs at least 6 faces, got {0}")]
    TooFewFaces(usize),
    #[error("label {angle} on edge {edge:?} is not of the form pi/n")]
    NotCoxeter { edge: Edge, angle: Angle },
    #[error("a prismatic 3-circuit survives through faces {0:?}")]
    HasPrismatic3Circuit(PrismaticCircuit),
}

/// Flatten a Coxeter labeling: π/2 stays, every other label becomes π/3.
///
/// On a polyhedron with at least six faces and no prismatic 3-circuit the
/// flattened labeling is realizable again whenever the input was, since any
/// circuit sum that was below its threshold had a label of at most π/3
/// contributing to it. The returned report is the checker's verdict on the
/// result, so callers see the certificate rather than trusting the argument.
pub fn uniformize_labeling(
    p: &LabeledPolyhedron,
) -> Result<(LabeledPolyhedron, RealizabilityReport), UniformizeError> {
    if p.face_count() < 6 {
        return Err(UniformizeError::TooFewFaces(p.face_count()));
    }
    for (&edge, &angle) in p.labels() {
        if angle.coxeter_order().is_none_or(|n| n < 2) {
            return Err(UniformizeError::NotCoxeter { edge, angle });
        }
    }
    if let Some(circuit) = prismatic_circuits(&DualGraph::of(p), 3).into_iter().next() {
        return Err(UniformizeError::HasPrismatic3Circuit(circuit));
    }

    let labels = p.labels().iter().map(|(&e, &a)| {
        let flat = if a.coxeter_order() == Some(2) { a } else { Angle::pi_over(3) };
        (e.endpoints(), flat)
    });
    let relabeled = LabeledPolyhedron::new(p.faces().to_vec(), labels)
        .expect("flattening stays inside the admissible label band");
    let report = check_andreev(&relabeled).expect("six faces leave more than four vertices");
    Ok((relabeled, report))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::shapes;

    fn right() -> Angle {
        Angle::right_angle()
    }

    #[test]
    fn clipping_one_corner_of_a_simplex_gives_a_triangular_prism() {
        let simplex = shapes::tetrahedron(Angle::pi_over(6));
        let clipped = truncate_vertices(&simplex, &BTreeSet::from([0]));
        assert!(clipped.is_triangular_prism());
        assert_eq!(clipped.vertex_count(), 6);
        let sixths = clipped
            .labels()
            .values()
            .filter(|a| a.is_pi_multiple(1, 6))
            .count();
        let rights = clipped.labels().values().filter(|a| a.is_right_angle()).count();
        // Three stubs keep pi/6, the three untouched far edges keep pi/6, and
        // the clipping triangle contributes three right angles.
        assert_eq!((sixths, rights), (6, 3));
    }

    #[test]
    fn truncation_clips_exactly_the_hyperideal_corners() {
        // Every corner of the pi/6 simplex has angle sum pi/2, so all four
        // are cut and the result is the truncated-simplex graph.
        let flat = shapes::tetrahedron(Angle::pi_over(6));
        let cut = truncation(&flat);
        assert_eq!(cut.vertex_count(), 12);
        assert_eq!(cut.face_count(), 8);
        assert_eq!(cut.faces().iter().filter(|f| f.len() == 3).count(), 4);
        assert_eq!(cut.faces().iter().filter(|f| f.len() == 6).count(), 4);
        assert!((0..cut.vertex_count()).all(|v| !cut.vertex_link(v).is_hyperideal()));

        // A spherical-cornered tower and the dodecahedron pass through
        // untouched, faces and ids included.
        for shape in [
            shapes::prism_tower(3, &[Angle::pi_over(4)]),
            shapes::dodecahedron_right_angled(),
        ] {
            let same = truncation(&shape);
            assert_eq!(same.faces(), shape.faces());
            assert_eq!(same.labels(), shape.labels());
        }
    }

    #[test]
    fn extension_restores_a_clipped_cube_corner() {
        let cube = shapes::cube_right_angled();
        let clipped = truncate_vertices(&cube, &BTreeSet::from([0]));
        assert_eq!(clipped.face_count(), 7);
        let restored = extension(&clipped);
        assert_eq!(
            DualGraph::of(&restored).canonical_certificate(),
            DualGraph::of(&cube).canonical_certificate()
        );
    }

    #[test]
    fn extension_contracts_each_parallel_triangle_of_the_input_once() {
        // Both caps of a triangular prism are parallel to the same lateral
        // circuit. Contracting the first leaves a simplex and degenerates the
        // second cap's circuit into a dual face, so it survives the pass.
        let eaten = extension(&shapes::prism_tower(3, &[right()]));
        assert!(eaten.is_simplex());
        assert!(eaten.labels().values().all(|a| a.is_right_angle()));

        // The twice-truncated prism contracts exactly its two truncation
        // triangles; the prism caps it uncovers are not faces of the input.
        let eaten = extension(&shapes::truncated_prism_right_angled());
        assert!(eaten.is_triangular_prism());
        assert!(eaten.labels().values().all(|a| a.is_right_angle()));
    }

    #[test]
    fn extend_then_truncate_round_trips_hyperideal_truncations() {
        // A pi/4 tower's cap is parallel to a hyperbolic circuit (sum 3pi/4),
        // so the contracted corner is hyperideal and gets cut right back.
        let tower = shapes::prism_tower(3, &[Angle::pi_over(4)]);
        let truncated_simplex = truncation(&shapes::tetrahedron(Angle::pi_over(6)));
        for shape in [&tower, &truncated_simplex] {
            let back = truncate_and_extend(shape);
            assert_eq!(
                DualGraph::of(&back).canonical_certificate(),
                DualGraph::of(shape).canonical_certificate()
            );
        }

        // On a polyhedron that is not in truncated form the move normalizes,
        // and a second application changes nothing further.
        let flat = shapes::tetrahedron(Angle::pi_over(6));
        let normalized = truncate_and_extend(&flat);
        assert_eq!(
            DualGraph::of(&normalized).canonical_certificate(),
            DualGraph::of(&truncated_simplex).canonical_certificate()
        );
        let again = truncate_and_extend(&normalized);
        assert_eq!(
            DualGraph::of(&again).canonical_certificate(),
            DualGraph::of(&normalized).canonical_certificate()
        );
    }

    #[test]
    fn full_truncation_of_a_prism_is_the_ideal_rectification() {
        for n in 3..=6 {
            let prism = shapes::n_prism(n, shapes::PrismLabels::pi3_horizontal(n));
            let (hat, counts) = full_truncation(&prism);
            assert_eq!(
                counts,
                TruncationCounts { n2: 0, n3: 2 * n, n4: 0, e33: 3 * n, e34: 0 }
            );
            assert_eq!(hat.vertex_count(), 3 * n);
            assert_eq!(hat.face_count(), 3 * n + 2);
            assert!(hat.labels().values().all(|a| a.is_right_angle()));
            assert!((0..hat.vertex_count()).all(|v| hat.vertex_link(v).is_ideal()));

            let report = check_andreev(&hat).unwrap();
            assert!(report.realizable, "rectified {n}-prism: {:?}", report.violations);
            assert!(report.finite_volume);
            assert_eq!(report.ideal_vertex_count(), 3 * n);
        }
    }

    #[test]
    fn full_truncation_keeps_an_all_degree_four_graph() {
        let faces = vec![
            vec![0, 1, 2],
            vec![0, 2, 3],
            vec![0, 3, 4],
            vec![0, 4, 1],
            vec![5, 2, 1],
            vec![5, 3, 2],
            vec![5, 4, 3],
            vec![5, 1, 4],
        ];
        let edges = [
            (0, 1), (0, 2), (0, 3), (0, 4),
            (1, 2), (2, 3), (3, 4), (4, 1),
            (5, 1), (5, 2), (5, 3), (5, 4),
        ];
        let octahedron =
            LabeledPolyhedron::new(faces, edges.map(|e| (e, Angle::pi_over(3)))).unwrap();

        let (hat, counts) = full_truncation(&octahedron);
        assert_eq!(counts, TruncationCounts { n2: 0, n3: 0, n4: 6, e33: 0, e34: 0 });
        assert_eq!(hat.faces(), octahedron.faces());
        assert!(hat.labels().values().all(|a| a.is_right_angle()));
    }

    #[test]
    fn full_truncation_counts_track_corner_clips() {
        // Two stacked middle rings make six degree-four vertices joined by
        // nine edges, with three uprights to each plain cap ring.
        let mut shape = shapes::prism_tower(3, &[right(), right(), right()]);
        assert_eq!(
            full_truncation(&shape).1,
            TruncationCounts { n2: 0, n3: 6, n4: 6, e33: 6, e34: 6 }
        );

        // Clipping a plain corner trades it for three midpoint-triangle
        // corners and three fresh plain-plain edges, and touches nothing
        // else, so the counts march in lockstep.
        for clip in 1..=19 {
            let corner = (0..shape.vertex_count())
                .find(|&v| {
                    shape.degree(v) == 3
                        && shape.mesh().neighbors(v).iter().any(|&u| shape.degree(u) == 3)
                })
                .expect("a plain corner survives clipping");
            shape = truncate_vertices(&shape, &BTreeSet::from([corner]));
            let counts = full_truncation(&shape).1;
            assert_eq!(
                counts,
                TruncationCounts {
                    n2: 0,
                    n3: 6 + 2 * clip,
                    n4: 6,
                    e33: 6 + 3 * clip,
                    e34: 6,
                }
            );
        }
        assert_eq!(
            full_truncation(&shape).1,
            TruncationCounts { n2: 0, n3: 44, n4: 6, e33: 63, e34: 6 }
        );
    }

    #[test]
    fn uniformize_keeps_right_angles_and_flattens_the_rest() {
        let dodecahedron = shapes::dodecahedron_right_angled();
        let (same, report) = uniformize_labeling(&dodecahedron).unwrap();
        assert_eq!(same.labels(), dodecahedron.labels());
        assert!(report.realizable);

        let sevenths = LabeledPolyhedron::new(
            dodecahedron.faces().to_vec(),
            dodecahedron.labels().keys().map(|e| (e.endpoints(), Angle::pi_over(7))),
        )
        .unwrap();
        let (flattened, report) = uniformize_labeling(&sevenths).unwrap();
        assert!(flattened.labels().values().all(|a| a.is_pi_multiple(1, 3)));
        assert!(report.realizable);
        assert_eq!(report.ideal_vertex_count(), 20);

        let mut mixed = dodecahedron.clone();
        for ring in [(0, 1), (1, 2), (2, 3), (3, 4), (4, 0)] {
            mixed = mixed.relabeled(ring, Angle::pi_over(5)).unwrap();
        }
        let (flattened, report) = uniformize_labeling(&mixed).unwrap();
        for (e, a) in flattened.labels() {
            if mixed.labels()[e].is_right_angle() {
                assert!(a.is_right_angle());
            } else {
                assert!(a.is_pi_multiple(1, 3));
            }
        }
        assert!(report.realizable);
        assert!(report.finite_volume);
    }

    #[test]
    fn uniformize_rejects_what_the_flattening_argument_needs() {
        let simplex = shapes::tetrahedron(Angle::pi_over(3));
        assert!(matches!(
            uniformize_labeling(&simplex),
            Err(UniformizeError::TooFewFaces(4))
        ));

        // The truncation triangles of the twice-truncated prism are cut off
        // by prismatic 3-circuits.
        assert!(matches!(
            uniformize_labeling(&shapes::truncated_prism_right_angled()),
            Err(UniformizeError::HasPrismatic3Circuit(_))
        ));

        let dodecahedron = shapes::dodecahedron_right_angled();
        for bad in [Angle::radians(1.3), Angle::pi_times(2, 5)] {
            let relabeled = dodecahedron.relabeled((0, 1), bad).unwrap();
            assert!(matches!(
                uniformize_labeling(&relabeled),
                Err(UniformizeError::NotCoxeter { .. })
            ));
        }
    }
}
