//! Abstract polyhedra with non-obtuse dihedral angle labels.
//!
//! A polyhedron here is purely combinatorial: an oriented sphere complex
//! whose vertices all have degree 3 or 4, together with an angle in
//! (0, pi/2] on every edge. Whether such a labeling is actually realized by
//! a hyperbolic polyhedron is the business of [`crate::andreev`]; this
//! module only enforces the combinatorial shape and provides the local
//! queries (vertex links, degree counts, prism recognition) everything else
//! is built from.

use std::collections::BTreeMap;

use crate::angle::{Angle, AngleSum, GeometryClass};
use crate::mesh::{Edge, Mesh, MeshError};

#[derive(Debug, thiserror::Error, Clone, PartialEq)]
pub enum ValidityError {
    #[error("not an oriented sphere complex: {0}")]
    NotPlanarComplex(#[from] MeshError),
    #[error("vertex ids must be 0..{count}, found id {found}")]
    SparseVertexIds { count: usize, found: usize },
    #[error("vertices {0} and {1} disconnect the skeleton; polyhedral graphs are 3-connected")]
    Not3Connected(usize, usize),
    #[error("vertex {vertex} has degree {degree}; only degrees 3 and 4 are supported")]
    BadDegree { vertex: usize, degree: usize },
    #[error("edge {0:?} has no angle label")]
    MissingLabel(Edge),
    #[error("label given for {0:?}, which is not an edge of any face")]
    UnknownLabelEdge(Edge),
    #[error("edge {0:?} is labeled more than once")]
    DuplicateLabel(Edge),
    #[error("label {angle} on edge {edge:?} is outside (0, pi/2]")]
    LabelOutOfRange { edge: Edge, angle: Angle },
}

/// Classification of the link of a vertex, read off from the incident
/// dihedral angles: the link triangle (degree 3) or quadrilateral (degree 4)
/// is spherical, Euclidean, or hyperbolic according to whether the angle sum
/// exceeds, equals, or falls short of (degree - 2) * pi. Spherical links are
/// ordinary finite vertices, Euclidean links are ideal, hyperbolic links are
/// hyperideal.
#[derive(Clone, Copy, Debug, PartialEq, Eq, serde::Serialize)]
pub struct VertexLink {
    pub degree: usize,
    pub class: GeometryClass,
    /// True when the classification came down to a floating-point comparison
    /// inside the tolerance band rather than exact rational arithmetic.
    pub borderline: bool,
}

impl VertexLink {
    pub fn is_ideal(&self) -> bool {
        self.class == GeometryClass::Euclidean
    }

    pub fn is_hyperideal(&self) -> bool {
        self.class == GeometryClass::Hyperbolic
    }
}

/// Counts of vertices by degree.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, serde::Serialize)]
pub struct DegreeCounts {
    pub degree3: usize,
    pub degree4: usize,
}

/// Witness that the polyhedron is a combinatorial n-gonal prism: two
/// disjoint n-gon caps with every remaining face a quadrilateral bridging
/// them. For a cube any of the three axis choices works; the reported one
/// is the lexicographically first pair of cap face indices.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct PrismForm {
    pub n: usize,
    pub caps: [usize; 2],
}

#[derive(Clone, Debug)]
pub struct LabeledPolyhedron {
    mesh: Mesh,
    labels: BTreeMap<Edge, Angle>,
}

impl LabeledPolyhedron {
    /// Build and fully validate a labeled polyhedron from oriented face
    /// lists and per-edge labels. Labels may list endpoints in either order.
    pub fn new(
        faces: Vec<Vec<usize>>,
        labels: impl IntoIterator<Item = ((usize, usize), Angle)>,
    ) -> Result<LabeledPolyhedron, ValidityError> {
        let mesh = Mesh::new(faces)?;

        let count = mesh.vertex_count();
        for &v in mesh.vertices() {
            if v >= count {
                return Err(ValidityError::SparseVertexIds { count, found: v });
            }
        }

        for &v in mesh.vertices() {
            let degree = mesh.degree(v);
            if degree != 3 && degree != 4 {
                return Err(ValidityError::BadDegree { vertex: v, degree });
            }
        }

        if let Some((a, b)) = mesh.find_two_cut() {
            return Err(ValidityError::Not3Connected(a, b));
        }

        let mut label_map = BTreeMap::new();
        for ((u, v), angle) in labels {
            let e = Edge::new(u, v);
            if !mesh.has_edge(e) {
                return Err(ValidityError::UnknownLabelEdge(e));
            }
            if !angle.in_label_range() {
                return Err(ValidityError::LabelOutOfRange { edge: e, angle });
            }
            if label_map.insert(e, angle).is_some() {
                return Err(ValidityError::DuplicateLabel(e));
            }
        }
        if let Some(e) = mesh.edges().find(|e| !label_map.contains_key(e)) {
            return Err(ValidityError::MissingLabel(e));
        }

        Ok(LabeledPolyhedron { mesh, labels: label_map })
    }

    /// Same combinatorics with every edge relabeled pi/2.
    pub fn with_right_angles(&self) -> LabeledPolyhedron {
        let labels = self
            .labels
            .keys()
            .map(|&e| (e, Angle::right_angle()))
            .collect();
        LabeledPolyhedron { mesh: self.mesh.clone(), labels }
    }

    /// Replace the label on one edge, leaving everything else untouched.
    pub fn relabeled(&self, edge: (usize, usize), angle: Angle) -> Result<LabeledPolyhedron, ValidityError> {
        let e = Edge::new(edge.0, edge.1);
        if !self.mesh.has_edge(e) {
            return Err(ValidityError::UnknownLabelEdge(e));
        }
        if !angle.in_label_range() {
            return Err(ValidityError::LabelOutOfRange { edge: e, angle });
        }
        let mut labels = self.labels.clone();
        labels.insert(e, angle);
        Ok(LabeledPolyhedron { mesh: self.mesh.clone(), labels })
    }

    pub(crate) fn mesh(&self) -> &Mesh {
        &self.mesh
    }

    pub fn vertex_count(&self) -> usize {
        self.mesh.vertex_count()
    }

    pub fn face_count(&self) -> usize {
        self.mesh.faces().len()
    }

    pub fn edge_count(&self) -> usize {
        self.mesh.edge_count()
    }

    pub fn faces(&self) -> &[Vec<usize>] {
        self.mesh.faces()
    }

    pub fn edges(&self) -> impl Iterator<Item = Edge> + '_ {
        self.mesh.edges()
    }

    pub fn label(&self, u: usize, v: usize) -> Option<Angle> {
        self.labels.get(&Edge::new(u, v)).copied()
    }

    pub fn labels(&self) -> &BTreeMap<Edge, Angle> {
        &self.labels
    }

    pub fn degree(&self, v: usize) -> usize {
        self.mesh.degree(v)
    }

    pub fn edges_at(&self, v: usize) -> Vec<Edge> {
        self.mesh.edges().filter(|e| e.touches(v)).collect()
    }

    pub fn degree_counts(&self) -> DegreeCounts {
        let mut counts = DegreeCounts::default();
        for &v in self.mesh.vertices() {
            match self.mesh.degree(v) {
                3 => counts.degree3 += 1,
                4 => counts.degree4 += 1,
                _ => unreachable!("degrees were validated at construction"),
            }
        }
        counts
    }

    /// Angle sum over the edges incident to `v`.
    pub fn angle_sum_at(&self, v: usize) -> AngleSum {
        AngleSum::of(self.edges_at(v).into_iter().map(|e| self.labels[&e]))
    }

    pub fn vertex_link(&self, v: usize) -> VertexLink {
        let degree = self.mesh.degree(v);
        // Link polygon angle sum vs (degree - 2) * pi.
        let cmp = self
            .angle_sum_at(v)
            .compare_to_pi_multiple(degree as i64 - 2, 1);
        VertexLink {
            degree,
            borderline: cmp.borderline,
            class: GeometryClass::from_comparison(cmp),
        }
    }

    pub fn links(&self) -> Vec<VertexLink> {
        (0..self.vertex_count()).map(|v| self.vertex_link(v)).collect()
    }

    pub fn is_simplex(&self) -> bool {
        self.vertex_count() == 4
    }

    /// Recognize a combinatorial n-gonal prism.
    pub fn prism_form(&self) -> Option<PrismForm> {
        let faces = self.mesh.faces();
        let total = self.vertex_count();
        for i in 0..faces.len() {
            for j in (i + 1)..faces.len() {
                let n = faces[i].len();
                if faces[j].len() != n || 2 * n != total {
                    continue;
                }
                if faces[i].iter().any(|v| faces[j].contains(v)) {
                    continue;
                }
                if faces.len() != n + 2 {
                    continue;
                }
                let bridges = (0..faces.len()).filter(|&k| k != i && k != j).all(|k| {
                    faces[k].len() == 4
                        && faces[k].iter().filter(|v| faces[i].contains(v)).count() == 2
                        && faces[k].iter().filter(|v| faces[j].contains(v)).count() == 2
                });
                if bridges {
                    return Some(PrismForm { n, caps: [i, j] });
                }
            }
        }
        None
    }

    pub fn is_triangular_prism(&self) -> bool {
        self.prism_form().is_some_and(|p| p.n == 3)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::shapes;

    #[test]
    fn right_angled_cube_validates() {
        let cube = shapes::cube_right_angled();
        assert_eq!(cube.vertex_count(), 8);
        assert_eq!(cube.edge_count(), 12);
        assert_eq!(
            cube.degree_counts(),
            DegreeCounts { degree3: 8, degree4: 0 }
        );
        for v in 0..8 {
            let link = cube.vertex_link(v);
            // Three right angles sum to 3pi/2 > pi: every vertex is finite.
            assert_eq!(link.class, GeometryClass::Spherical);
            assert!(!link.borderline);
        }
        assert_eq!(
            cube.prism_form(),
            Some(PrismForm { n: 4, caps: [0, 1] })
        );
        assert!(!cube.is_triangular_prism());
    }

    #[test]
    fn ideal_link_detected_exactly() {
        // Relabel three edges at one cube vertex to sum to exactly pi.
        let cube = shapes::cube_right_angled()
            .relabeled((0, 1), Angle::pi_over(2))
            .unwrap()
            .relabeled((0, 3), Angle::pi_over(4))
            .unwrap()
            .relabeled((0, 4), Angle::pi_over(4))
            .unwrap();
        let link = cube.vertex_link(0);
        assert_eq!(link.class, GeometryClass::Euclidean);
        assert!(link.is_ideal());
        assert!(!link.borderline, "exact rational sums never go borderline");
    }

    #[test]
    fn float_labels_classify_with_tolerance() {
        let third = std::f64::consts::PI / 3.0;
        let cube = shapes::cube_right_angled()
            .relabeled((0, 1), Angle::radians(third))
            .unwrap()
            .relabeled((0, 3), Angle::radians(third))
            .unwrap()
            .relabeled((0, 4), Angle::radians(third))
            .unwrap();
        let link = cube.vertex_link(0);
        assert_eq!(link.class, GeometryClass::Euclidean);
        assert!(link.borderline);
    }

    #[test]
    fn degree_five_is_rejected() {
        // Pyramid over a pentagon: apex has degree 5.
        let faces = vec![
            vec![0, 1, 2, 3, 4],
            vec![1, 0, 5],
            vec![2, 1, 5],
            vec![3, 2, 5],
            vec![4, 3, 5],
            vec![0, 4, 5],
        ];
        let labels: Vec<_> = [
            (0, 1),
            (1, 2),
            (2, 3),
            (3, 4),
            (4, 0),
            (0, 5),
            (1, 5),
            (2, 5),
            (3, 5),
            (4, 5),
        ]
        .into_iter()
        .map(|e| (e, Angle::right_angle()))
        .collect();
        match LabeledPolyhedron::new(faces, labels) {
            Err(ValidityError::BadDegree { vertex: 5, degree: 5 }) => {}
            other => panic!("expected degree failure, got {other:?}"),
        }
    }

    #[test]
    fn missing_and_out_of_range_labels_are_rejected() {
        let tetra_faces = || vec![vec![0, 1, 2], vec![0, 2, 3], vec![0, 3, 1], vec![1, 3, 2]];
        let full = |angle: Angle| -> Vec<((usize, usize), Angle)> {
            [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)]
                .into_iter()
                .map(|e| (e, angle))
                .collect()
        };

        let mut labels = full(Angle::right_angle());
        labels.pop();
        assert!(matches!(
            LabeledPolyhedron::new(tetra_faces(), labels),
            Err(ValidityError::MissingLabel(_))
        ));

        assert!(matches!(
            LabeledPolyhedron::new(tetra_faces(), full(Angle::pi_times(2, 3))),
            Err(ValidityError::LabelOutOfRange { .. })
        ));

        let sim = LabeledPolyhedron::new(tetra_faces(), full(Angle::pi_over(2))).unwrap();
        assert!(sim.is_simplex());
        assert!(sim.prism_form().is_none());
    }

    #[test]
    fn pentagonal_prism_is_recognized() {
        let prism = shapes::n_prism(5, shapes::PrismLabels::right_horizontal(5));
        let form = prism.prism_form().unwrap();
        assert_eq!(form.n, 5);
        assert!(!prism.is_triangular_prism());
        let tri = shapes::n_prism(3, shapes::PrismLabels::right_horizontal(3));
        assert!(tri.is_triangular_prism());
    }
}
