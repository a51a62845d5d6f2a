//! The labeled dual graph: where all the circuit surgery happens.
//!
//! Vertices of the dual are faces of the polyhedron, faces of the dual are
//! its vertices, and each dual edge inherits the dihedral angle of the primal
//! edge it crosses. Cutting along circuits introduces cone apexes; the dual
//! remembers which of its vertices are apexes because the volume-bound
//! counting rules treat a cap face differently from an original face (a cap
//! collapses to a single ideal or finite vertex when the piece is deformed to
//! a right-angled polyhedron, swallowing its corner vertices).

use std::collections::BTreeMap;

use crate::angle::Angle;
use crate::mesh::{Edge, Mesh, MeshError};
use crate::polyhedron::{LabeledPolyhedron, ValidityError};

/// Where a dual vertex came from.
#[derive(Clone, Copy, Debug, PartialEq, Eq, serde::Serialize)]
pub enum DualVertexOrigin {
    /// A face of the polyhedron the decomposition started from, by face index.
    Face(usize),
    /// A cone apex introduced by splitting along a circuit.
    Apex,
}

#[derive(Debug, thiserror::Error, Clone, PartialEq, Eq)]
pub enum CountError {
    #[error("dual face {0} has {1} sides; a polyhedron vertex must have degree 3 or 4")]
    UnexpectedFaceSize(usize, usize),
    #[error("cap at dual vertex {0} has {1} sides; only triangle and quadrilateral caps collapse")]
    UnexpectedCapSize(usize, usize),
}

/// Ideal/finite vertex counts of the right-angled polyhedron a piece deforms
/// to, after collapsing every cap face to a single vertex.
#[derive(Clone, Copy, Debug, PartialEq, Eq, serde::Serialize)]
pub struct IdealFiniteCounts {
    pub ideal: usize,
    pub finite: usize,
}

#[derive(Clone, Debug)]
pub struct DualGraph {
    mesh: Mesh,
    labels: BTreeMap<Edge, Angle>,
    origins: BTreeMap<usize, DualVertexOrigin>,
}

impl DualGraph {
    pub fn of(poly: &LabeledPolyhedron) -> DualGraph {
        let (mesh, _) = poly
            .mesh()
            .dual()
            .expect("a valid polyhedron always has a valid dual");
        let mut labels = BTreeMap::new();
        for e in poly.edges() {
            let (u, v) = e.endpoints();
            let [f, g] = poly
                .mesh()
                .faces_of_edge(e)
                .expect("edge of the polyhedron");
            labels.insert(Edge::new(f, g), poly.label(u, v).expect("labeled edge"));
        }
        let origins = mesh
            .vertices()
            .iter()
            .map(|&d| (d, DualVertexOrigin::Face(d)))
            .collect();
        DualGraph { mesh, labels, origins }
    }

    /// Assemble a dual graph from an explicit face list, e.g. one side of a
    /// split plus its cone. Every mesh edge must come labeled.
    pub(crate) fn from_parts(
        faces: Vec<Vec<usize>>,
        labels: BTreeMap<Edge, Angle>,
        origins: BTreeMap<usize, DualVertexOrigin>,
    ) -> Result<DualGraph, MeshError> {
        let mesh = Mesh::new(faces)?;
        for e in mesh.edges() {
            assert!(labels.contains_key(&e), "unlabeled dual edge {e:?}");
        }
        assert_eq!(labels.len(), mesh.edge_count(), "stray labels");
        for &v in mesh.vertices() {
            assert!(origins.contains_key(&v), "dual vertex {v} has no origin");
        }
        Ok(DualGraph { mesh, labels, origins })
    }

    pub fn mesh(&self) -> &Mesh {
        &self.mesh
    }

    /// Dual vertex ids (face ids of the polyhedron plus any apexes).
    pub fn vertices(&self) -> &[usize] {
        self.mesh.vertices()
    }

    pub fn label(&self, e: Edge) -> Angle {
        self.labels[&e]
    }

    pub fn labels(&self) -> &BTreeMap<Edge, Angle> {
        &self.labels
    }

    pub fn origin(&self, v: usize) -> DualVertexOrigin {
        self.origins[&v]
    }

    pub fn is_apex(&self, v: usize) -> bool {
        self.origins[&v] == DualVertexOrigin::Apex
    }

    pub fn apex_count(&self) -> usize {
        self.origins
            .values()
            .filter(|&&o| o == DualVertexOrigin::Apex)
            .count()
    }

    /// The polyhedron this dual graph is the dual of, with vertices renumbered
    /// to the dual's face order.
    pub fn primal(&self) -> Result<LabeledPolyhedron, ValidityError> {
        let (pm, _) = self.mesh.dual()?;
        let mut labels = Vec::new();
        for e in self.mesh.edges() {
            let [a, b] = self.mesh.faces_of_edge(e).expect("edge of the mesh");
            labels.push(((a, b), self.labels[&e]));
        }
        LabeledPolyhedron::new(pm.faces().to_vec(), labels)
    }

    /// Count the vertices of the right-angled polyhedron this piece deforms
    /// to: original degree-4 vertices and quadrilateral caps become ideal,
    /// original degree-3 vertices and triangular caps finite. Cap corners are
    /// swallowed by their cap and counted by nothing.
    pub fn cap_collapsed_counts(&self) -> Result<IdealFiniteCounts, CountError> {
        let mut counts = IdealFiniteCounts { ideal: 0, finite: 0 };
        for (fi, face) in self.mesh.faces().iter().enumerate() {
            if face.iter().any(|&d| self.is_apex(d)) {
                continue;
            }
            match face.len() {
                3 => counts.finite += 1,
                4 => counts.ideal += 1,
                n => return Err(CountError::UnexpectedFaceSize(fi, n)),
            }
        }
        for &v in self.mesh.vertices() {
            if !self.is_apex(v) {
                continue;
            }
            match self.mesh.degree(v) {
                3 => counts.finite += 1,
                4 => counts.ideal += 1,
                n => return Err(CountError::UnexpectedCapSize(v, n)),
            }
        }
        Ok(counts)
    }

    /// A string that is equal for two dual graphs exactly when they are
    /// isomorphic as labeled embedded complexes (mirror images included).
    ///
    /// For each starting dart and each chirality, vertices are renamed in
    /// breadth-first discovery order, with each vertex's neighbor list read in
    /// rotation order starting from the neighbor it was discovered through;
    /// the lexicographically smallest transcript wins. Embedded graphs make
    /// this exact, not just a hash.
    pub fn canonical_certificate(&self) -> String {
        let rotations: BTreeMap<usize, Vec<usize>> = self
            .mesh
            .vertices()
            .iter()
            .map(|&v| {
                let rot = self
                    .mesh
                    .neighbor_rotation(v)
                    .expect("valid mesh has a rotation at every vertex");
                (v, rot)
            })
            .collect();

        let mut best: Option<String> = None;
        for (&v, rot) in &rotations {
            for &w in rot {
                for mirror in [false, true] {
                    let transcript = self.transcript(v, w, mirror, &rotations);
                    if best.as_ref().is_none_or(|b| transcript < *b) {
                        best = Some(transcript);
                    }
                }
            }
        }
        best.expect("dual graph is nonempty")
    }

    fn transcript(
        &self,
        root: usize,
        anchor: usize,
        mirror: bool,
        rotations: &BTreeMap<usize, Vec<usize>>,
    ) -> String {
        let rotation_from = |v: usize, from: usize| -> Vec<usize> {
            let mut rot = rotations[&v].clone();
            if mirror {
                rot.reverse();
            }
            let i = rot.iter().position(|&x| x == from).expect("anchor is a neighbor");
            rot.rotate_left(i);
            rot
        };

        // Breadth-first renaming; every vertex remembers the neighbor that
        // discovered it so its rotation has a deterministic starting point.
        let mut ids: BTreeMap<usize, usize> = BTreeMap::from([(root, 0)]);
        let mut order = vec![(root, anchor)];
        let mut head = 0;
        while head < order.len() {
            let (v, from) = order[head];
            head += 1;
            for w in rotation_from(v, from) {
                if !ids.contains_key(&w) {
                    ids.insert(w, order.len());
                    order.push((w, v));
                }
            }
        }

        let mut out = String::new();
        for &(v, from) in &order {
            out.push('[');
            for w in rotation_from(v, from) {
                out.push_str(&format!("{}:{};", ids[&w], self.labels[&Edge::new(v, w)]));
            }
            out.push(']');
        }
        out
    }
}
