//! Oriented 2-sphere meshes over arbitrary vertex ids.
//!
//! Both a polyhedron's face complex and the dual graphs the decomposition
//! machinery cuts apart are instances of the same structure: a list of
//! consistently oriented faces on the sphere. This module owns the shared
//! mechanics — incidence validation, rotation systems, dualization, and the
//! two-sided region decomposition of a separating cycle.

use std::collections::{BTreeMap, BTreeSet, VecDeque};

/// Undirected edge with normalized endpoint order.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct Edge(pub usize, pub usize);

impl Edge {
    pub fn new(u: usize, v: usize) -> Edge {
        if u <= v {
            Edge(u, v)
        } else {
            Edge(v, u)
        }
    }

    pub fn endpoints(self) -> (usize, usize) {
        (self.0, self.1)
    }

    pub fn touches(self, v: usize) -> bool {
        self.0 == v || self.1 == v
    }

    pub fn shares_endpoint(self, other: Edge) -> bool {
        other.touches(self.0) || other.touches(self.1)
    }
}

impl serde::Serialize for Edge {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        [self.0, self.1].serialize(s)
    }
}

#[derive(Debug, thiserror::Error, Clone, PartialEq, Eq)]
pub enum MeshError {
    #[error("face {face} is degenerate: {reason}")]
    DegenerateFace { face: usize, reason: String },
    #[error("directed edge {from}->{to} appears in more than one face; faces are not consistently oriented")]
    RepeatedDirectedEdge { from: usize, to: usize },
    #[error("edge {0:?} lies in {1} faces, expected exactly 2")]
    OpenEdge(Edge, usize),
    #[error("Euler characteristic is {0}, expected 2 (not a sphere complex)")]
    EulerCharacteristic(i64),
    #[error("the 1-skeleton is disconnected")]
    Disconnected,
    #[error("the faces around vertex {0} do not close a single cycle")]
    PinchedVertex(usize),
}

/// A validated, consistently oriented face complex on the sphere.
///
/// Vertex ids are arbitrary (not necessarily contiguous), which lets the
/// splitting machinery keep stable ids across cuts while appending fresh
/// apex ids.
#[derive(Clone, Debug)]
pub struct Mesh {
    vertices: Vec<usize>,
    faces: Vec<Vec<usize>>,
    /// undirected edge -> the (exactly two) faces containing it
    edge_faces: BTreeMap<Edge, [usize; 2]>,
    /// directed edge -> the unique face traversing it in that direction
    directed: BTreeMap<(usize, usize), usize>,
}

impl Mesh {
    pub fn new(faces: Vec<Vec<usize>>) -> Result<Mesh, MeshError> {
        let mut directed = BTreeMap::new();
        let mut edge_faces: BTreeMap<Edge, Vec<usize>> = BTreeMap::new();
        let mut vertex_set = BTreeSet::new();

        for (fi, face) in faces.iter().enumerate() {
            if face.len() < 3 {
                return Err(MeshError::DegenerateFace {
                    face: fi,
                    reason: format!("only {} vertices", face.len()),
                });
            }
            let distinct: BTreeSet<_> = face.iter().collect();
            if distinct.len() != face.len() {
                return Err(MeshError::DegenerateFace {
                    face: fi,
                    reason: "repeated vertex".into(),
                });
            }
            for i in 0..face.len() {
                let u = face[i];
                let v = face[(i + 1) % face.len()];
                vertex_set.insert(u);
                if directed.insert((u, v), fi).is_some() {
                    return Err(MeshError::RepeatedDirectedEdge { from: u, to: v });
                }
                edge_faces.entry(Edge::new(u, v)).or_default().push(fi);
            }
        }

        let mut edge_map = BTreeMap::new();
        for (e, fs) in edge_faces {
            if fs.len() != 2 {
                return Err(MeshError::OpenEdge(e, fs.len()));
            }
            edge_map.insert(e, [fs[0], fs[1]]);
        }

        let mesh = Mesh {
            vertices: vertex_set.into_iter().collect(),
            faces,
            edge_faces: edge_map,
            directed,
        };

        let v = mesh.vertices.len() as i64;
        let e = mesh.edge_faces.len() as i64;
        let f = mesh.faces.len() as i64;
        if v - e + f != 2 {
            return Err(MeshError::EulerCharacteristic(v - e + f));
        }
        if !mesh.is_connected() {
            return Err(MeshError::Disconnected);
        }
        for &vtx in &mesh.vertices {
            // Every vertex link must close up into one cycle; this is what
            // makes the rotation system (and hence dualization) well defined.
            mesh.faces_around(vtx)?;
        }
        Ok(mesh)
    }

    pub fn vertices(&self) -> &[usize] {
        &self.vertices
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices.len()
    }

    pub fn faces(&self) -> &[Vec<usize>] {
        &self.faces
    }

    pub fn edges(&self) -> impl Iterator<Item = Edge> + '_ {
        self.edge_faces.keys().copied()
    }

    pub fn edge_count(&self) -> usize {
        self.edge_faces.len()
    }

    pub fn has_edge(&self, e: Edge) -> bool {
        self.edge_faces.contains_key(&e)
    }

    /// The two faces containing an undirected edge.
    pub fn faces_of_edge(&self, e: Edge) -> Option<[usize; 2]> {
        self.edge_faces.get(&e).copied()
    }

    pub fn neighbors(&self, v: usize) -> Vec<usize> {
        let mut out: Vec<usize> = self
            .edge_faces
            .keys()
            .filter_map(|e| {
                if e.0 == v {
                    Some(e.1)
                } else if e.1 == v {
                    Some(e.0)
                } else {
                    None
                }
            })
            .collect();
        out.sort_unstable();
        out
    }

    pub fn degree(&self, v: usize) -> usize {
        self.edge_faces.keys().filter(|e| e.touches(v)).count()
    }

    fn is_connected(&self) -> bool {
        if self.vertices.is_empty() {
            return false;
        }
        let mut seen = BTreeSet::new();
        let mut queue = VecDeque::from([self.vertices[0]]);
        seen.insert(self.vertices[0]);
        while let Some(v) = queue.pop_front() {
            for w in self.neighbors(v) {
                if seen.insert(w) {
                    queue.push_back(w);
                }
            }
        }
        seen.len() == self.vertices.len()
    }

    /// True when removing any two vertices leaves the rest connected.
    pub fn is_three_connected(&self) -> bool {
        self.find_two_cut().is_none()
    }

    /// A pair of vertices whose removal disconnects the skeleton, if any.
    pub fn find_two_cut(&self) -> Option<(usize, usize)> {
        let n = self.vertices.len();
        if n <= 3 {
            return None;
        }
        let adj: BTreeMap<usize, Vec<usize>> =
            self.vertices.iter().map(|&v| (v, self.neighbors(v))).collect();
        for i in 0..n {
            for j in (i + 1)..n {
                let (a, b) = (self.vertices[i], self.vertices[j]);
                let mut seen = BTreeSet::from([a, b]);
                let start = self.vertices.iter().copied().find(|&v| v != a && v != b);
                let Some(start) = start else { continue };
                let mut queue = VecDeque::from([start]);
                seen.insert(start);
                while let Some(v) = queue.pop_front() {
                    for &w in &adj[&v] {
                        if seen.insert(w) {
                            queue.push_back(w);
                        }
                    }
                }
                if seen.len() != n {
                    return Some((a, b));
                }
            }
        }
        None
    }

    /// The faces incident to `v`, in rotation order around `v`.
    pub fn faces_around(&self, v: usize) -> Result<Vec<usize>, MeshError> {
        let incident: Vec<usize> = (0..self.faces.len())
            .filter(|&fi| self.faces[fi].contains(&v))
            .collect();
        let first = *incident.first().ok_or(MeshError::PinchedVertex(v))?;
        let mut order = vec![first];
        let mut current = first;
        loop {
            // corner of `current` at v is (a -> v -> b); the next face in the
            // rotation is the one traversing (b, v).
            let face = &self.faces[current];
            let i = face.iter().position(|&x| x == v).expect("face contains v");
            let b = face[(i + 1) % face.len()];
            let next = *self.directed.get(&(b, v)).ok_or(MeshError::PinchedVertex(v))?;
            if next == first {
                break;
            }
            if order.contains(&next) {
                return Err(MeshError::PinchedVertex(v));
            }
            order.push(next);
            if order.len() > incident.len() {
                return Err(MeshError::PinchedVertex(v));
            }
            current = next;
        }
        if order.len() != incident.len() {
            return Err(MeshError::PinchedVertex(v));
        }
        Ok(order)
    }

    /// The neighbors of `v` in rotation order: the successor of `v` in each
    /// face of `faces_around(v)`, which walks the link once.
    pub fn neighbor_rotation(&self, v: usize) -> Result<Vec<usize>, MeshError> {
        Ok(self
            .faces_around(v)?
            .iter()
            .map(|&fi| {
                let face = &self.faces[fi];
                let i = face.iter().position(|&x| x == v).expect("face contains v");
                face[(i + 1) % face.len()]
            })
            .collect())
    }

    /// The dual mesh: one vertex per face (identified by face index), one
    /// face per vertex (the rotation around it). Returns the mesh together
    /// with the vertex ids in the order the dual faces were emitted, so the
    /// caller can recover the face <-> vertex correspondence.
    pub fn dual(&self) -> Result<(Mesh, Vec<usize>), MeshError> {
        let mut dual_faces = Vec::with_capacity(self.vertices.len());
        for &v in &self.vertices {
            dual_faces.push(self.faces_around(v)?);
        }
        let mesh = Mesh::new(dual_faces)?;
        Ok((mesh, self.vertices.clone()))
    }

    /// Direction in which the unique face of `side` containing the cycle
    /// edge `e` traverses it.
    fn side_direction(&self, side: &BTreeSet<usize>, e: Edge) -> Option<(usize, usize)> {
        let [f, g] = self.faces_of_edge(e)?;
        let face = if side.contains(&f) {
            f
        } else if side.contains(&g) {
            g
        } else {
            return None;
        };
        if self.directed.get(&(e.0, e.1)) == Some(&face) {
            Some((e.0, e.1))
        } else {
            Some((e.1, e.0))
        }
    }

    /// Split the sphere along a simple cycle (given as a vertex sequence)
    /// into its two sides.
    pub fn cycle_sides(&self, cycle: &[usize]) -> Result<[CycleSide; 2], CycleError> {
        let k = cycle.len();
        if k < 3 {
            return Err(CycleError::NotACycle("fewer than 3 vertices".into()));
        }
        let distinct: BTreeSet<_> = cycle.iter().collect();
        if distinct.len() != k {
            return Err(CycleError::NotACycle("repeated vertex".into()));
        }
        let mut cycle_edges = BTreeSet::new();
        for i in 0..k {
            let e = Edge::new(cycle[i], cycle[(i + 1) % k]);
            if !self.has_edge(e) {
                return Err(CycleError::MissingEdge(e));
            }
            cycle_edges.insert(e);
        }

        // Walk face adjacency through every edge not on the cycle; the cycle
        // separates the sphere, so exactly two regions must appear.
        let f = self.faces.len();
        let mut region = vec![usize::MAX; f];
        let mut next_region = 0;
        for start in 0..f {
            if region[start] != usize::MAX {
                continue;
            }
            region[start] = next_region;
            let mut queue = VecDeque::from([start]);
            while let Some(cur) = queue.pop_front() {
                let face = &self.faces[cur];
                for i in 0..face.len() {
                    let e = Edge::new(face[i], face[(i + 1) % face.len()]);
                    if cycle_edges.contains(&e) {
                        continue;
                    }
                    let [a, b] = self.edge_faces[&e];
                    let other = if a == cur { b } else { a };
                    if region[other] == usize::MAX {
                        region[other] = next_region;
                        queue.push_back(other);
                    }
                }
            }
            next_region += 1;
        }
        if next_region != 2 {
            return Err(CycleError::NotSeparating(next_region));
        }

        let mut sides = [CycleSide::default(), CycleSide::default()];
        for (fi, &r) in region.iter().enumerate() {
            sides[r].faces.insert(fi);
        }
        for &e in self.edge_faces.keys() {
            if cycle_edges.contains(&e) {
                continue;
            }
            let [a, b] = self.edge_faces[&e];
            if region[a] != region[b] {
                return Err(CycleError::NotACycle(format!(
                    "edge {e:?} has faces on both sides of the cycle"
                )));
            }
            sides[region[a]].edges.insert(e);
        }
        for &v in &self.vertices {
            if distinct.contains(&v) {
                continue;
            }
            let mut touched = [false, false];
            for (&e, &[a, _]) in &self.edge_faces {
                if e.touches(v) {
                    touched[region[a]] = true;
                }
            }
            match touched {
                [true, false] => {
                    sides[0].vertices.insert(v);
                }
                [false, true] => {
                    sides[1].vertices.insert(v);
                }
                _ => {
                    return Err(CycleError::NotACycle(format!(
                        "vertex {v} is incident to both sides of the cycle"
                    )))
                }
            }
        }
        Ok(sides)
    }

    /// The directed boundary cycle of a side, oriented opposite to the
    /// side's own traversal — i.e. the orientation a new cone of faces must
    /// use to keep the complex consistently oriented.
    pub fn cone_order(&self, side: &CycleSide, cycle: &[usize]) -> Result<Vec<usize>, CycleError> {
        let k = cycle.len();
        let mut next: BTreeMap<usize, usize> = BTreeMap::new();
        for i in 0..k {
            let e = Edge::new(cycle[i], cycle[(i + 1) % k]);
            let (a, b) = self
                .side_direction(&side.faces, e)
                .ok_or_else(|| CycleError::MissingEdge(e))?;
            // Reverse of the side's traversal.
            next.insert(b, a);
        }
        let mut order = Vec::with_capacity(k);
        let mut cur = cycle[0];
        for _ in 0..k {
            order.push(cur);
            cur = *next
                .get(&cur)
                .ok_or_else(|| CycleError::NotACycle("boundary walk broke".into()))?;
        }
        if cur != cycle[0] {
            return Err(CycleError::NotACycle("boundary walk did not close".into()));
        }
        Ok(order)
    }
}

/// One side of a separating cycle: the faces, edges, and vertices strictly
/// inside it (cycle vertices and edges belong to neither side).
#[derive(Clone, Debug, Default)]
pub struct CycleSide {
    pub faces: BTreeSet<usize>,
    pub edges: BTreeSet<Edge>,
    pub vertices: BTreeSet<usize>,
}

#[derive(Debug, thiserror::Error, Clone, PartialEq, Eq)]
pub enum CycleError {
    #[error("not a simple cycle: {0}")]
    NotACycle(String),
    #[error("cycle edge {0:?} is not an edge of the mesh")]
    MissingEdge(Edge),
    #[error("cutting along the cycle produced {0} regions instead of 2")]
    NotSeparating(usize),
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cube_faces() -> Vec<Vec<usize>> {
        vec![
            vec![0, 3, 2, 1],
            vec![4, 5, 6, 7],
            vec![0, 1, 5, 4],
            vec![1, 2, 6, 5],
            vec![2, 3, 7, 6],
            vec![3, 0, 4, 7],
        ]
    }

    #[test]
    fn cube_is_a_valid_mesh() {
        let m = Mesh::new(cube_faces()).unwrap();
        assert_eq!(m.vertex_count(), 8);
        assert_eq!(m.edge_count(), 12);
        assert_eq!(m.faces().len(), 6);
        assert!(m.is_three_connected());
        for v in 0..8 {
            assert_eq!(m.degree(v), 3);
            assert_eq!(m.faces_around(v).unwrap().len(), 3);
        }
    }

    #[test]
    fn inconsistent_orientation_is_rejected() {
        let mut faces = cube_faces();
        faces[1] = vec![7, 6, 5, 4];
        match Mesh::new(faces) {
            Err(MeshError::RepeatedDirectedEdge { .. }) => {}
            other => panic!("expected orientation failure, got {other:?}"),
        }
    }

    #[test]
    fn open_edge_is_rejected() {
        let faces = vec![vec![0, 1, 2], vec![0, 2, 3]];
        assert!(matches!(Mesh::new(faces), Err(MeshError::OpenEdge(..))));
    }

    #[test]
    fn dual_of_dual_restores_the_skeleton() {
        let m = Mesh::new(cube_faces()).unwrap();
        let (dual, _) = m.dual().unwrap();
        // Octahedron: 6 vertices of degree 4, 8 triangles.
        assert_eq!(dual.vertex_count(), 6);
        assert_eq!(dual.faces().len(), 8);
        assert!(dual.faces().iter().all(|f| f.len() == 3));
        let (back, _) = dual.dual().unwrap();
        assert_eq!(back.vertex_count(), 8);
        assert_eq!(back.edge_count(), 12);
        // Same adjacency after the round trip (dual vertex i is face i, and
        // dual faces were emitted in vertex order, so ids line up with the
        // positions of the original vertices).
        let ids: Vec<usize> = m.vertices().to_vec();
        for e in m.edges() {
            let i = ids.iter().position(|&v| v == e.0).unwrap();
            let j = ids.iter().position(|&v| v == e.1).unwrap();
            assert!(back.has_edge(Edge::new(i, j)), "missing edge {e:?}");
        }
    }

    #[test]
    fn equatorial_cycle_splits_the_cube_dual() {
        let m = Mesh::new(cube_faces()).unwrap();
        let (dual, _) = m.dual().unwrap();
        // Faces 2,3,4,5 are the lateral faces; in the dual they form a
        // 4-cycle separating face 0 (bottom) from face 1 (top).
        let sides = dual.cycle_sides(&[2, 3, 4, 5]).unwrap();
        let mut single: Vec<BTreeSet<usize>> =
            sides.iter().map(|s| s.vertices.clone()).collect();
        single.sort_by_key(|s| s.iter().next().copied());
        assert_eq!(single[0], BTreeSet::from([0]));
        assert_eq!(single[1], BTreeSet::from([1]));
    }

    #[test]
    fn two_cut_detection() {
        // K_{2,3} drawn on the sphere with three quadrilateral faces is a
        // perfectly good oriented mesh, but vertices 0 and 1 form a 2-cut.
        let theta = Mesh::new(vec![
            vec![0, 2, 1, 3],
            vec![0, 3, 1, 4],
            vec![0, 4, 1, 2],
        ])
        .unwrap();
        assert_eq!(theta.find_two_cut(), Some((0, 1)));
        assert!(Mesh::new(cube_faces()).unwrap().find_two_cut().is_none());
    }
}
