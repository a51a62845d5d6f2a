//! Prismatic circuits of the dual graph.
//!
//! A prismatic k-circuit is a simple k-cycle in the dual such that no two of
//! its edges lie in a common dual face; equivalently, the polyhedron edges it
//! crosses are pairwise vertex-disjoint, so the circuit marks a genuine
//! "waist" rather than a detour around a single vertex. Only k = 3 and k = 4
//! matter here: 3-circuits obstruct or permit the reduction to atoroidal
//! pieces, and Euclidean 4-circuits are the annular waists the decomposition
//! cuts along.

use crate::angle::{AngleSum, GeometryClass};
use crate::dual::DualGraph;
use crate::mesh::{CycleError, Edge, Mesh};

#[derive(Debug, thiserror::Error, Clone, PartialEq, Eq)]
pub enum CircuitError {
    #[error("expected a 3- or 4-circuit, got length {0}")]
    BadLength(usize),
    #[error(transparent)]
    Cycle(#[from] CycleError),
    #[error("edges {0:?} and {1:?} lie in the common dual face {2}")]
    NotPrismatic(Edge, Edge, usize),
}

/// A prismatic circuit together with everything the decomposition asks about
/// it: its geometry class (label sum against the flat threshold (k-2)pi) and
/// whether it is trivial, i.e. cuts off a single dual vertex.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, serde::Serialize)]
pub struct PrismaticCircuit {
    /// Vertex sequence in canonical form: lexicographically least over all
    /// rotations and both directions, so equal circuits compare equal.
    vertices: Vec<usize>,
    class: GeometryClass,
    borderline: bool,
    trivial: bool,
}

impl PrismaticCircuit {
    /// Validate a cycle of dual vertices as a prismatic circuit and classify
    /// it. The cycle may start anywhere and run in either direction.
    pub fn from_cycle(dual: &DualGraph, cycle: &[usize]) -> Result<PrismaticCircuit, CircuitError> {
        let k = cycle.len();
        if k != 3 && k != 4 {
            return Err(CircuitError::BadLength(k));
        }
        // cycle_sides validates simplicity and the existence of every edge,
        // and hands us the interior vertex counts for the triviality test.
        let sides = dual.mesh().cycle_sides(cycle)?;

        let edges: Vec<Edge> = (0..k)
            .map(|i| Edge::new(cycle[i], cycle[(i + 1) % k]))
            .collect();
        for i in 0..k {
            for j in i + 1..k {
                let fa = dual.mesh().faces_of_edge(edges[i]).expect("cycle edge");
                let fb = dual.mesh().faces_of_edge(edges[j]).expect("cycle edge");
                if let Some(&f) = fa.iter().find(|f| fb.contains(f)) {
                    return Err(CircuitError::NotPrismatic(edges[i], edges[j], f));
                }
            }
        }

        let sum = AngleSum::of(edges.iter().map(|&e| dual.label(e)));
        let cmp = sum.compare_to_pi_multiple(k as i64 - 2, 1);
        Ok(PrismaticCircuit {
            vertices: canonical_cycle(cycle),
            class: GeometryClass::from_comparison(cmp),
            borderline: cmp.borderline,
            trivial: sides.iter().any(|s| s.vertices.len() == 1),
        })
    }

    pub fn vertices(&self) -> &[usize] {
        &self.vertices
    }

    pub fn k(&self) -> usize {
        self.vertices.len()
    }

    pub fn edges(&self) -> Vec<Edge> {
        let k = self.vertices.len();
        (0..k)
            .map(|i| Edge::new(self.vertices[i], self.vertices[(i + 1) % k]))
            .collect()
    }

    pub fn class(&self) -> GeometryClass {
        self.class
    }

    /// True when the class was decided by the floating-point tolerance band
    /// rather than exact arithmetic.
    pub fn is_borderline(&self) -> bool {
        self.borderline
    }

    /// Trivial circuits cut off a single dual vertex and never drive a split.
    pub fn is_trivial(&self) -> bool {
        self.trivial
    }

    pub fn contains_vertex(&self, v: usize) -> bool {
        self.vertices.contains(&v)
    }

    /// The two pairs of opposite vertices of a 4-circuit, each sorted.
    pub fn opposite_pairs(&self) -> [[usize; 2]; 2] {
        assert_eq!(self.vertices.len(), 4, "opposite pairs need a 4-circuit");
        let sorted = |a: usize, b: usize| if a <= b { [a, b] } else { [b, a] };
        [
            sorted(self.vertices[0], self.vertices[2]),
            sorted(self.vertices[1], self.vertices[3]),
        ]
    }

    pub fn has_opposite_pair(&self, pair: [usize; 2]) -> bool {
        let sorted = |[a, b]: [usize; 2]| if a <= b { [a, b] } else { [b, a] };
        self.opposite_pairs().contains(&sorted(pair))
    }
}

fn canonical_cycle(cycle: &[usize]) -> Vec<usize> {
    let k = cycle.len();
    let mut reversed = cycle.to_vec();
    reversed.reverse();
    let mut best: Option<Vec<usize>> = None;
    for candidate in [cycle.to_vec(), reversed] {
        for r in 0..k {
            let mut rot = candidate.clone();
            rot.rotate_left(r);
            if best.as_ref().is_none_or(|b| rot < *b) {
                best = Some(rot);
            }
        }
    }
    best.expect("cycles are nonempty")
}

/// All prismatic k-circuits of the dual graph, sorted by canonical vertex
/// sequence. Each undirected circuit appears exactly once.
pub fn prismatic_circuits(dual: &DualGraph, k: usize) -> Vec<PrismaticCircuit> {
    assert!(k == 3 || k == 4, "only 3- and 4-circuits arise");
    let mesh = dual.mesh();
    let mut out = Vec::new();
    for &start in mesh.vertices() {
        let mut path = vec![start];
        extend_cycles(mesh, k, &mut path, &mut |cycle| {
            if is_prismatic(mesh, cycle) {
                let circuit = PrismaticCircuit::from_cycle(dual, cycle)
                    .expect("enumerated cycles are valid");
                out.push(circuit);
            }
        });
    }
    out.sort();
    out
}

/// Euclidean prismatic 4-circuits: the waists the decomposition cares about.
pub fn euclidean_four_circuits(dual: &DualGraph) -> Vec<PrismaticCircuit> {
    prismatic_circuits(dual, 4)
        .into_iter()
        .filter(|c| c.class() == GeometryClass::Euclidean)
        .collect()
}

/// Grow simple paths whose interior vertices all exceed the start, emitting
/// each closed k-cycle once (direction fixed by second < last vertex).
fn extend_cycles(mesh: &Mesh, k: usize, path: &mut Vec<usize>, sink: &mut impl FnMut(&[usize])) {
    let start = path[0];
    let last = *path.last().expect("path is nonempty");
    if path.len() == k {
        if path[1] < path[k - 1] && mesh.has_edge(Edge::new(last, start)) {
            sink(path);
        }
        return;
    }
    for w in mesh.neighbors(last) {
        if w > start && !path.contains(&w) {
            path.push(w);
            extend_cycles(mesh, k, path, sink);
            path.pop();
        }
    }
}

fn is_prismatic(mesh: &Mesh, cycle: &[usize]) -> bool {
    let k = cycle.len();
    let edges: Vec<[usize; 2]> = (0..k)
        .map(|i| {
            mesh.faces_of_edge(Edge::new(cycle[i], cycle[(i + 1) % k]))
                .expect("cycle edge")
        })
        .collect();
    for i in 0..k {
        for j in i + 1..k {
            if edges[i].iter().any(|f| edges[j].contains(f)) {
                return false;
            }
        }
    }
    true
}
