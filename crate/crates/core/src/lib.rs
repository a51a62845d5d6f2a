//! Volume estimation for non-obtuse hyperbolic polyhedra, done combinatorially.
//!
//! A polyhedron here is an abstract one: a 3-connected planar graph with a
//! dihedral-angle label on every edge, no geometry attached. The crate checks
//! whether such data is realizable as a hyperbolic polyhedron (Andreev's
//! conditions), cuts it into pieces along prismatic circuits the way the
//! spherical/Euclidean orbifold decompositions prescribe, and turns the pieces
//! into two-sided volume bounds built from a small set of closed forms: the
//! Lobachevsky function, Lambert-cube volumes, and the ideal octahedron and
//! tetrahedron constants.
//!
//! The main entry points are [`polyhedron::LabeledPolyhedron`] for input
//! validation, [`andreev`] for realizability, [`decompose`] for the circuit
//! decomposition, and [`bounds::estimate`] for the assembled estimate.

pub mod andreev;
pub mod angle;
pub mod bounds;
pub mod circuits;
pub mod cubes;
pub mod decompose;
pub mod truncate;
pub mod dual;
pub mod io;
pub mod mesh;
pub mod numerics;
pub mod polyhedron;
pub mod shapes;
