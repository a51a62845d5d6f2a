//! Ready-made labeled polyhedra: prisms, prism towers, cubes, the dodecahedron.
//!
//! Everything here is a fixed, known-valid complex, so constructors return
//! [`LabeledPolyhedron`] directly and panic only on programmer error (bad `n`,
//! wrong label-vector length). The prism vertex layout is shared by all the
//! prism-shaped builders: ring `r` holds vertices `r*n .. r*n + n`, counted
//! around the cap, with ring 0 on top.

use crate::angle::Angle;
use crate::polyhedron::LabeledPolyhedron;

/// Dihedral labels for an `n`-prism, indexed by lateral position.
///
/// `top[i]` sits on the top-cap edge `(i, i+1)`, `bottom[i]` on the bottom-cap
/// edge below it, and `vertical[i]` on the upright edge at corner `i`. The
/// quadrilateral face at position `i` is bounded by `top[i]`, `bottom[i]`,
/// `vertical[i]`, and `vertical[i+1]`.
#[derive(Clone, Debug)]
pub struct PrismLabels {
    pub top: Vec<Angle>,
    pub bottom: Vec<Angle>,
    pub vertical: Vec<Angle>,
}

impl PrismLabels {
    /// The same three angles at every position.
    pub fn uniform(n: usize, top: Angle, bottom: Angle, vertical: Angle) -> PrismLabels {
        PrismLabels {
            top: vec![top; n],
            bottom: vec![bottom; n],
            vertical: vec![vertical; n],
        }
    }

    /// Every edge labeled π/2.
    pub fn right_horizontal(n: usize) -> PrismLabels {
        let right = Angle::right_angle();
        PrismLabels::uniform(n, right, right, right)
    }

    /// All cap edges π/3, all verticals π/2.
    pub fn pi3_horizontal(n: usize) -> PrismLabels {
        let right = Angle::right_angle();
        let third = Angle::pi_over(3);
        PrismLabels::uniform(n, third, third, right)
    }

    /// The minimal-volume Coxeter labeling: positions 0 and 1 fully right-angled,
    /// then a single π/3 alternating between the top and bottom cap as the
    /// position parity flips. Verticals are all π/2.
    pub fn alternating(n: usize) -> PrismLabels {
        let mut labels = PrismLabels::right_horizontal(n);
        let third = Angle::pi_over(3);
        for k in 2..n {
            if k % 2 == 0 {
                labels.top[k] = third;
            } else {
                labels.bottom[k] = third;
            }
        }
        labels
    }

    /// The basic-prism labeling splitting into `r` cubes with the essential
    /// π/3 on opposite caps and `s = n - r - 3` with it on the same cap:
    /// positions 0 and 1 fully right-angled, one π/3 per remaining position,
    /// switching caps across the first `r` adjacent pairs and staying put
    /// across the rest. `basic(n - 3, 0)` is the alternating labeling.
    pub fn basic(r: usize, s: usize) -> PrismLabels {
        let n = r + s + 3;
        let mut labels = PrismLabels::right_horizontal(n);
        let third = Angle::pi_over(3);
        let mut on_top = true;
        for k in 2..n {
            if on_top {
                labels.top[k] = third;
            } else {
                labels.bottom[k] = third;
            }
            if k - 2 < r {
                on_top = !on_top;
            }
        }
        labels
    }

    /// π/2 on both cap edges at the given positions, π/3 on the rest; verticals
    /// all π/2. Placing the right-angled positions pairwise non-adjacent makes
    /// each such pair a Euclidean prismatic 4-circuit and nothing else one.
    pub fn right_pairs_at(n: usize, positions: &[usize]) -> PrismLabels {
        let mut labels = PrismLabels::pi3_horizontal(n);
        let right = Angle::right_angle();
        for &k in positions {
            assert!(k < n, "lateral position {k} out of range for a {n}-prism");
            labels.top[k] = right;
            labels.bottom[k] = right;
        }
        labels
    }
}

/// The `n`-prism: two `n`-gon caps joined by `n` quadrilaterals.
///
/// Top cap is `(0, .., n-1)`, bottom cap `(n, .., 2n-1)`, and the lateral at
/// position `i` runs `(i+1, i, n+i, n+i+1)` (indices mod `n`), so the face
/// order is top, laterals 0..n, bottom.
pub fn n_prism(n: usize, labels: PrismLabels) -> LabeledPolyhedron {
    assert!(n >= 3, "a prism needs at least 3 lateral faces");
    assert!(
        labels.top.len() == n && labels.bottom.len() == n && labels.vertical.len() == n,
        "label vectors must have length {n}"
    );
    let mut faces = vec![(0..n).collect::<Vec<_>>()];
    for i in 0..n {
        let j = (i + 1) % n;
        faces.push(vec![j, i, n + i, n + j]);
    }
    faces.push((n..2 * n).rev().collect());

    let mut edge_labels = Vec::new();
    for i in 0..n {
        let j = (i + 1) % n;
        edge_labels.push(((i, j), labels.top[i]));
        edge_labels.push(((n + i, n + j), labels.bottom[i]));
        edge_labels.push(((i, n + i), labels.vertical[i]));
    }
    LabeledPolyhedron::new(faces, edge_labels).expect("prism construction is always valid")
}

/// A stack of `band_verticals.len()` prisms sharing their `n`-gon cross-sections.
///
/// Every ring edge is labeled π/2; the upright edges of band `r` (counting
/// from the top) get `band_verticals[r]`. A single band is an ordinary prism;
/// two bands make a drum whose middle-ring vertices have degree 4.
pub fn prism_tower(n: usize, band_verticals: &[Angle]) -> LabeledPolyhedron {
    assert!(n >= 3, "a tower needs at least 3 lateral faces per band");
    let bands = band_verticals.len();
    assert!(bands >= 1, "a tower needs at least one band");
    let right = Angle::right_angle();

    let mut faces = vec![(0..n).collect::<Vec<_>>()];
    for r in 0..bands {
        let (above, below) = (r * n, (r + 1) * n);
        for i in 0..n {
            let j = (i + 1) % n;
            faces.push(vec![above + j, above + i, below + i, below + j]);
        }
    }
    faces.push((bands * n..(bands + 1) * n).rev().collect());

    let mut edge_labels = Vec::new();
    for r in 0..=bands {
        for i in 0..n {
            let j = (i + 1) % n;
            edge_labels.push(((r * n + i, r * n + j), right));
        }
    }
    for (r, &vertical) in band_verticals.iter().enumerate() {
        for i in 0..n {
            edge_labels.push(((r * n + i, (r + 1) * n + i), vertical));
        }
    }
    LabeledPolyhedron::new(faces, edge_labels).expect("tower construction is always valid")
}

/// The cube with all dihedral angles π/2, caps listed first.
pub fn cube_right_angled() -> LabeledPolyhedron {
    let faces = vec![
        vec![0, 3, 2, 1],
        vec![4, 5, 6, 7],
        vec![0, 1, 5, 4],
        vec![1, 2, 6, 5],
        vec![2, 3, 7, 6],
        vec![3, 0, 4, 7],
    ];
    let right = Angle::right_angle();
    let edges = [
        (0, 1), (1, 2), (2, 3), (3, 0),
        (4, 5), (5, 6), (6, 7), (7, 4),
        (0, 4), (1, 5), (2, 6), (3, 7),
    ];
    LabeledPolyhedron::new(faces, edges.map(|e| (e, right)))
        .expect("cube construction is always valid")
}

/// The regular tetrahedron skeleton with a uniform label.
pub fn tetrahedron(label: Angle) -> LabeledPolyhedron {
    let faces = vec![vec![0, 1, 2], vec![0, 2, 3], vec![0, 3, 1], vec![3, 2, 1]];
    let edges = [(0, 1), (0, 2), (0, 3), (1, 2), (2, 3), (3, 1)];
    LabeledPolyhedron::new(faces, edges.map(|e| (e, label)))
        .expect("tetrahedron construction is always valid")
}

/// A right-angled triangular prism with one top and one bottom vertex cut off
/// by triangles. Its lateral 3-circuit is spherical (sum 3π/2) and has two
/// faces on each side, so it is the smallest input the spherical splitting
/// pass actually cuts.
pub fn truncated_prism_right_angled() -> LabeledPolyhedron {
    // Vertices 0..4 are what is left of the prism (two top, two bottom), 4..7
    // the triangle replacing the third top vertex, 7..10 the one replacing a
    // bottom vertex picked on a different upright edge.
    let faces = vec![
        vec![5, 4, 0, 1],          // top cap, one corner cut
        vec![3, 8, 7, 2],          // bottom cap, one corner cut
        vec![0, 4, 6, 2, 7, 9],    // lateral containing both cut corners
        vec![1, 0, 9, 8, 3],       // lateral containing the bottom cut
        vec![6, 5, 1, 3, 2],       // lateral containing the top cut
        vec![4, 5, 6],             // top truncation triangle
        vec![7, 8, 9],             // bottom truncation triangle
    ];
    let right = Angle::right_angle();
    let edges = [
        (0, 1), (4, 5), (0, 4), (1, 5),
        (2, 3), (7, 8), (2, 7), (3, 8),
        (0, 9), (1, 3), (2, 6),
        (4, 6), (5, 6), (7, 9), (8, 9),
    ];
    LabeledPolyhedron::new(faces, edges.map(|e| (e, right)))
        .expect("truncated prism construction is always valid")
}

/// A 3-prism with one top and one bottom corner clipped at staggered
/// positions, i.e. over different upright edges. The stagger leaves no
/// prismatic 4-circuits, the waist survives as a nontrivial prismatic
/// 3-circuit, and the labels keep every corner spherical: upright edges π/4,
/// cap edges at the clips π/3, everything else π/2.
pub fn staggered_clipped_prism() -> LabeledPolyhedron {
    let faces = vec![
        vec![1, 0, 4, 2],       // top cap
        vec![2, 4, 3],          // top clip, over a vertical
        vec![5, 6, 7, 9],       // bottom cap
        vec![9, 7, 8],          // bottom clip, over the next vertical
        vec![1, 2, 3, 6, 5],    // lateral carrying the top clip
        vec![8, 7, 6, 3, 4, 0], // lateral between both clips
        vec![0, 1, 5, 9, 8],    // lateral carrying the bottom clip
    ];
    let q = Angle::pi_over;
    let labels = vec![
        ((0, 1), q(2)),
        ((0, 4), q(3)),
        ((2, 4), q(2)),
        ((1, 2), q(3)),
        ((3, 4), q(2)),
        ((2, 3), q(2)),
        ((3, 6), q(4)),
        ((1, 5), q(4)),
        ((0, 8), q(4)),
        ((5, 6), q(2)),
        ((6, 7), q(3)),
        ((7, 9), q(2)),
        ((5, 9), q(3)),
        ((7, 8), q(2)),
        ((8, 9), q(2)),
    ];
    LabeledPolyhedron::new(faces, labels).expect("clipped prism construction is always valid")
}

/// The right-angled dodecahedron: top and bottom pentagons `0..5` and
/// `15..20`, with two interleaved rings `5..10` and `10..15` zigzagging
/// between the bands.
pub fn dodecahedron_right_angled() -> LabeledPolyhedron {
    let v = |i: usize| i % 5;
    let u = |i: usize| 5 + i % 5;
    let w = |i: usize| 10 + i % 5;
    let b = |i: usize| 15 + i % 5;

    let mut faces = vec![vec![4, 3, 2, 1, 0]];
    for i in 0..5 {
        faces.push(vec![v(i), v(i + 1), u(i + 1), w(i), u(i)]);
    }
    for i in 0..5 {
        faces.push(vec![w(i), u(i + 1), w(i + 1), b(i + 1), b(i)]);
    }
    faces.push(vec![15, 16, 17, 18, 19]);

    let right = Angle::right_angle();
    let mut edges = Vec::new();
    for i in 0..5 {
        edges.push(((v(i), v(i + 1)), right));
        edges.push(((v(i), u(i)), right));
        edges.push(((u(i), w(i)), right));
        edges.push(((w(i), u(i + 1)), right));
        edges.push(((w(i), b(i)), right));
        edges.push(((b(i), b(i + 1)), right));
    }
    LabeledPolyhedron::new(faces, edges).expect("dodecahedron construction is always valid")
}

/// A named collection of labeled polyhedra covering every behavior the
/// decomposition distinguishes: prisms that are recognized whole, prisms that
/// split, drums and towers, circuit-free inputs, and the truncated prism that
/// exercises the spherical pass.
pub fn gallery() -> Vec<(String, LabeledPolyhedron)> {
    let mut inputs = Vec::new();
    for n in 4..=8 {
        inputs.push((
            format!("right-horizontal {n}-prism"),
            n_prism(n, PrismLabels::right_horizontal(n)),
        ));
    }
    for n in 4..=8 {
        inputs.push((
            format!("alternating {n}-prism"),
            n_prism(n, PrismLabels::alternating(n)),
        ));
    }
    for n in 5..=8 {
        inputs.push((
            format!("pi/3-horizontal {n}-prism"),
            n_prism(n, PrismLabels::pi3_horizontal(n)),
        ));
    }
    inputs.push((
        "one-circuit 6-prism".to_string(),
        n_prism(6, PrismLabels::right_pairs_at(6, &[0, 3])),
    ));
    inputs.push((
        "one-circuit 7-prism".to_string(),
        n_prism(7, PrismLabels::right_pairs_at(7, &[0, 3])),
    ));
    inputs.push((
        "one-circuit 8-prism".to_string(),
        n_prism(8, PrismLabels::right_pairs_at(8, &[0, 4])),
    ));
    inputs.push((
        "three-circuit 9-prism".to_string(),
        n_prism(9, PrismLabels::right_pairs_at(9, &[0, 3, 6])),
    ));

    let right = Angle::right_angle();
    let quarter = Angle::pi_over(4);
    inputs.push(("right drum(4)".to_string(), prism_tower(4, &[right, right])));
    inputs.push(("right drum(5)".to_string(), prism_tower(5, &[right, right])));
    inputs.push((
        "drum(3) with quarter-angle upper verticals".to_string(),
        prism_tower(3, &[quarter, right]),
    ));
    inputs.push((
        "4-prism tower".to_string(),
        prism_tower(4, &[right, right, right]),
    ));
    inputs.push((
        "3-prism tower with quarter-angle waist".to_string(),
        prism_tower(3, &[right, quarter, right]),
    ));
    inputs.push((
        "truncated right prism".to_string(),
        truncated_prism_right_angled(),
    ));
    inputs.push((
        "staggered clipped 3-prism".to_string(),
        staggered_clipped_prism(),
    ));
    inputs.push((
        "right dodecahedron".to_string(),
        dodecahedron_right_angled(),
    ));
    inputs
}
