//! Reading and writing labeled polyhedra as structured documents.
//!
//! A polyhedron file is one JSON document with three fields: `vertices`
//! (the vertex count), `faces` (arrays of 0-based vertex indices, each
//! cyclic and oriented consistently), and `labels` (one entry per derived
//! edge, either an exact Coxeter value `{"edge": [u, v], "pi_over": k}`
//! meaning π/k, or a raw `{"edge": [u, v], "radians": x}`).
//!
//! ```json
//! {
//!   "vertices": 4,
//!   "faces": [[0, 1, 2], [0, 2, 3], [0, 3, 1], [3, 2, 1]],
//!   "labels": [{"edge": [0, 1], "pi_over": 3}, ...]
//! }
//! ```
//!
//! Writing sorts label entries by edge, so output is stable for golden
//! files and diffing.

use serde::{Deserialize, Serialize};

use crate::angle::Angle;
use crate::circuits::PrismaticCircuit;
use crate::decompose::{DecompositionResult, Step};
use crate::polyhedron::{LabeledPolyhedron, ValidityError};

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PolyhedronDocument {
    pub vertices: usize,
    pub faces: Vec<Vec<usize>>,
    pub labels: Vec<LabelEntry>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct LabelEntry {
    pub edge: [usize; 2],
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub pi_over: Option<i64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub radians: Option<f64>,
}

#[derive(Debug, thiserror::Error)]
pub enum ReadError {
    #[error("malformed document: {0}")]
    Parse(#[from] serde_json::Error),
    #[error("label for edge [{0}, {1}] needs exactly one of pi_over or radians")]
    AmbiguousLabel(usize, usize),
    #[error("label for edge [{0}, {1}] has pi_over 0, which is not an angle")]
    ZeroOrder(usize, usize),
    #[error("document declares {declared} vertices but the faces use {derived}")]
    VertexCount { declared: usize, derived: usize },
    #[error(transparent)]
    Invalid(#[from] ValidityError),
}

pub fn to_document(p: &LabeledPolyhedron) -> PolyhedronDocument {
    let labels = p
        .labels()
        .iter()
        .map(|(e, a)| {
            let (pi_over, radians) = match a.coxeter_order() {
                Some(n) => (Some(n), None),
                None => (None, Some(a.to_radians())),
            };
            LabelEntry { edge: [e.0, e.1], pi_over, radians }
        })
        .collect();
    PolyhedronDocument {
        vertices: p.vertex_count(),
        faces: p.faces().to_vec(),
        labels,
    }
}

pub fn from_document(doc: &PolyhedronDocument) -> Result<LabeledPolyhedron, ReadError> {
    let mut labels = Vec::with_capacity(doc.labels.len());
    for entry in &doc.labels {
        let [u, v] = entry.edge;
        let angle = match (entry.pi_over, entry.radians) {
            (Some(0), None) => return Err(ReadError::ZeroOrder(u, v)),
            (Some(k), None) => Angle::pi_over(k),
            (None, Some(x)) => Angle::radians(x),
            _ => return Err(ReadError::AmbiguousLabel(u, v)),
        };
        labels.push(((u, v), angle));
    }
    let p = LabeledPolyhedron::new(doc.faces.clone(), labels)?;
    if p.vertex_count() != doc.vertices {
        return Err(ReadError::VertexCount {
            declared: doc.vertices,
            derived: p.vertex_count(),
        });
    }
    Ok(p)
}

/// Pretty-printed document text, newline-terminated.
pub fn write_string(p: &LabeledPolyhedron) -> String {
    let mut text = serde_json::to_string_pretty(&to_document(p))
        .expect("a polyhedron document always serializes");
    text.push('\n');
    text
}

pub fn read_str(text: &str) -> Result<LabeledPolyhedron, ReadError> {
    from_document(&serde_json::from_str(text)?)
}

#[derive(Clone, Copy, Debug, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum ComponentClass {
    SeifertFibered,
    Atoroidal,
}

#[derive(Clone, Debug, Serialize)]
pub struct ComponentDocument {
    pub classification: ComponentClass,
    pub polyhedron: PolyhedronDocument,
    /// Label-aware isomorphism certificate, for comparing decompositions.
    pub certificate: String,
}

/// A decomposition flattened into one serializable report: components as
/// full polyhedron documents, the circuits that were cut, and the ordered
/// trace of every step taken.
#[derive(Clone, Debug, Serialize)]
pub struct DecompositionDocument {
    pub components: Vec<ComponentDocument>,
    pub spherical_splits: Vec<PrismaticCircuit>,
    pub euclidean3_splits: Vec<PrismaticCircuit>,
    pub trace: Vec<Step>,
    pub degree_four_vertices: Vec<usize>,
}

pub fn decomposition_document(
    result: &DecompositionResult,
) -> Result<DecompositionDocument, ValidityError> {
    let mut components = Vec::new();
    for (class, pieces) in [
        (ComponentClass::SeifertFibered, &result.seifert),
        (ComponentClass::Atoroidal, &result.atoroidal),
    ] {
        for piece in pieces.iter() {
            components.push(ComponentDocument {
                classification: class,
                polyhedron: to_document(&piece.primal()?),
                certificate: piece.canonical_certificate(),
            });
        }
    }
    Ok(DecompositionDocument {
        components,
        spherical_splits: result.spherical_splits.clone(),
        euclidean3_splits: result.euclidean3_splits.clone(),
        trace: result.trace.clone(),
        degree_four_vertices: result.degree_four_vertices.clone(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::decompose::{decompose, DecomposeOptions};
    use crate::dual::DualGraph;
    use crate::shapes;

    #[test]
    fn every_gallery_member_round_trips() {
        for (name, p) in shapes::gallery() {
            let text = write_string(&p);
            let q = read_str(&text).unwrap_or_else(|e| panic!("{name}: {e}"));
            assert_eq!(p.faces(), q.faces(), "{name}");
            assert_eq!(
                DualGraph::of(&p).canonical_certificate(),
                DualGraph::of(&q).canonical_certificate(),
                "{name}"
            );
        }
    }

    #[test]
    fn documents_use_the_exact_form_when_there_is_one() {
        let text = write_string(&shapes::cube_right_angled());
        let value: serde_json::Value = serde_json::from_str(&text).unwrap();
        assert_eq!(value["vertices"], 8);
        assert_eq!(value["faces"].as_array().unwrap().len(), 6);
        let labels = value["labels"].as_array().unwrap();
        assert_eq!(labels.len(), 12);
        for entry in labels {
            assert_eq!(entry["pi_over"], 2);
            assert!(entry.get("radians").is_none());
        }
    }

    #[test]
    fn radian_labels_parse_and_serialize() {
        let mut doc = to_document(&shapes::cube_right_angled());
        doc.labels[0].pi_over = None;
        doc.labels[0].radians = Some(std::f64::consts::FRAC_PI_2);
        let p = from_document(&doc).unwrap();
        let back = to_document(&p);
        assert_eq!(back.labels[0].pi_over, None);
        assert!((back.labels[0].radians.unwrap() - std::f64::consts::FRAC_PI_2).abs() < 1e-15);
    }

    #[test]
    fn malformed_documents_are_rejected_with_specific_errors() {
        let mut both = to_document(&shapes::cube_right_angled());
        both.labels[0].radians = Some(1.0);
        assert!(matches!(from_document(&both), Err(ReadError::AmbiguousLabel(_, _))));

        let mut neither = to_document(&shapes::cube_right_angled());
        neither.labels[0].pi_over = None;
        assert!(matches!(from_document(&neither), Err(ReadError::AmbiguousLabel(_, _))));

        let mut zero = to_document(&shapes::cube_right_angled());
        zero.labels[0].pi_over = Some(0);
        assert!(matches!(from_document(&zero), Err(ReadError::ZeroOrder(_, _))));

        let mut count = to_document(&shapes::cube_right_angled());
        count.vertices = 9;
        assert!(matches!(
            from_document(&count),
            Err(ReadError::VertexCount { declared: 9, derived: 8 })
        ));

        let mut missing = to_document(&shapes::cube_right_angled());
        missing.labels.pop();
        assert!(matches!(from_document(&missing), Err(ReadError::Invalid(_))));

        assert!(matches!(read_str("{"), Err(ReadError::Parse(_))));
        assert!(matches!(
            read_str(r#"{"vertices": 1, "faces": [], "labels": [], "extra": 0}"#),
            Err(ReadError::Parse(_))
        ));
    }

    #[test]
    fn decomposition_documents_carry_components_and_trace() {
        let prism = shapes::n_prism(6, shapes::PrismLabels::right_horizontal(6));
        let result = decompose(&DualGraph::of(&prism), &DecomposeOptions::default()).unwrap();
        let doc = decomposition_document(&result).unwrap();
        assert!(!doc.components.is_empty());
        assert!(matches!(doc.components[0].classification, ComponentClass::SeifertFibered));
        let text = serde_json::to_string(&doc).unwrap();
        assert!(text.contains("\"certificate\""));
        assert!(text.contains("\"step\""));
    }
}
