use std::fmt;

use serde::{Deserialize, Serialize};

use super::{induced_edge_label, verify_iasi, SetLabeling, Verdict};
use crate::error::Result;
use crate::graphcore::{self, Edge, Element, ElementCorrespondence, Graph};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "op", content = "at", rename_all = "lowercase")]
pub enum Transform {
    Line,
    Total,
    Subdivide(Edge),
    Contract(Edge),
    Reduce(String),
}

impl fmt::Display for Transform {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Transform::Line => f.write_str("line graph"),
            Transform::Total => f.write_str("total graph"),
            Transform::Subdivide(e) => write!(f, "subdivision of {e}"),
            Transform::Contract(e) => write!(f, "contraction of {e}"),
            Transform::Reduce(v) => write!(f, "topological reduction at {v}"),
        }
    }
}

/// A derived graph with its carried-over labeling.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Transported {
    pub graph: Graph,
    pub labeling: SetLabeling,
    pub correspondence: Option<ElementCorrespondence>,
    pub fresh_vertex: Option<String>,
    /// Injectivity of the derived labeling; a violation here is a result, not an error.
    pub verdict: Verdict,
}

fn labels_from_correspondence(
    corr: &ElementCorrespondence,
    f: &SetLabeling,
) -> Result<SetLabeling> {
    corr.vertex_origin
        .iter()
        .map(|(derived, origin)| {
            let label = match origin {
                Element::Vertex(v) => f.label(v)?.clone(),
                Element::Edge(e) => induced_edge_label(f, e)?,
            };
            Ok((derived.clone(), label))
        })
        .collect()
}

/// Applies `t` to `g` and carries `f` across.
///
/// Vertices standing for an edge `uv` (line/total graph vertices, the
/// subdivision vertex, the contracted vertex) receive `f(u) + f(v)`; all
/// surviving original vertices keep their labels.
pub fn transport_labeling(t: &Transform, g: &Graph, f: &SetLabeling) -> Result<Transported> {
    verify_iasi(g, f)?.into_result()?;
    let (graph, labeling, correspondence, fresh_vertex) = match t {
        Transform::Line => {
            let (lg, corr) = graphcore::line_graph(g)?;
            let labels = labels_from_correspondence(&corr, f)?;
            (lg, labels, Some(corr), None)
        }
        Transform::Total => {
            let (tg, corr) = graphcore::total_graph(g)?;
            let labels = labels_from_correspondence(&corr, f)?;
            (tg, labels, Some(corr), None)
        }
        Transform::Subdivide(e) => {
            let (sg, w) = graphcore::subdivide(g, e)?;
            let mut labels = f.clone();
            labels.insert(w.clone(), induced_edge_label(f, e)?);
            (sg, labels, None, Some(w))
        }
        Transform::Contract(e) => {
            let (cg, w) = graphcore::contract(g, e)?;
            let mut labels = f.restricted_to(&cg);
            labels.insert(w.clone(), induced_edge_label(f, e)?);
            (cg, labels, None, Some(w))
        }
        Transform::Reduce(v) => {
            let rg = graphcore::topological_reduction(g, v)?;
            (rg.clone(), f.restricted_to(&rg), None, None)
        }
    };
    let verdict = verify_iasi(&graph, &labeling)?;
    Ok(Transported {
        graph,
        labeling,
        correspondence,
        fresh_vertex,
        verdict,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graphcore::fixtures::path;
    use crate::labeling::classify;
    use crate::setcore::IntegerSet;

    fn set(xs: &[u64]) -> IntegerSet {
        IntegerSet::new(xs.iter().copied()).unwrap()
    }

    fn first_kind_k2() -> (Graph, SetLabeling) {
        let f = [("u", set(&[0, 1, 2])), ("v", set(&[0, 4, 8]))]
            .into_iter()
            .map(|(v, s)| (v.to_string(), s))
            .collect();
        (path(&["u", "v"]), f)
    }

    fn p3() -> (Graph, SetLabeling) {
        let f = [
            ("u", set(&[0, 1, 2])),
            ("v", set(&[0, 4, 8])),
            ("w", set(&[3, 4, 5])),
        ]
        .into_iter()
        .map(|(v, s)| (v.to_string(), s))
        .collect();
        (path(&["u", "v", "w"]), f)
    }

    #[test]
    fn contraction_labels_merged_vertex_with_edge_label() {
        let (g, f) = first_kind_k2();
        let uv = Edge::new("u", "v").unwrap();
        let out = transport_labeling(&Transform::Contract(uv), &g, &f).unwrap();
        assert_eq!(out.graph.vertex_count(), 1);
        let w = out.fresh_vertex.clone().unwrap();
        assert_eq!(
            out.labeling.get(&w),
            Some(&set(&[0, 1, 2, 4, 5, 6, 8, 9, 10]))
        );
        assert!(out.verdict.is_ok());
        assert!(
            !classify(&out.graph, &out.labeling)
                .unwrap()
                .vertex_arithmetic
        );
    }

    #[test]
    fn subdivision_vertex_carries_edge_label() {
        let (g, f) = p3();
        let uv = Edge::new("u", "v").unwrap();
        let out = transport_labeling(&Transform::Subdivide(uv.clone()), &g, &f).unwrap();
        let w = out.fresh_vertex.unwrap();
        assert_eq!(
            out.labeling.get(&w),
            Some(&induced_edge_label(&f, &uv).unwrap())
        );
        assert_eq!(out.labeling.get("w"), f.get("w"));
        assert_eq!(out.graph.edge_count(), 3);
    }

    #[test]
    fn reduction_keeps_labels() {
        let (g, f) = p3();
        let out = transport_labeling(&Transform::Reduce("v".into()), &g, &f).unwrap();
        assert_eq!(out.graph, path(&["u", "w"]));
        assert_eq!(out.labeling.get("u"), f.get("u"));
        assert_eq!(out.labeling.get("w"), f.get("w"));
        assert_eq!(out.labeling.len(), 2);
    }

    #[test]
    fn line_and_total_graph_labels() {
        let (g, f) = p3();
        let line = transport_labeling(&Transform::Line, &g, &f).unwrap();
        assert_eq!(line.labeling.len(), 2);
        let uv = Edge::new("u", "v").unwrap();
        assert_eq!(
            line.labeling.get(&uv.vertex_id()),
            Some(&induced_edge_label(&f, &uv).unwrap())
        );
        let total = transport_labeling(&Transform::Total, &g, &f).unwrap();
        assert_eq!(total.labeling.len(), 5);
        assert_eq!(total.labeling.get("v"), f.get("v"));
    }

    #[test]
    fn derived_collisions_are_reported_not_raised() {
        // total graph: f(w) equals f+(uv)
        let f: SetLabeling = [
            ("u", set(&[0])),
            ("v", set(&[1])),
            ("w", set(&[2])),
            ("x", set(&[1, 2])),
        ]
        .into_iter()
        .map(|(v, s)| (v.to_string(), s))
        .collect();
        let g = Graph::from_edges([("u", "v"), ("u", "w"), ("x", "u")]).unwrap();
        let out = transport_labeling(&Transform::Total, &g, &f).unwrap();
        assert!(matches!(out.verdict, Verdict::Violation(_)));
    }
}
