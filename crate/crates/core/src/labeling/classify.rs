use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use super::{edge_kind, induced_edge_label, verify_iasi, EdgeKind, EdgeRelation, SetLabeling};
use crate::error::Result;
use crate::exec::Execution;
use crate::graphcore::{Edge, Graph};
use crate::setcore::{recognize_ap, ApDescriptor, IntegerSet};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct EdgeReport {
    pub edge: Edge,
    /// Absent unless both endpoint labels are AP-sets with at least three elements.
    pub kind: Option<EdgeKind>,
    pub set_indexing_number: usize,
    pub strong: bool,
    pub label_is_ap: bool,
}

/// Every IASI property verdict for one labeled graph.
///
/// Properties quantified over edges are conjunctions over `per_edge`. The
/// semi-arithmetic and biarithmetic verdicts additionally require at least
/// one edge.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClassificationReport {
    pub vertex_arithmetic: bool,
    pub edge_arithmetic: bool,
    pub arithmetic: bool,
    pub isoarithmetic: bool,
    pub biarithmetic: bool,
    pub semi_arithmetic_first_kind: bool,
    pub semi_arithmetic_second_kind: bool,
    pub strong: bool,
    pub edge_uniform_k: Option<usize>,
    pub vertex_uniform_l: Option<usize>,
    pub per_edge: Vec<EdgeReport>,
}

/// AP descriptor of a label that qualifies as an arithmetic label (length >= 3).
fn arithmetic_label(s: &IntegerSet) -> Option<ApDescriptor> {
    recognize_ap(s).filter(|d| d.length >= 3)
}

fn common_value(mut values: impl Iterator<Item = usize>) -> Option<usize> {
    let first = values.next()?;
    values.all(|v| v == first).then_some(first)
}

pub fn classify(g: &Graph, f: &SetLabeling) -> Result<ClassificationReport> {
    classify_with(g, f, Execution::default())
}

/// [`classify`] with an explicit execution strategy for the per-edge pass.
pub fn classify_with(g: &Graph, f: &SetLabeling, exec: Execution) -> Result<ClassificationReport> {
    verify_iasi(g, f)?.into_result()?;

    let vertex_ap: BTreeMap<&str, Option<ApDescriptor>> = g
        .vertices()
        .map(|v| Ok((v, arithmetic_label(f.label(v)?))))
        .collect::<Result<_>>()?;

    let edges: Vec<&Edge> = g.edges().collect();
    let per_edge = exec
        .map(&edges, |e| -> Result<(EdgeReport, Option<u64>)> {
            let (a, b) = (f.label(e.u())?, f.label(e.v())?);
            let label = induced_edge_label(f, e)?;
            let label_ap = arithmetic_label(&label);
            let kind = match (vertex_ap[e.u()], vertex_ap[e.v()]) {
                (Some(p), Some(q)) => Some(edge_kind(&p, &q)?),
                _ => None,
            };
            let report = EdgeReport {
                edge: (*e).clone(),
                kind,
                set_indexing_number: label.len(),
                strong: label.len() == a.len() * b.len(),
                label_is_ap: label_ap.is_some(),
            };
            Ok((report, label_ap.map(|d| d.difference)))
        })
        .into_iter()
        .collect::<Result<Vec<_>>>()?;
    let (per_edge, edge_diffs): (Vec<EdgeReport>, Vec<Option<u64>>) = per_edge.into_iter().unzip();

    let has_edges = !per_edge.is_empty();
    let all_edges = |pred: &dyn Fn(&EdgeReport) -> bool| per_edge.iter().all(pred);
    let relation_everywhere = |pred: &dyn Fn(EdgeRelation) -> bool| {
        has_edges && all_edges(&|r| r.kind.is_some_and(|k| pred(k.relation)))
    };

    let vertex_arithmetic = vertex_ap.values().all(Option::is_some);
    let edge_arithmetic = all_edges(&|r| r.label_is_ap);
    let arithmetic = vertex_arithmetic && edge_arithmetic;

    let mut differences = vertex_ap
        .values()
        .flatten()
        .map(|d| d.difference)
        .chain(edge_diffs.into_iter().flatten());
    let isoarithmetic = arithmetic && {
        let first = differences.next();
        differences.all(|d| Some(d) == first)
    };

    let biarithmetic =
        arithmetic && relation_everywhere(&|r| r == EdgeRelation::ArithmeticMultiple);
    let no_ap_edges = !per_edge.iter().any(|r| r.label_is_ap);
    let semi_arithmetic_first_kind =
        vertex_arithmetic && no_ap_edges && relation_everywhere(&|r| r == EdgeRelation::FirstKind);
    let semi_arithmetic_second_kind =
        vertex_arithmetic && no_ap_edges && relation_everywhere(&EdgeRelation::is_second_kind);

    Ok(ClassificationReport {
        vertex_arithmetic,
        edge_arithmetic,
        arithmetic,
        isoarithmetic,
        biarithmetic,
        semi_arithmetic_first_kind,
        semi_arithmetic_second_kind,
        strong: all_edges(&|r| r.strong),
        edge_uniform_k: common_value(per_edge.iter().map(|r| r.set_indexing_number)),
        vertex_uniform_l: common_value(g.vertices().map(|v| f.get(v).map_or(0, IntegerSet::len))),
        per_edge,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graphcore::fixtures::{path, triangle};

    fn labeling(pairs: &[(&str, &[u64])]) -> SetLabeling {
        pairs
            .iter()
            .map(|(v, xs)| (v.to_string(), IntegerSet::new(xs.iter().copied()).unwrap()))
            .collect()
    }

    #[test]
    fn arithmetic_but_not_strong() {
        let f = labeling(&[("u", &[1, 2, 3]), ("v", &[1, 3, 5])]);
        let r = classify(&path(&["u", "v"]), &f).unwrap();
        assert!(r.vertex_arithmetic && r.edge_arithmetic && r.arithmetic);
        assert!(r.biarithmetic);
        assert!(!r.isoarithmetic);
        assert!(!r.strong);
        assert!(!r.semi_arithmetic_first_kind && !r.semi_arithmetic_second_kind);
        assert_eq!(r.per_edge[0].set_indexing_number, 7);
        assert_eq!(r.edge_uniform_k, Some(7));
        assert_eq!(r.vertex_uniform_l, Some(3));
    }

    #[test]
    fn first_kind_edge() {
        let f = labeling(&[("u", &[0, 1, 2]), ("v", &[0, 4, 8])]);
        let r = classify(&path(&["u", "v"]), &f).unwrap();
        assert!(r.semi_arithmetic_first_kind);
        assert!(r.strong);
        assert!(r.vertex_arithmetic && !r.edge_arithmetic && !r.arithmetic);
        let e = &r.per_edge[0];
        assert_eq!(e.kind.unwrap().relation, EdgeRelation::FirstKind);
        assert_eq!(e.kind.unwrap().k, Some(4));
        assert_eq!(e.set_indexing_number, 9);
        assert!(!e.label_is_ap);
    }

    #[test]
    fn second_kind_coprime_edge() {
        let f = labeling(&[("u", &[0, 2, 4]), ("v", &[0, 3, 6])]);
        let r = classify(&path(&["u", "v"]), &f).unwrap();
        assert_eq!(
            r.per_edge[0].kind.unwrap().relation,
            EdgeRelation::SecondKindCoprime
        );
        assert_eq!(r.per_edge[0].set_indexing_number, 9);
        assert!(r.strong && r.semi_arithmetic_second_kind && !r.semi_arithmetic_first_kind);
    }

    #[test]
    fn isoarithmetic_path() {
        let f = labeling(&[("a", &[0, 1, 2]), ("b", &[3, 4, 5, 6]), ("c", &[1, 2, 3])]);
        let r = classify(&path(&["a", "b", "c"]), &f).unwrap();
        assert!(r.isoarithmetic && r.arithmetic && !r.biarithmetic);
        assert_eq!(r.edge_uniform_k, Some(6));
        assert_eq!(r.vertex_uniform_l, None);
    }

    #[test]
    fn short_labels_are_not_arithmetic() {
        let f = labeling(&[("u", &[0, 1]), ("v", &[0, 4, 8])]);
        let r = classify(&path(&["u", "v"]), &f).unwrap();
        assert!(!r.vertex_arithmetic);
        assert_eq!(r.per_edge[0].kind, None);
    }

    #[test]
    fn mixed_graph_reports_per_edge() {
        // a-b first kind, a-c arithmetic multiple, b-c second kind
        let f = labeling(&[("a", &[0, 2, 4]), ("b", &[0, 8, 16]), ("c", &[1, 7, 13])]);
        let r = classify(&triangle(), &f).unwrap();
        let relations: Vec<_> = r
            .per_edge
            .iter()
            .map(|e| e.kind.unwrap().relation)
            .collect();
        assert_eq!(
            relations,
            vec![
                EdgeRelation::FirstKind,
                EdgeRelation::ArithmeticMultiple,
                EdgeRelation::SecondKindCommonFactor
            ]
        );
        assert!(r.vertex_arithmetic);
        assert!(!r.semi_arithmetic_first_kind && !r.semi_arithmetic_second_kind);
    }

    #[test]
    fn rejects_non_iasi() {
        let f = labeling(&[("u", &[1, 2, 3]), ("v", &[1, 2, 3])]);
        assert!(matches!(
            classify(&path(&["u", "v"]), &f),
            Err(crate::Error::NotIasi(_))
        ));
    }

    #[test]
    fn execution_strategies_agree() {
        let f = labeling(&[("a", &[0, 1, 2]), ("b", &[0, 4, 8]), ("c", &[1, 7, 13])]);
        let g = triangle();
        assert_eq!(
            classify_with(&g, &f, Execution::Sequential).unwrap(),
            classify_with(&g, &f, Execution::Parallel).unwrap()
        );
    }

    #[test]
    fn report_json_uses_the_documented_field_names() {
        let f = labeling(&[("u", &[0, 1, 2]), ("v", &[0, 4, 8])]);
        let r = classify(&path(&["u", "v"]), &f).unwrap();
        let value = serde_json::to_value(&r).unwrap();
        for key in [
            "vertex_arithmetic",
            "edge_arithmetic",
            "arithmetic",
            "isoarithmetic",
            "biarithmetic",
            "semi_arithmetic_first_kind",
            "semi_arithmetic_second_kind",
            "strong",
            "edge_uniform_k",
            "vertex_uniform_l",
            "per_edge",
        ] {
            assert!(value.get(key).is_some(), "missing {key}");
        }
        assert_eq!(value["per_edge"][0]["kind"]["relation"], "first-kind");
        let back: ClassificationReport = serde_json::from_value(value).unwrap();
        assert_eq!(back, r);
    }
}
