//! Set labelings of graphs and the IASI property checks built on them.

mod classify;
mod transport;

use std::collections::{BTreeMap, HashMap};
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graphcore::{Edge, Element, Graph};
use crate::setcore::{sumset, ApDescriptor, IntegerSet};

pub use classify::{classify, classify_with, ClassificationReport, EdgeReport};
pub use transport::{transport_labeling, Transform, Transported};

/// Vertex id -> label set. Serializes as a JSON object of integer arrays.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct SetLabeling {
    assignments: BTreeMap<String, IntegerSet>,
}

impl SetLabeling {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn insert(&mut self, v: impl Into<String>, label: IntegerSet) -> Option<IntegerSet> {
        self.assignments.insert(v.into(), label)
    }

    pub fn get(&self, v: &str) -> Option<&IntegerSet> {
        self.assignments.get(v)
    }

    pub fn label(&self, v: &str) -> Result<&IntegerSet> {
        self.get(v)
            .ok_or_else(|| Error::MissingLabel(v.to_string()))
    }

    pub fn remove(&mut self, v: &str) -> Option<IntegerSet> {
        self.assignments.remove(v)
    }

    pub fn iter(&self) -> impl Iterator<Item = (&str, &IntegerSet)> + '_ {
        self.assignments.iter().map(|(v, s)| (v.as_str(), s))
    }

    pub fn len(&self) -> usize {
        self.assignments.len()
    }

    pub fn is_empty(&self) -> bool {
        self.assignments.is_empty()
    }

    /// Keeps only the labels of vertices present in `g`.
    pub fn restricted_to(&self, g: &Graph) -> SetLabeling {
        self.iter()
            .filter(|(v, _)| g.contains_vertex(v))
            .map(|(v, s)| (v.to_string(), s.clone()))
            .collect()
    }
}

impl FromIterator<(String, IntegerSet)> for SetLabeling {
    fn from_iter<I: IntoIterator<Item = (String, IntegerSet)>>(iter: I) -> Self {
        SetLabeling {
            assignments: iter.into_iter().collect(),
        }
    }
}

/// The first injectivity failure found, in vertex / edge order.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "violation", rename_all = "kebab-case")]
pub enum Violation {
    VertexCollision {
        u: String,
        v: String,
        label: IntegerSet,
    },
    EdgeCollision {
        first: Edge,
        second: Edge,
        label: IntegerSet,
    },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::VertexCollision { u, v, label } => {
                write!(f, "vertices `{u}` and `{v}` share the label {label}")
            }
            Violation::EdgeCollision {
                first,
                second,
                label,
            } => write!(
                f,
                "edges {first} and {second} share the induced label {label}"
            ),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "status", rename_all = "kebab-case")]
pub enum Verdict {
    Ok,
    Violation(Violation),
}

impl Verdict {
    pub fn is_ok(&self) -> bool {
        matches!(self, Verdict::Ok)
    }

    pub fn into_result(self) -> Result<()> {
        match self {
            Verdict::Ok => Ok(()),
            Verdict::Violation(v) => Err(Error::NotIasi(v)),
        }
    }
}

/// `f+(uv) = f(u) + f(v)`.
pub fn induced_edge_label(f: &SetLabeling, e: &Edge) -> Result<IntegerSet> {
    sumset(f.label(e.u())?, f.label(e.v())?)
}

/// Checks that `f` labels exactly the vertices of `g` and that both `f` and
/// the induced edge labeling are injective.
pub fn verify_iasi(g: &Graph, f: &SetLabeling) -> Result<Verdict> {
    if let Some(v) = g.vertices().find(|v| f.get(v).is_none()) {
        return Err(Error::MissingLabel(v.to_string()));
    }
    if let Some((v, _)) = f.iter().find(|(v, _)| !g.contains_vertex(v)) {
        return Err(Error::invalid(format!(
            "label given for unknown vertex `{v}`"
        )));
    }

    let mut owners: HashMap<&IntegerSet, &str> = HashMap::new();
    for v in g.vertices() {
        let label = f.label(v)?;
        if let Some(u) = owners.insert(label, v) {
            return Ok(Verdict::Violation(Violation::VertexCollision {
                u: u.to_string(),
                v: v.to_string(),
                label: label.clone(),
            }));
        }
    }

    let mut edge_owner: HashMap<IntegerSet, &Edge> = HashMap::new();
    for e in g.edges() {
        let label = induced_edge_label(f, e)?;
        if let Some(prev) = edge_owner.get(&label) {
            return Ok(Verdict::Violation(Violation::EdgeCollision {
                first: (*prev).clone(),
                second: e.clone(),
                label,
            }));
        }
        edge_owner.insert(label, e);
    }
    Ok(Verdict::Ok)
}

/// Cardinality of the label of a vertex, or of the induced label of an edge.
pub fn set_indexing_number(f: &SetLabeling, element: &Element) -> Result<usize> {
    match element {
        Element::Vertex(v) => f.label(v).map(IntegerSet::len),
        Element::Edge(e) => induced_edge_label(f, e).map(|s| s.len()),
    }
}

/// `|A + B| = |A| * |B|`, i.e. every compatibility class is trivial.
pub fn is_strong_edge(a: &IntegerSet, b: &IntegerSet) -> bool {
    a.iter()
        .flat_map(|x| b.iter().map(move |y| x + y))
        .collect::<std::collections::HashSet<u64>>()
        .len()
        == a.len() * b.len()
}

/// How the deterministic indices of two adjacent AP labels relate.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum EdgeRelation {
    /// Same difference (`k = 1`).
    EqualDifference,
    /// `d_large = k * d_small` with `1 < k <= |smaller-difference label|`.
    ArithmeticMultiple,
    /// `d_large = k * d_small` with `k > |smaller-difference label|`.
    FirstKind,
    /// Neither difference divides the other and they are coprime.
    SecondKindCoprime,
    /// Neither difference divides the other but they share a factor.
    SecondKindCommonFactor,
}

impl EdgeRelation {
    pub fn as_str(self) -> &'static str {
        match self {
            EdgeRelation::EqualDifference => "equal-difference",
            EdgeRelation::ArithmeticMultiple => "arithmetic-multiple",
            EdgeRelation::FirstKind => "first-kind",
            EdgeRelation::SecondKindCoprime => "second-kind-coprime",
            EdgeRelation::SecondKindCommonFactor => "second-kind-common-factor",
        }
    }

    pub fn is_second_kind(self) -> bool {
        matches!(
            self,
            EdgeRelation::SecondKindCoprime | EdgeRelation::SecondKindCommonFactor
        )
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct EdgeKind {
    pub relation: EdgeRelation,
    /// Multiplier `d_large / d_small` when one difference divides the other.
    pub k: Option<u64>,
    pub d_small: u64,
    pub d_large: u64,
}

pub(crate) fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

/// Classifies the difference relation of two AP labels of length at least 3.
/// The smaller-difference label plays the role of `f(v_i)`.
pub fn edge_kind(p: &ApDescriptor, q: &ApDescriptor) -> Result<EdgeKind> {
    if p.length < 3 || q.length < 3 {
        return Err(Error::precondition(
            "arithmetic labels must have at least three elements",
        ));
    }
    let (small, large) = if p.difference <= q.difference {
        (p, q)
    } else {
        (q, p)
    };
    let (d_small, d_large) = (small.difference, large.difference);
    let (relation, k) = if d_large % d_small == 0 {
        let k = d_large / d_small;
        let relation = if k == 1 {
            EdgeRelation::EqualDifference
        } else if k <= small.length {
            EdgeRelation::ArithmeticMultiple
        } else {
            EdgeRelation::FirstKind
        };
        (relation, Some(k))
    } else if gcd(d_small, d_large) == 1 {
        (EdgeRelation::SecondKindCoprime, None)
    } else {
        (EdgeRelation::SecondKindCommonFactor, None)
    };
    Ok(EdgeKind {
        relation,
        k,
        d_small,
        d_large,
    })
}
