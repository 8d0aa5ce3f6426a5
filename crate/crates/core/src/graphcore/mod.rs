//! Simple finite undirected graphs with string vertex ids.
//!
//! Vertices and edges are kept in sorted sets, so iteration order (and every
//! derived output) is deterministic. A [`Graph`] may hold isolated vertices
//! as an intermediate state; [`Graph::validate`] enforces the
//! no-isolated-vertices rule for graphs supplied by callers.

mod edgelist;
mod transform;

use std::collections::{BTreeMap, BTreeSet, VecDeque};
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub use edgelist::{parse_edge_list, write_edge_list};
pub use transform::{
    contract, line_graph, subdivide, subgraph, topological_reduction, total_graph,
};

/// An unordered pair of distinct vertices, stored with `u < v`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(try_from = "(String, String)", into = "(String, String)")]
pub struct Edge {
    u: String,
    v: String,
}

impl Edge {
    pub fn new(a: impl Into<String>, b: impl Into<String>) -> Result<Self> {
        let (a, b) = (a.into(), b.into());
        if a == b {
            return Err(Error::invalid(format!("loop at vertex `{a}`")));
        }
        Ok(if a < b {
            Edge { u: a, v: b }
        } else {
            Edge { u: b, v: a }
        })
    }

    pub fn u(&self) -> &str {
        &self.u
    }

    pub fn v(&self) -> &str {
        &self.v
    }

    pub fn contains(&self, x: &str) -> bool {
        self.u == x || self.v == x
    }

    /// The endpoint opposite `x`, if `x` is an endpoint.
    pub fn other(&self, x: &str) -> Option<&str> {
        if self.u == x {
            Some(&self.v)
        } else if self.v == x {
            Some(&self.u)
        } else {
            None
        }
    }

    /// Deterministic id of the vertex standing for this edge in line and total graphs.
    pub fn vertex_id(&self) -> String {
        format!("e:{}-{}", self.u, self.v)
    }
}

impl TryFrom<(String, String)> for Edge {
    type Error = Error;

    fn try_from((a, b): (String, String)) -> Result<Self> {
        Edge::new(a, b)
    }
}

impl From<Edge> for (String, String) {
    fn from(e: Edge) -> Self {
        (e.u, e.v)
    }
}

impl fmt::Display for Edge {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}-{}", self.u, self.v)
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "RawGraph")]
pub struct Graph {
    vertices: BTreeSet<String>,
    edges: BTreeSet<Edge>,
}

#[derive(Deserialize)]
struct RawGraph {
    vertices: BTreeSet<String>,
    edges: Vec<Edge>,
}

impl TryFrom<RawGraph> for Graph {
    type Error = Error;

    fn try_from(raw: RawGraph) -> Result<Self> {
        Graph::with_vertices(raw.vertices, raw.edges)
    }
}

impl Graph {
    /// Builds a graph from its edges; the vertex set is the set of endpoints.
    /// Loops and repeated edges are rejected.
    pub fn from_edges<I, A, B>(edges: I) -> Result<Self>
    where
        I: IntoIterator<Item = (A, B)>,
        A: Into<String>,
        B: Into<String>,
    {
        let mut g = Graph::default();
        for (a, b) in edges {
            let e = Edge::new(a, b)?;
            g.vertices.insert(e.u.clone());
            g.vertices.insert(e.v.clone());
            if !g.edges.insert(e.clone()) {
                return Err(Error::invalid(format!("parallel edge {e}")));
            }
        }
        Ok(g)
    }

    /// Builds a graph with an explicit vertex set; isolated vertices are allowed.
    pub fn with_vertices<V, S>(vertices: V, edges: impl IntoIterator<Item = Edge>) -> Result<Self>
    where
        V: IntoIterator<Item = S>,
        S: Into<String>,
    {
        let vertices: BTreeSet<String> = vertices.into_iter().map(Into::into).collect();
        let mut set = BTreeSet::new();
        for e in edges {
            for x in [&e.u, &e.v] {
                if !vertices.contains(x) {
                    return Err(Error::invalid(format!(
                        "edge {e} has endpoint `{x}` outside the vertex set"
                    )));
                }
            }
            if !set.insert(e.clone()) {
                return Err(Error::invalid(format!("parallel edge {e}")));
            }
        }
        Ok(Graph {
            vertices,
            edges: set,
        })
    }

    /// Rejects graphs with isolated vertices.
    pub fn validate(&self) -> Result<()> {
        match self.isolated_vertices().first() {
            Some(v) => Err(Error::invalid(format!("vertex `{v}` is isolated"))),
            None => Ok(()),
        }
    }

    pub fn isolated_vertices(&self) -> Vec<&str> {
        let touched: BTreeSet<&str> = self
            .edges
            .iter()
            .flat_map(|e| [e.u.as_str(), e.v.as_str()])
            .collect();
        self.vertices
            .iter()
            .map(String::as_str)
            .filter(|v| !touched.contains(v))
            .collect()
    }

    pub fn vertices(&self) -> impl Iterator<Item = &str> + '_ {
        self.vertices.iter().map(String::as_str)
    }

    pub fn edges(&self) -> impl Iterator<Item = &Edge> + '_ {
        self.edges.iter()
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn contains_vertex(&self, v: &str) -> bool {
        self.vertices.contains(v)
    }

    pub fn contains_edge(&self, e: &Edge) -> bool {
        self.edges.contains(e)
    }

    pub fn has_edge(&self, a: &str, b: &str) -> bool {
        Edge::new(a, b).is_ok_and(|e| self.edges.contains(&e))
    }

    pub fn neighbors(&self, v: &str) -> Vec<&str> {
        self.edges.iter().filter_map(|e| e.other(v)).collect()
    }

    pub fn degree(&self, v: &str) -> usize {
        self.edges.iter().filter(|e| e.contains(v)).count()
    }

    pub fn max_degree(&self) -> usize {
        self.adjacency()
            .values()
            .map(BTreeSet::len)
            .max()
            .unwrap_or(0)
    }

    /// Sorted neighbor sets for every vertex (isolated vertices map to empty sets).
    pub fn adjacency(&self) -> BTreeMap<&str, BTreeSet<&str>> {
        let mut adj: BTreeMap<&str, BTreeSet<&str>> = self
            .vertices
            .iter()
            .map(|v| (v.as_str(), BTreeSet::new()))
            .collect();
        for e in &self.edges {
            adj.entry(&e.u).or_default().insert(&e.v);
            adj.entry(&e.v).or_default().insert(&e.u);
        }
        adj
    }

    /// Renames vertices; ids missing from `map` are kept. The map must not merge vertices.
    pub fn relabel(&self, map: &BTreeMap<String, String>) -> Result<Graph> {
        let rename = |v: &String| map.get(v).cloned().unwrap_or_else(|| v.clone());
        let vertices: BTreeSet<String> = self.vertices.iter().map(rename).collect();
        if vertices.len() != self.vertices.len() {
            return Err(Error::invalid("relabeling merges vertices"));
        }
        let edges = self
            .edges
            .iter()
            .map(|e| Edge::new(rename(&e.u), rename(&e.v)))
            .collect::<Result<Vec<_>>>()?;
        Graph::with_vertices(vertices, edges)
    }

    /// Vertex-induced subgraph on `keep` (isolated vertices allowed).
    pub fn induced(&self, keep: &BTreeSet<String>) -> Graph {
        Graph {
            vertices: self.vertices.intersection(keep).cloned().collect(),
            edges: self
                .edges
                .iter()
                .filter(|e| keep.contains(&e.u) && keep.contains(&e.v))
                .cloned()
                .collect(),
        }
    }
}

/// A vertex or an edge of a source graph.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Element {
    Vertex(String),
    Edge(Edge),
}

/// Records, for each vertex of a derived graph, the source element it came from.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct ElementCorrespondence {
    pub vertex_origin: BTreeMap<String, Element>,
}

impl ElementCorrespondence {
    pub fn origin(&self, derived: &str) -> Option<&Element> {
        self.vertex_origin.get(derived)
    }
}

/// 2-colors `g` by breadth-first layering, visiting components in vertex order.
/// The first vertex of each component goes to the first side.
pub fn is_bipartite(g: &Graph) -> Option<(BTreeSet<String>, BTreeSet<String>)> {
    let adj = g.adjacency();
    let mut side: BTreeMap<&str, bool> = BTreeMap::new();
    let mut queue = VecDeque::new();
    for &start in adj.keys() {
        if side.contains_key(start) {
            continue;
        }
        side.insert(start, false);
        queue.push_back(start);
        while let Some(v) = queue.pop_front() {
            let s = side[v];
            for &w in &adj[v] {
                match side.get(w) {
                    Some(&t) if t == s => return None,
                    Some(_) => {}
                    None => {
                        side.insert(w, !s);
                        queue.push_back(w);
                    }
                }
            }
        }
    }
    let (mut x, mut y) = (BTreeSet::new(), BTreeSet::new());
    for (v, s) in side {
        if s { &mut y } else { &mut x }.insert(v.to_string());
    }
    Some((x, y))
}

#[cfg(test)]
pub(crate) mod fixtures {
    use super::Graph;

    pub fn path(names: &[&str]) -> Graph {
        Graph::from_edges(names.windows(2).map(|w| (w[0], w[1]))).unwrap()
    }

    pub fn cycle(n: usize) -> Graph {
        Graph::from_edges((0..n).map(|i| (format!("v{i}"), format!("v{}", (i + 1) % n)))).unwrap()
    }

    pub fn triangle() -> Graph {
        Graph::from_edges([("a", "b"), ("b", "c"), ("a", "c")]).unwrap()
    }
}

#[cfg(test)]
mod tests {
    use super::fixtures::*;
    use super::*;

    fn names(xs: &[&str]) -> BTreeSet<String> {
        xs.iter().map(|s| s.to_string()).collect()
    }

    #[test]
    fn edges_are_normalized_and_loops_rejected() {
        let e = Edge::new("v", "u").unwrap();
        assert_eq!((e.u(), e.v()), ("u", "v"));
        assert_eq!(e.other("u"), Some("v"));
        assert_eq!(e.vertex_id(), "e:u-v");
        assert!(Edge::new("u", "u").is_err());
    }

    #[test]
    fn construction_rejects_parallel_edges() {
        assert!(Graph::from_edges([("a", "b"), ("b", "a")]).is_err());
        assert!(Graph::with_vertices(["a"], [Edge::new("a", "b").unwrap()]).is_err());
    }

    #[test]
    fn validation_flags_isolated_vertices() {
        let g = Graph::with_vertices(["a", "b", "c"], [Edge::new("a", "b").unwrap()]).unwrap();
        assert_eq!(g.isolated_vertices(), vec!["c"]);
        assert!(g.validate().is_err());
        assert!(path(&["a", "b"]).validate().is_ok());
    }

    #[test]
    fn bipartition_examples() {
        assert_eq!(
            is_bipartite(&cycle(4)),
            Some((names(&["v0", "v2"]), names(&["v1", "v3"])))
        );
        assert_eq!(is_bipartite(&triangle()), None);
        assert_eq!(
            is_bipartite(&path(&["u", "v"])),
            Some((names(&["u"]), names(&["v"])))
        );
        assert_eq!(is_bipartite(&cycle(5)), None);
    }

    #[test]
    fn bipartition_covers_every_component() {
        let g = Graph::from_edges([("a", "b"), ("c", "d")]).unwrap();
        let (x, y) = is_bipartite(&g).unwrap();
        assert_eq!(x, names(&["a", "c"]));
        assert_eq!(y, names(&["b", "d"]));
    }

    #[test]
    fn relabel_renames_and_refuses_merges() {
        let g = path(&["a", "b", "c"]);
        let map: BTreeMap<String, String> = [("a".to_string(), "z".to_string())].into();
        let h = g.relabel(&map).unwrap();
        assert!(h.has_edge("z", "b"));
        let merge: BTreeMap<String, String> = [("a".to_string(), "b".to_string())].into();
        assert!(g.relabel(&merge).is_err());
    }

    #[test]
    fn json_round_trip() {
        let g = Graph::with_vertices(["a", "b", "c"], [Edge::new("b", "a").unwrap()]).unwrap();
        let text = serde_json::to_string(&g).unwrap();
        assert_eq!(text, r#"{"vertices":["a","b","c"],"edges":[["a","b"]]}"#);
        assert_eq!(serde_json::from_str::<Graph>(&text).unwrap(), g);
        assert!(
            serde_json::from_str::<Graph>(r#"{"vertices":["a"],"edges":[["a","b"]]}"#).is_err()
        );
    }
}
