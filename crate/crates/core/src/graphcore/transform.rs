use std::collections::{BTreeMap, BTreeSet};

use super::{Edge, Element, ElementCorrespondence, Graph};
use crate::error::{Error, Result};

fn ensure_fresh(g: &Graph, id: &str) -> Result<()> {
    if g.vertices.contains(id) {
        return Err(Error::invalid(format!(
            "derived vertex id `{id}` collides with an existing vertex"
        )));
    }
    Ok(())
}

fn require_edge(g: &Graph, e: &Edge) -> Result<()> {
    if !g.edges.contains(e) {
        return Err(Error::NotFound(format!("edge {e}")));
    }
    Ok(())
}

/// Edge vertices of `g` keyed by their derived id. Fails if two edges map to one id.
fn edge_vertices(g: &Graph) -> Result<BTreeMap<&Edge, String>> {
    let mut seen = BTreeSet::new();
    let mut ids = BTreeMap::new();
    for e in &g.edges {
        let id = e.vertex_id();
        if !seen.insert(id.clone()) {
            return Err(Error::invalid(format!(
                "derived vertex id `{id}` is ambiguous"
            )));
        }
        ids.insert(e, id);
    }
    Ok(ids)
}

/// Edges between edge-vertices that share an endpoint.
fn edge_adjacencies(g: &Graph, ids: &BTreeMap<&Edge, String>) -> Vec<Edge> {
    let mut incident: BTreeMap<&str, Vec<&Edge>> = BTreeMap::new();
    for e in &g.edges {
        incident.entry(e.u()).or_default().push(e);
        incident.entry(e.v()).or_default().push(e);
    }
    let mut out = Vec::new();
    for edges in incident.values() {
        for (i, a) in edges.iter().enumerate() {
            for b in &edges[i + 1..] {
                out.push(Edge::new(ids[a].clone(), ids[b].clone()).expect("distinct ids"));
            }
        }
    }
    out
}

pub fn line_graph(g: &Graph) -> Result<(Graph, ElementCorrespondence)> {
    if g.edges.is_empty() {
        return Err(Error::invalid("line graph of an edgeless graph"));
    }
    let ids = edge_vertices(g)?;
    let edges: BTreeSet<Edge> = edge_adjacencies(g, &ids).into_iter().collect();
    let mut corr = ElementCorrespondence::default();
    for (e, id) in &ids {
        corr.vertex_origin
            .insert(id.clone(), Element::Edge((*e).clone()));
    }
    let vertices = ids.into_values().collect();
    Ok((Graph { vertices, edges }, corr))
}

pub fn total_graph(g: &Graph) -> Result<(Graph, ElementCorrespondence)> {
    let ids = edge_vertices(g)?;
    for id in ids.values() {
        ensure_fresh(g, id)?;
    }
    let mut corr = ElementCorrespondence::default();
    let mut vertices = g.vertices.clone();
    for v in &g.vertices {
        corr.vertex_origin
            .insert(v.clone(), Element::Vertex(v.clone()));
    }
    let mut edges = g.edges.clone();
    edges.extend(edge_adjacencies(g, &ids));
    for (e, id) in &ids {
        vertices.insert(id.clone());
        corr.vertex_origin
            .insert(id.clone(), Element::Edge((*e).clone()));
        edges.insert(Edge::new(e.u(), id.clone())?);
        edges.insert(Edge::new(e.v(), id.clone())?);
    }
    Ok((Graph { vertices, edges }, corr))
}

/// Replaces `e = uv` with `uw`, `wv` for a fresh vertex `w = "s:k"`,
/// `k` being the smallest index not already in use.
pub fn subdivide(g: &Graph, e: &Edge) -> Result<(Graph, String)> {
    require_edge(g, e)?;
    let w = (0..)
        .map(|k| format!("s:{k}"))
        .find(|id| !g.vertices.contains(id))
        .expect("unbounded index range");
    let mut out = g.clone();
    out.edges.remove(e);
    out.vertices.insert(w.clone());
    out.edges.insert(Edge::new(e.u(), w.clone())?);
    out.edges.insert(Edge::new(w.clone(), e.v())?);
    Ok((out, w))
}

/// Merges the endpoints of `e = uv` into `w = "c:u+v"`, keeping the graph simple.
/// Contracting a `K2` component leaves `w` isolated.
pub fn contract(g: &Graph, e: &Edge) -> Result<(Graph, String)> {
    require_edge(g, e)?;
    let w = format!("c:{}+{}", e.u(), e.v());
    ensure_fresh(g, &w)?;
    let merge = |x: &str| {
        if e.contains(x) {
            w.clone()
        } else {
            x.to_string()
        }
    };
    let mut vertices = g.vertices.clone();
    vertices.remove(e.u());
    vertices.remove(e.v());
    vertices.insert(w.clone());
    let edges = g
        .edges
        .iter()
        .filter(|f| *f != e)
        .filter_map(|f| Edge::new(merge(f.u()), merge(f.v())).ok())
        .collect();
    Ok((Graph { vertices, edges }, w))
}

/// Deletes the degree-2 vertex `v` and joins its two neighbors, which must be non-adjacent.
pub fn topological_reduction(g: &Graph, v: &str) -> Result<Graph> {
    if !g.vertices.contains(v) {
        return Err(Error::NotFound(format!("vertex `{v}`")));
    }
    let nbrs = g.neighbors(v);
    let [a, b] = nbrs.as_slice() else {
        return Err(Error::precondition(format!(
            "vertex `{v}` has degree {}, expected 2",
            nbrs.len()
        )));
    };
    if g.has_edge(a, b) {
        return Err(Error::precondition(format!(
            "neighbors `{a}` and `{b}` of `{v}` are already adjacent"
        )));
    }
    let joined = Edge::new(*a, *b)?;
    let mut out = g.clone();
    out.vertices.remove(v);
    out.edges.retain(|e| !e.contains(v));
    out.edges.insert(joined);
    Ok(out)
}

/// The subgraph with vertex set `vs` and edge set `es`.
pub fn subgraph(g: &Graph, vs: &BTreeSet<String>, es: &BTreeSet<Edge>) -> Result<Graph> {
    if let Some(v) = vs.iter().find(|v| !g.vertices.contains(*v)) {
        return Err(Error::invalid(format!("vertex `{v}` is not in the graph")));
    }
    for e in es {
        if !g.edges.contains(e) {
            return Err(Error::invalid(format!("edge {e} is not in the graph")));
        }
        if !vs.contains(e.u()) || !vs.contains(e.v()) {
            return Err(Error::invalid(format!(
                "edge {e} has an endpoint outside the selected vertices"
            )));
        }
    }
    Ok(Graph {
        vertices: vs.clone(),
        edges: es.clone(),
    })
}
