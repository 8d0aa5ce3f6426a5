//! The fixed family of small graphs used by the graph-level audits.

use crate::graphcore::Graph;

fn build(edges: Vec<(String, String)>) -> Graph {
    Graph::from_edges(edges).expect("family graphs are simple")
}

pub fn star(leaves: usize) -> Graph {
    build(
        (0..leaves)
            .map(|i| ("c".to_string(), format!("l{i}")))
            .collect(),
    )
}

pub fn path(vertices: usize) -> Graph {
    build(
        (1..vertices)
            .map(|i| (format!("p{}", i - 1), format!("p{i}")))
            .collect(),
    )
}

pub fn cycle(n: usize) -> Graph {
    build(
        (0..n)
            .map(|i| (format!("v{i}"), format!("v{}", (i + 1) % n)))
            .collect(),
    )
}

/// `K_{a,b}` with sides `a0..` and `b0..`.
pub fn complete_bipartite(a: usize, b: usize) -> Graph {
    build(
        (0..a)
            .flat_map(|i| (0..b).map(move |j| (format!("a{i}"), format!("b{j}"))))
            .collect(),
    )
}

pub fn complete(n: usize) -> Graph {
    build(
        (0..n)
            .flat_map(|i| (i + 1..n).map(move |j| (format!("k{i}"), format!("k{j}"))))
            .collect(),
    )
}

/// Stars, paths, even cycles and complete bipartite graphs on at most six
/// vertices, plus the odd cycles C3, C5 and K4 as non-bipartite controls.
pub fn graph_family() -> Vec<(String, Graph)> {
    let mut out = Vec::new();
    for leaves in 2..=5 {
        out.push((format!("K1,{leaves}"), star(leaves)));
    }
    for n in 2..=6 {
        out.push((format!("P{n}"), path(n)));
    }
    for n in [4, 6] {
        out.push((format!("C{n}"), cycle(n)));
    }
    for (a, b) in [(2, 3), (2, 4), (3, 3)] {
        out.push((format!("K{a},{b}"), complete_bipartite(a, b)));
    }
    out.push(("C3".into(), cycle(3)));
    out.push(("C5".into(), cycle(5)));
    out.push(("K4".into(), complete(4)));
    out
}
