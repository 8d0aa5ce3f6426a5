//! Constructive labelers: first-kind semi-arithmetic, isoarithmetic and
//! second-kind (coprime) labelings.
//!
//! Every constructor is deterministic for a given graph and parameters and
//! re-verifies the IASI property of its output before returning it.

use std::collections::{BTreeMap, BTreeSet, HashSet};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graphcore::{is_bipartite, Graph};
use crate::labeling::{gcd, verify_iasi, SetLabeling, Verdict};
use crate::setcore::{sumset, ApDescriptor, IntegerSet};

/// Attempts per vertex when searching for a collision-free start term.
const START_SEARCH_LIMIT: u64 = 1 << 16;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConstructionParams {
    /// Label cardinality on the first side (and everywhere when `m == n`).
    pub m: u64,
    pub n: u64,
    /// Base difference.
    pub d: u64,
    /// Multiplier between adjacent differences; defaults to `m + 1`.
    pub k: Option<u64>,
}

impl ConstructionParams {
    pub fn new(m: u64, n: u64, d: u64, k: Option<u64>) -> Result<Self> {
        let p = ConstructionParams { m, n, d, k };
        p.validate()?;
        Ok(p)
    }

    pub fn validate(&self) -> Result<()> {
        if self.m < 3 || self.n < 3 {
            return Err(Error::invalid("label sizes m and n must be at least 3"));
        }
        if self.d == 0 {
            return Err(Error::invalid("base difference d must be positive"));
        }
        if let Some(k) = self.k {
            if k <= self.m {
                return Err(Error::invalid(format!(
                    "multiplier k = {k} must exceed m = {}",
                    self.m
                )));
            }
        }
        Ok(())
    }

    pub fn multiplier(&self) -> u64 {
        self.k.unwrap_or(self.m + 1)
    }
}

fn overflow() -> Error {
    Error::invalid("construction parameters overflow the supported label range")
}

fn ensure_verified(g: &Graph, f: SetLabeling) -> Result<SetLabeling> {
    match verify_iasi(g, &f)? {
        Verdict::Ok => Ok(f),
        Verdict::Violation(v) => Err(Error::Internal(format!(
            "constructed labeling is not an IASI: {v}"
        ))),
    }
}

/// Greedy proper coloring, visiting vertices by decreasing degree then by id.
pub fn greedy_coloring(g: &Graph) -> BTreeMap<String, usize> {
    let adj = g.adjacency();
    let mut order: Vec<&str> = adj.keys().copied().collect();
    order.sort_by(|a, b| adj[b].len().cmp(&adj[a].len()).then(a.cmp(b)));
    let mut color: BTreeMap<String, usize> = BTreeMap::new();
    for v in order {
        let taken: BTreeSet<usize> = adj[v]
            .iter()
            .filter_map(|w| color.get(*w).copied())
            .collect();
        let c = (0..)
            .find(|c| !taken.contains(c))
            .expect("unbounded color range");
        color.insert(v.to_string(), c);
    }
    color
}

/// First-kind semi-arithmetic labeling that is `m*n`-uniform.
///
/// On a bipartite graph with sides `(X, Y)`, X-vertices get `m`-element
/// AP-sets of difference `d` and Y-vertices `n`-element AP-sets of difference
/// `k*d`. On a non-bipartite graph this requires `m == n`; color class `c` of
/// a greedy coloring then gets difference `d * k^c`.
///
/// Start terms use a mixed radix: with `N` the largest class size and `C`
/// classes, the `i`-th vertex of class `c` starts at `i * N^(C-1-c) * d`, so
/// the induced sums across any two classes are distinct translates.
pub fn construct_first_kind(g: &Graph, p: &ConstructionParams) -> Result<SetLabeling> {
    p.validate()?;
    let k = p.multiplier();
    let classes: Vec<(Vec<String>, u64, u64)> = if let Some((x, y)) = is_bipartite(g) {
        let dy = p.d.checked_mul(k).ok_or_else(overflow)?;
        vec![
            (x.into_iter().collect(), p.m, p.d),
            (y.into_iter().collect(), p.n, dy),
        ]
    } else if p.m == p.n {
        let coloring = greedy_coloring(g);
        let count = coloring.values().max().map_or(0, |c| c + 1);
        let mut classes = Vec::with_capacity(count);
        for c in 0..count {
            let members = coloring
                .iter()
                .filter(|(_, &col)| col == c)
                .map(|(v, _)| v.clone())
                .collect();
            let diff = k
                .checked_pow(c as u32)
                .and_then(|kc| kc.checked_mul(p.d))
                .ok_or_else(overflow)?;
            classes.push((members, p.m, diff));
        }
        classes
    } else {
        return Err(Error::ConstructionImpossible(format!(
            "graph is not bipartite and m = {} differs from n = {}",
            p.m, p.n
        )));
    };

    let radix = classes
        .iter()
        .map(|(vs, _, _)| vs.len() as u64)
        .max()
        .unwrap_or(1)
        .max(1);
    let count = classes.len() as u32;
    let mut f = SetLabeling::new();
    for (c, (members, length, diff)) in classes.iter().enumerate() {
        let weight = radix
            .checked_pow(count - 1 - c as u32)
            .and_then(|w| w.checked_mul(p.d))
            .ok_or_else(overflow)?;
        for (i, v) in members.iter().enumerate() {
            let first = (i as u64).checked_mul(weight).ok_or_else(overflow)?;
            f.insert(
                v.clone(),
                ApDescriptor::new(first, *diff, *length)?.expand(),
            );
        }
    }
    ensure_verified(g, f)
}

/// Assigns AP labels with the given shape, choosing for each vertex (in
/// `order`) the smallest start term that keeps vertex and edge labels distinct.
fn assign_starts(
    g: &Graph,
    order: &[String],
    shape: impl Fn(&str) -> Result<(u64, u64)>,
) -> Result<SetLabeling> {
    let adj = g.adjacency();
    let mut f = SetLabeling::new();
    let mut vertex_labels: HashSet<IntegerSet> = HashSet::new();
    let mut edge_labels: HashSet<IntegerSet> = HashSet::new();
    for v in order {
        let (diff, length) = shape(v)?;
        let placed_nbrs: Vec<&IntegerSet> =
            adj[v.as_str()].iter().filter_map(|w| f.get(w)).collect();
        let mut chosen = None;
        'starts: for start in 0..START_SEARCH_LIMIT {
            let label = ApDescriptor::new(start, diff, length)?.expand();
            if vertex_labels.contains(&label) {
                continue;
            }
            let mut fresh = HashSet::new();
            for nbr in &placed_nbrs {
                let e = sumset(&label, nbr)?;
                if edge_labels.contains(&e) || !fresh.insert(e) {
                    continue 'starts;
                }
            }
            chosen = Some((label, fresh));
            break;
        }
        let Some((label, fresh)) = chosen else {
            return Err(Error::Internal(format!(
                "no collision-free start term for `{v}`"
            )));
        };
        vertex_labels.insert(label.clone());
        edge_labels.extend(fresh);
        f.insert(v.clone(), label);
    }
    ensure_verified(g, f)
}

/// Sizes map assigning `m` to every vertex of `g`.
pub fn uniform_sizes(g: &Graph, m: u64) -> BTreeMap<String, u64> {
    g.vertices().map(|v| (v.to_string(), m)).collect()
}

/// Every vertex gets an AP-set of difference `d` and the requested size.
pub fn construct_isoarithmetic(
    g: &Graph,
    d: u64,
    sizes: &BTreeMap<String, u64>,
) -> Result<SetLabeling> {
    if d == 0 {
        return Err(Error::invalid("difference d must be positive"));
    }
    let order: Vec<String> = g.vertices().map(String::from).collect();
    assign_starts(g, &order, |v| match sizes.get(v) {
        Some(&s) if s >= 3 => Ok((d, s)),
        Some(&s) => Err(Error::invalid(format!("size {s} for `{v}` is below 3"))),
        None => Err(Error::invalid(format!("no size given for `{v}`"))),
    })
}

/// The first `count` primes.
pub fn first_primes(count: usize) -> Vec<u64> {
    let mut primes: Vec<u64> = Vec::with_capacity(count);
    let mut candidate = 2;
    while primes.len() < count {
        if primes
            .iter()
            .take_while(|p| *p * *p <= candidate)
            .all(|p| candidate % p != 0)
        {
            primes.push(candidate);
        }
        candidate += 1;
    }
    primes
}

/// Default difference pool: one prime per color a greedy coloring may need.
pub fn default_difference_pool(g: &Graph) -> Vec<u64> {
    first_primes(g.max_degree() + 1)
}

/// Second-kind labeling from a pool of pairwise-coprime differences.
///
/// Vertices are greedily colored; color `c` gets difference `diffs[c]` and
/// every label has three elements.
pub fn construct_second_kind(g: &Graph, diffs: &[u64]) -> Result<SetLabeling> {
    if let Some(d) = diffs.iter().find(|&&d| d < 2) {
        return Err(Error::invalid(format!("difference {d} is below 2")));
    }
    for (i, &a) in diffs.iter().enumerate() {
        for &b in &diffs[i + 1..] {
            if gcd(a, b) != 1 {
                return Err(Error::invalid(format!(
                    "differences {a} and {b} are not coprime"
                )));
            }
        }
    }
    let coloring = greedy_coloring(g);
    let needed = coloring.values().max().map_or(0, |c| c + 1);
    if needed > diffs.len() {
        return Err(Error::ConstructionImpossible(format!(
            "greedy coloring needs {needed} differences, {} supplied",
            diffs.len()
        )));
    }
    let adj = g.adjacency();
    let mut order: Vec<String> = coloring.keys().cloned().collect();
    order.sort_by(|a, b| {
        adj[b.as_str()]
            .len()
            .cmp(&adj[a.as_str()].len())
            .then(a.cmp(b))
    });
    assign_starts(g, &order, |v| Ok((diffs[coloring[v]], 3)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graphcore::fixtures::{cycle, path, triangle};
    use crate::labeling::{classify, EdgeRelation};

    fn set(xs: &[u64]) -> IntegerSet {
        IntegerSet::new(xs.iter().copied()).unwrap()
    }

    fn k_mn(a: usize, b: usize) -> Graph {
        let mut edges = Vec::new();
        for i in 0..a {
            for j in 0..b {
                edges.push((format!("a{i}"), format!("b{j}")));
            }
        }
        Graph::from_edges(edges).unwrap()
    }

    #[test]
    fn params_validation() {
        assert!(ConstructionParams::new(2, 3, 1, None).is_err());
        assert!(ConstructionParams::new(3, 3, 0, None).is_err());
        assert!(ConstructionParams::new(3, 3, 1, Some(3)).is_err());
        assert_eq!(
            ConstructionParams::new(3, 4, 1, None).unwrap().multiplier(),
            4
        );
    }

    #[test]
    fn first_kind_on_k23() {
        let p = ConstructionParams::new(3, 4, 1, Some(4)).unwrap();
        let f = construct_first_kind(&k_mn(2, 3), &p).unwrap();
        let starts = |prefix: &str| -> Vec<u64> {
            f.iter()
                .filter(|(v, _)| v.starts_with(prefix))
                .map(|(_, s)| s.min())
                .collect()
        };
        assert_eq!(starts("a"), vec![0, 3]);
        assert_eq!(starts("b"), vec![0, 1, 2]);
        assert_eq!(f.get("b1"), Some(&set(&[1, 5, 9, 13])));
        let r = classify(&k_mn(2, 3), &f).unwrap();
        assert!(r.semi_arithmetic_first_kind);
        assert_eq!(r.edge_uniform_k, Some(12));
    }

    #[test]
    fn first_kind_on_k2() {
        let p = ConstructionParams::new(3, 3, 1, Some(4)).unwrap();
        let f = construct_first_kind(&path(&["u", "v"]), &p).unwrap();
        assert_eq!(f.get("u"), Some(&set(&[0, 1, 2])));
        assert_eq!(f.get("v"), Some(&set(&[0, 4, 8])));
    }

    #[test]
    fn first_kind_needs_bipartite_or_uniform() {
        let p = ConstructionParams::new(3, 4, 1, None).unwrap();
        assert!(matches!(
            construct_first_kind(&triangle(), &p),
            Err(Error::ConstructionImpossible(_))
        ));
        let p = ConstructionParams::new(3, 3, 1, None).unwrap();
        for g in [triangle(), cycle(5)] {
            let f = construct_first_kind(&g, &p).unwrap();
            let r = classify(&g, &f).unwrap();
            assert!(r.semi_arithmetic_first_kind && r.strong);
            assert_eq!(r.edge_uniform_k, Some(9));
            assert_eq!(r.vertex_uniform_l, Some(3));
        }
    }

    #[test]
    fn isoarithmetic_examples() {
        let k2 = path(&["u", "v"]);
        let f = construct_isoarithmetic(&k2, 2, &uniform_sizes(&k2, 3)).unwrap();
        assert_eq!(f.get("u"), Some(&set(&[0, 2, 4])));
        assert_eq!(f.get("v"), Some(&set(&[1, 3, 5])));
        assert!(classify(&k2, &f).unwrap().isoarithmetic);

        let p3 = path(&["a", "b", "c"]);
        let f = construct_isoarithmetic(&p3, 1, &uniform_sizes(&p3, 3)).unwrap();
        assert!(classify(&p3, &f).unwrap().arithmetic);

        let mut sizes = uniform_sizes(&p3, 3);
        sizes.insert("b".into(), 2);
        assert!(construct_isoarithmetic(&p3, 1, &sizes).is_err());
    }

    #[test]
    fn isoarithmetic_edge_labels_have_expected_shape() {
        let g = cycle(6);
        let mut sizes = uniform_sizes(&g, 3);
        sizes.insert("v2".into(), 5);
        let f = construct_isoarithmetic(&g, 3, &sizes).unwrap();
        let r = classify(&g, &f).unwrap();
        assert!(r.isoarithmetic);
        for e in g.edges() {
            let (a, b) = (f.get(e.u()).unwrap(), f.get(e.v()).unwrap());
            let label = sumset(a, b).unwrap();
            let ap = label.as_ap().unwrap();
            assert_eq!(ap.difference, 3);
            assert_eq!(label.len(), a.len() + b.len() - 1);
        }
    }

    #[test]
    fn second_kind_examples() {
        let k2 = path(&["u", "v"]);
        let f = construct_second_kind(&k2, &[2, 3]).unwrap();
        assert_eq!(f.get("u"), Some(&set(&[0, 2, 4])));
        assert_eq!(f.get("v"), Some(&set(&[0, 3, 6])));
        assert!(classify(&k2, &f).unwrap().strong);

        let f = construct_second_kind(&triangle(), &[2, 3, 5]).unwrap();
        let r = classify(&triangle(), &f).unwrap();
        assert!(r
            .per_edge
            .iter()
            .all(|e| e.kind.unwrap().relation == EdgeRelation::SecondKindCoprime));
        assert!(r.semi_arithmetic_second_kind && r.strong);

        let star = Graph::from_edges([("x", "l0"), ("x", "l1"), ("x", "l2")]).unwrap();
        let f = construct_second_kind(&star, &[2, 3]).unwrap();
        assert_eq!(f.get("x").unwrap().as_ap().unwrap().difference, 2);
        for leaf in ["l0", "l1", "l2"] {
            assert_eq!(f.get(leaf).unwrap().as_ap().unwrap().difference, 3);
        }
    }

    #[test]
    fn second_kind_errors() {
        assert!(matches!(
            construct_second_kind(&triangle(), &[2, 3]),
            Err(Error::ConstructionImpossible(_))
        ));
        assert!(construct_second_kind(&triangle(), &[2, 4, 5]).is_err());
        assert!(construct_second_kind(&triangle(), &[1, 3, 5]).is_err());
    }

    #[test]
    fn default_pool_is_primes() {
        assert_eq!(first_primes(6), vec![2, 3, 5, 7, 11, 13]);
        assert_eq!(default_difference_pool(&triangle()), vec![2, 3, 5]);
    }

    #[test]
    fn constructors_are_deterministic() {
        let g = k_mn(3, 3);
        let p = ConstructionParams::new(4, 3, 2, None).unwrap();
        assert_eq!(
            construct_first_kind(&g, &p).unwrap(),
            construct_first_kind(&g, &p).unwrap()
        );
        assert_eq!(
            construct_second_kind(&g, &[3, 4]).unwrap(),
            construct_second_kind(&g, &[3, 4]).unwrap()
        );
    }
}
