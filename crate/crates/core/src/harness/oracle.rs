//! Naive reference computations.
//!
//! Nothing here calls into `setcore`: sets are expanded into plain vectors
//! and every pairwise sum is enumerated, so these results can arbitrate
//! disagreements with the fast paths.

use std::collections::{HashMap, HashSet};

use crate::setcore::ApDescriptor;

pub fn oracle_expand(p: &ApDescriptor) -> Vec<u64> {
    let mut out = Vec::new();
    let mut x = p.first;
    for _ in 0..p.length {
        out.push(x);
        x += p.difference;
    }
    out
}

fn pairwise_sums(a: &[u64], b: &[u64]) -> Vec<u64> {
    a.iter()
        .flat_map(|x| b.iter().map(move |y| x + y))
        .collect()
}

pub fn oracle_sumset_cardinality(p: &ApDescriptor, q: &ApDescriptor) -> u64 {
    oracle_set_sum_cardinality(&oracle_expand(p), &oracle_expand(q))
}

pub fn oracle_set_sum_cardinality(a: &[u64], b: &[u64]) -> u64 {
    pairwise_sums(a, b)
        .into_iter()
        .collect::<HashSet<_>>()
        .len() as u64
}

/// Size of the largest compatibility class and the smallest sum attaining it.
pub fn oracle_maximal_class(p: &ApDescriptor, q: &ApDescriptor) -> (u64, u64) {
    let mut counts: HashMap<u64, u64> = HashMap::new();
    for s in pairwise_sums(&oracle_expand(p), &oracle_expand(q)) {
        *counts.entry(s).or_insert(0) += 1;
    }
    let size = counts.values().copied().max().unwrap_or(0);
    let witness = counts
        .iter()
        .filter(|(_, &c)| c == size)
        .map(|(&s, _)| s)
        .min()
        .unwrap_or(0);
    (size, witness)
}

/// True when the distinct values of `xs` form an arithmetic progression
/// (checked against the progression spanned by min and max).
pub fn oracle_is_ap(xs: &[u64]) -> bool {
    let mut v: Vec<u64> = xs.to_vec();
    v.sort_unstable();
    v.dedup();
    if v.len() <= 2 {
        return !v.is_empty();
    }
    let (lo, hi, steps) = (v[0], v[v.len() - 1], v.len() as u64 - 1);
    if (hi - lo) % steps != 0 {
        return false;
    }
    let d = (hi - lo) / steps;
    v.iter().enumerate().all(|(i, &x)| x == lo + i as u64 * d)
}

/// Distinct pairwise sums of two explicit sets, sorted.
pub fn oracle_set_sum(a: &[u64], b: &[u64]) -> Vec<u64> {
    let mut v = pairwise_sums(a, b);
    v.sort_unstable();
    v.dedup();
    v
}

pub fn is_prime(n: u64) -> bool {
    n >= 2 && (2..).take_while(|d| d * d <= n).all(|d| !n.is_multiple_of(d))
}
