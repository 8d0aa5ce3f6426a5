//! Exact arithmetic on finite sets of non-negative integers.
//!
//! All sets are kept in sorted-unique normal form and are never empty.
//! Elements are bounded by [`MAX_ELEMENT`] so that the sum of two elements
//! always fits in a `u64`.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Largest element accepted in an [`IntegerSet`] (2^62).
pub const MAX_ELEMENT: u64 = 1 << 62;

/// A non-empty finite set of non-negative integers, stored sorted ascending.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(try_from = "Vec<u64>", into = "Vec<u64>")]
pub struct IntegerSet(Vec<u64>);

impl IntegerSet {
    pub fn new(elements: impl IntoIterator<Item = u64>) -> Result<Self> {
        let mut v: Vec<u64> = elements.into_iter().collect();
        if v.is_empty() {
            return Err(Error::invalid("integer set must be non-empty"));
        }
        v.sort_unstable();
        v.dedup();
        if let Some(&max) = v.last() {
            if max > MAX_ELEMENT {
                return Err(Error::invalid(format!(
                    "element {max} exceeds the supported maximum 2^62"
                )));
            }
        }
        Ok(IntegerSet(v))
    }

    /// Callers guarantee `v` is non-empty, strictly increasing and bounded.
    fn from_normalized(v: Vec<u64>) -> Self {
        debug_assert!(!v.is_empty());
        debug_assert!(v.windows(2).all(|w| w[0] < w[1]));
        IntegerSet(v)
    }

    pub fn singleton(x: u64) -> Result<Self> {
        Self::new([x])
    }

    pub fn as_slice(&self) -> &[u64] {
        &self.0
    }

    pub fn iter(&self) -> impl Iterator<Item = u64> + '_ {
        self.0.iter().copied()
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    /// Always false; kept for clippy's `len_without_is_empty`.
    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn min(&self) -> u64 {
        self.0[0]
    }

    pub fn max(&self) -> u64 {
        self.0[self.0.len() - 1]
    }

    pub fn contains(&self, x: u64) -> bool {
        self.0.binary_search(&x).is_ok()
    }

    /// The AP descriptor of this set, if it is an arithmetic progression.
    pub fn as_ap(&self) -> Option<ApDescriptor> {
        recognize_ap(self)
    }
}

impl TryFrom<Vec<u64>> for IntegerSet {
    type Error = Error;

    fn try_from(v: Vec<u64>) -> Result<Self> {
        IntegerSet::new(v)
    }
}

impl From<IntegerSet> for Vec<u64> {
    fn from(s: IntegerSet) -> Self {
        s.0
    }
}

impl fmt::Display for IntegerSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        for (i, x) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{x}")?;
        }
        f.write_str("}")
    }
}

/// Parses the brace form `{0,4,8}`; whitespace anywhere is ignored.
impl FromStr for IntegerSet {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let err = |column: usize, message: &str| Error::Parse {
            line: 1,
            column,
            message: message.to_string(),
        };
        let open = s.find(|c: char| !c.is_whitespace());
        let close = s.rfind(|c: char| !c.is_whitespace());
        let (open, close) = match (open, close) {
            (Some(o), Some(c)) if s[o..].starts_with('{') && s[c..].starts_with('}') && o < c => {
                (o, c)
            }
            (Some(o), _) if !s[o..].starts_with('{') => {
                return Err(err(o + 1, "expected opening `{`"))
            }
            (Some(_), Some(c)) => return Err(err(c + 1, "expected closing `}`")),
            _ => return Err(err(1, "empty input")),
        };
        let mut elements = Vec::new();
        let mut offset = open + 1;
        for piece in s[open + 1..close].split(',') {
            let token = piece.trim();
            let column = offset + piece.len() - piece.trim_start().len() + 1;
            if token.is_empty() {
                return Err(err(column, "expected an integer"));
            }
            let value = token
                .parse::<u64>()
                .map_err(|_| err(column, &format!("invalid integer `{token}`")))?;
            elements.push(value);
            offset += piece.len() + 1;
        }
        IntegerSet::new(elements).map_err(|e| err(open + 1, &e.to_string()))
    }
}

/// Canonical form `{first + r*difference : 0 <= r < length}` of an AP-set.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct ApDescriptor {
    pub first: u64,
    pub difference: u64,
    pub length: u64,
}

impl ApDescriptor {
    pub fn new(first: u64, difference: u64, length: u64) -> Result<Self> {
        if difference == 0 {
            return Err(Error::invalid("AP difference must be at least 1"));
        }
        if length == 0 {
            return Err(Error::invalid("AP length must be at least 1"));
        }
        let last = (length - 1)
            .checked_mul(difference)
            .and_then(|span| span.checked_add(first))
            .filter(|&last| last <= MAX_ELEMENT);
        if last.is_none() {
            return Err(Error::invalid(format!(
                "AP ({first},{difference},{length}) exceeds the supported maximum 2^62"
            )));
        }
        Ok(ApDescriptor {
            first,
            difference,
            length,
        })
    }

    pub fn last(&self) -> u64 {
        self.first + (self.length - 1) * self.difference
    }

    pub fn expand(&self) -> IntegerSet {
        IntegerSet::from_normalized(
            (0..self.length)
                .map(|r| self.first + r * self.difference)
                .collect(),
        )
    }
}

impl fmt::Display for ApDescriptor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{},{})", self.first, self.difference, self.length)
    }
}

/// `A + B = {a + b : a in A, b in B}`.
///
/// Fails when the largest sum exceeds [`MAX_ELEMENT`], which keeps the result
/// usable as a label in further sums.
pub fn sumset(a: &IntegerSet, b: &IntegerSet) -> Result<IntegerSet> {
    let top = a.max() + b.max();
    if top > MAX_ELEMENT {
        return Err(Error::invalid(format!(
            "sumset element {top} exceeds the supported maximum 2^62"
        )));
    }
    let mut sums = Vec::with_capacity(a.len() * b.len());
    for x in a.iter() {
        sums.extend(b.iter().map(|y| x + y));
    }
    sums.sort_unstable();
    sums.dedup();
    Ok(IntegerSet::from_normalized(sums))
}

/// Partition of `A x B` into compatibility classes, keyed by the common sum.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CompatibilityDecomposition {
    pub left: IntegerSet,
    pub right: IntegerSet,
    pub classes: BTreeMap<u64, Vec<(u64, u64)>>,
}

impl CompatibilityDecomposition {
    pub fn new(left: &IntegerSet, right: &IntegerSet) -> Self {
        let mut classes: BTreeMap<u64, Vec<(u64, u64)>> = BTreeMap::new();
        for a in left.iter() {
            for b in right.iter() {
                classes.entry(a + b).or_default().push((a, b));
            }
        }
        CompatibilityDecomposition {
            left: left.clone(),
            right: right.clone(),
            classes,
        }
    }

    pub fn class(&self, sum: u64) -> Option<&[(u64, u64)]> {
        self.classes.get(&sum).map(Vec::as_slice)
    }

    /// Number of distinct classes.
    pub fn index(&self) -> usize {
        self.classes.len()
    }

    pub fn total_pairs(&self) -> usize {
        self.classes.values().map(Vec::len).sum()
    }

    pub fn max_class_size(&self) -> usize {
        self.classes.values().map(Vec::len).max().unwrap_or(0)
    }

    /// Size a saturated class would have: `min(|A|, |B|)`.
    pub fn saturation_size(&self) -> usize {
        self.left.len().min(self.right.len())
    }

    pub fn saturated(&self) -> Vec<(u64, &[(u64, u64)])> {
        let target = self.saturation_size();
        self.classes
            .iter()
            .filter(|(_, pairs)| pairs.len() == target)
            .map(|(&k, pairs)| (k, pairs.as_slice()))
            .collect()
    }
}

pub fn compatibility_decomposition(a: &IntegerSet, b: &IntegerSet) -> CompatibilityDecomposition {
    CompatibilityDecomposition::new(a, b)
}

pub fn compatibility_index(a: &IntegerSet, b: &IntegerSet) -> usize {
    CompatibilityDecomposition::new(a, b).index()
}

pub fn maximal_class_size(a: &IntegerSet, b: &IntegerSet) -> usize {
    CompatibilityDecomposition::new(a, b).max_class_size()
}

pub fn saturated_classes(a: &IntegerSet, b: &IntegerSet) -> Vec<(u64, Vec<(u64, u64)>)> {
    CompatibilityDecomposition::new(a, b)
        .saturated()
        .into_iter()
        .map(|(k, pairs)| (k, pairs.to_vec()))
        .collect()
}

/// Recognizes an arithmetic progression. Singletons get difference 1.
pub fn recognize_ap(a: &IntegerSet) -> Option<ApDescriptor> {
    let xs = a.as_slice();
    let difference = if xs.len() == 1 { 1 } else { xs[1] - xs[0] };
    if xs.windows(2).any(|w| w[1] - w[0] != difference) {
        return None;
    }
    Some(ApDescriptor {
        first: xs[0],
        difference,
        length: xs.len() as u64,
    })
}

/// `|expand(p) + expand(q)|` without materializing the sumset when one
/// difference divides the other.
///
/// With `d_large = k * d_small`, the sums are a translate of
/// `d_small * {r + s*k : r < m, s < n}` where `m` is the length of the
/// smaller-difference set. Those are `n` rows of `m` consecutive integers
/// starting `k` apart: disjoint when `k >= m`, otherwise one solid run.
pub fn ap_sumset_cardinality(p: &ApDescriptor, q: &ApDescriptor) -> u64 {
    let (small, large) = if p.difference <= q.difference {
        (p, q)
    } else {
        (q, p)
    };
    if large.difference % small.difference != 0 {
        return sumset(&p.expand(), &q.expand())
            .map(|s| s.len() as u64)
            .expect("descriptor bounds keep sums in range");
    }
    let k = large.difference / small.difference;
    let (m, n) = (small.length, large.length);
    if k >= m {
        m * n
    } else {
        (n - 1) * k + m
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn set(xs: &[u64]) -> IntegerSet {
        IntegerSet::new(xs.iter().copied()).unwrap()
    }

    fn ap(a: u64, d: u64, n: u64) -> ApDescriptor {
        ApDescriptor::new(a, d, n).unwrap()
    }

    #[test]
    fn construction_normalizes() {
        assert_eq!(set(&[5, 1, 3, 1]).as_slice(), &[1, 3, 5]);
        assert!(IntegerSet::new(Vec::new()).is_err());
        assert!(IntegerSet::new([MAX_ELEMENT + 1]).is_err());
        assert!(IntegerSet::new([MAX_ELEMENT]).is_ok());
    }

    #[test]
    fn parse_and_display() {
        let s: IntegerSet = " { 0, 4 ,8 } ".parse().unwrap();
        assert_eq!(s, set(&[0, 4, 8]));
        assert_eq!(s.to_string(), "{0,4,8}");
        assert_eq!("{7}".parse::<IntegerSet>().unwrap(), set(&[7]));
        for bad in ["", "{}", "0,1", "{0,1", "{0,,1}", "{0,x}", "{0,1,}", "{-1}"] {
            assert!(
                bad.parse::<IntegerSet>().is_err(),
                "{bad:?} should not parse"
            );
        }
        match "{0,x}".parse::<IntegerSet>() {
            Err(Error::Parse { column, .. }) => assert_eq!(column, 4),
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn json_form_is_an_array() {
        let s = set(&[0, 1, 2]);
        assert_eq!(serde_json::to_string(&s).unwrap(), "[0,1,2]");
        assert!(serde_json::from_str::<IntegerSet>("[]").is_err());
        assert_eq!(serde_json::from_str::<IntegerSet>("[2,0,1]").unwrap(), s);
    }

    #[test]
    fn sumset_examples() {
        assert_eq!(sumset(&set(&[0]), &set(&[5])).unwrap(), set(&[5]));
        assert_eq!(
            sumset(&set(&[0, 1, 2]), &set(&[0, 4, 8])).unwrap(),
            set(&[0, 1, 2, 4, 5, 6, 8, 9, 10])
        );
        assert_eq!(
            sumset(&set(&[0, 2, 4]), &set(&[1, 3, 5])).unwrap(),
            set(&[1, 3, 5, 7, 9])
        );
    }

    #[test]
    fn sumset_rejects_overflowing_results() {
        let big = set(&[MAX_ELEMENT]);
        assert!(sumset(&big, &set(&[1])).is_err());
        assert!(sumset(&big, &set(&[0])).is_ok());
    }

    #[test]
    fn decomposition_examples() {
        let d = compatibility_decomposition(&set(&[0, 1, 2]), &set(&[0, 1, 2]));
        assert_eq!(d.class(2).unwrap(), &[(0, 2), (1, 1), (2, 0)]);
        assert_eq!(d.total_pairs(), 9);

        let d = compatibility_decomposition(&set(&[0]), &set(&[0, 1]));
        assert_eq!(d.index(), 2);
        assert!(d.classes.values().all(|c| c.len() == 1));

        let d = compatibility_decomposition(&set(&[0, 2, 4]), &set(&[1, 3, 5]));
        assert_eq!(d.class(5).unwrap(), &[(0, 5), (2, 3), (4, 1)]);
        assert_eq!(d.saturation_size(), 3);
    }

    #[test]
    fn index_and_class_size_examples() {
        assert_eq!(compatibility_index(&set(&[0, 1, 2]), &set(&[0, 1, 2])), 5);
        assert_eq!(compatibility_index(&set(&[0]), &set(&[7])), 1);
        assert_eq!(compatibility_index(&set(&[0, 2, 4]), &set(&[1, 3, 5])), 5);

        assert_eq!(maximal_class_size(&set(&[0, 2, 4]), &set(&[1, 3, 5])), 3);
        assert_eq!(maximal_class_size(&set(&[0, 1, 2]), &set(&[0, 4, 8])), 1);
        assert_eq!(maximal_class_size(&set(&[0]), &set(&[0, 1, 2])), 1);
    }

    #[test]
    fn saturated_class_examples() {
        let sat = saturated_classes(&set(&[0, 2, 4]), &set(&[1, 3, 5]));
        assert_eq!(sat.len(), 1);
        assert_eq!(sat[0].0, 5);
        assert!(saturated_classes(&set(&[0, 1, 2]), &set(&[0, 4, 8])).is_empty());
        assert_eq!(
            saturated_classes(&set(&[0]), &set(&[3])),
            vec![(3, vec![(0, 3)])]
        );
    }

    #[test]
    fn recognize_ap_examples() {
        assert_eq!(recognize_ap(&set(&[3, 5, 7, 9])), Some(ap(3, 2, 4)));
        assert_eq!(recognize_ap(&set(&[0, 1, 2, 4, 5, 6, 8, 9, 10])), None);
        assert_eq!(recognize_ap(&set(&[6])), Some(ap(6, 1, 1)));
        assert_eq!(recognize_ap(&set(&[2, 9])), Some(ap(2, 7, 2)));
    }

    #[test]
    fn descriptor_validation() {
        assert!(ApDescriptor::new(0, 0, 3).is_err());
        assert!(ApDescriptor::new(0, 1, 0).is_err());
        assert!(ApDescriptor::new(MAX_ELEMENT, 1, 2).is_err());
        assert_eq!(ap(3, 2, 4).expand(), set(&[3, 5, 7, 9]));
        assert_eq!(ap(3, 2, 4).last(), 9);
    }

    #[test]
    fn ap_cardinality_examples() {
        assert_eq!(ap_sumset_cardinality(&ap(0, 1, 3), &ap(0, 4, 3)), 9);
        assert_eq!(ap_sumset_cardinality(&ap(0, 1, 4), &ap(0, 2, 3)), 8);
        for n in 1..6 {
            assert_eq!(ap_sumset_cardinality(&ap(4, 3, 1), &ap(1, 5, n)), n);
            assert_eq!(ap_sumset_cardinality(&ap(1, 5, n), &ap(4, 3, 1)), n);
        }
        // non-divisible differences take the enumeration path
        assert_eq!(ap_sumset_cardinality(&ap(0, 4, 3), &ap(0, 6, 5)), 15);
    }
}
