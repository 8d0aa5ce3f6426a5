//! Exhaustive audits of the semi-arithmetic IASI claims over bounded search
//! spaces, checked against brute-force oracles.
//!
//! Descriptor-level claims are evaluated on every ordered pair of AP
//! descriptors within [`SearchBounds`]. Graph-level claims run the
//! constructors over [`family::graph_family`]. Each mismatch is recomputed
//! with the independent [`oracle`] before it is reported.

mod audit;
pub mod family;
pub mod oracle;

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::setcore::ApDescriptor;

pub use audit::{audit, audit_with};
pub use oracle::{oracle_maximal_class, oracle_sumset_cardinality};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct SearchBounds {
    pub first_max: u64,
    pub diff_max: u64,
    pub len_min: u64,
    pub len_max: u64,
}

impl Default for SearchBounds {
    fn default() -> Self {
        SearchBounds {
            first_max: 3,
            diff_max: 6,
            len_min: 3,
            len_max: 5,
        }
    }
}

impl SearchBounds {
    pub fn new(first_max: u64, diff_max: u64, len_min: u64, len_max: u64) -> Result<Self> {
        let b = SearchBounds {
            first_max,
            diff_max,
            len_min,
            len_max,
        };
        b.validate()?;
        Ok(b)
    }

    pub fn validate(&self) -> Result<()> {
        if self.len_min < 3 {
            return Err(Error::invalid("len_min must be at least 3"));
        }
        if self.len_max < self.len_min {
            return Err(Error::invalid("len_max must be at least len_min"));
        }
        if self.diff_max < 1 {
            return Err(Error::invalid("diff_max must be at least 1"));
        }
        if self.first_max > 1 << 20 || self.diff_max > 1 << 20 || self.len_max > 1 << 10 {
            return Err(Error::invalid("bounds too large for exhaustive search"));
        }
        Ok(())
    }

    pub fn descriptor_count(&self) -> u64 {
        (self.first_max + 1) * self.diff_max * (self.len_max - self.len_min + 1)
    }

    pub fn pair_count(&self) -> u64 {
        self.descriptor_count().pow(2)
    }
}

/// Parses `first_max,diff_max,len_min,len_max`.
impl FromStr for SearchBounds {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let parts: Vec<&str> = s.split(',').map(str::trim).collect();
        let [f, d, lmin, lmax] = parts.as_slice() else {
            return Err(Error::invalid(format!(
                "bounds `{s}` must be four comma-separated integers"
            )));
        };
        let num = |t: &str| {
            t.parse::<u64>()
                .map_err(|_| Error::invalid(format!("invalid bound `{t}`")))
        };
        SearchBounds::new(num(f)?, num(d)?, num(lmin)?, num(lmax)?)
    }
}

impl fmt::Display for SearchBounds {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "first<={}, diff<={}, len {}..{}",
            self.first_max, self.diff_max, self.len_min, self.len_max
        )
    }
}

/// All descriptors within bounds, ordered by `(first, difference, length)`.
pub fn descriptors(b: &SearchBounds) -> Vec<ApDescriptor> {
    let mut out = Vec::with_capacity(b.descriptor_count() as usize);
    for first in 0..=b.first_max {
        for difference in 1..=b.diff_max {
            for length in b.len_min..=b.len_max {
                out.push(ApDescriptor {
                    first,
                    difference,
                    length,
                });
            }
        }
    }
    out
}

/// Every ordered pair of descriptors within bounds, in lexicographic order.
pub fn enumerate_ap_pairs(b: &SearchBounds) -> impl Iterator<Item = (ApDescriptor, ApDescriptor)> {
    let ds = descriptors(b);
    let outer = ds.clone();
    outer
        .into_iter()
        .flat_map(move |p| ds.clone().into_iter().map(move |q| (p, q)))
}

/// The audited claims. The string tags are the ones accepted on the command line.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Claim {
    /// Sumset of two AP labels is an AP iff one difference is a multiple
    /// `k <= |smaller-difference label|` of the other.
    #[serde(rename = "T1.3")]
    ArithmeticCharacterization,
    /// First-kind pairs are strong.
    #[serde(rename = "T2.3")]
    FirstKindStrong,
    /// First-kind pairs have only trivial compatibility classes.
    #[serde(rename = "C2.4")]
    FirstKindTrivialClasses,
    /// First-kind edges never have a prime set-indexing number.
    #[serde(rename = "P2.6")]
    FirstKindNoPrimeIndex,
    /// First-kind labelings are uniform iff bipartite or uniformly set-indexed.
    #[serde(rename = "T2.7")]
    UniformFirstKind,
    /// Second-kind pairs are strong iff `q > |f(v_i)|` or the differences are coprime.
    #[serde(rename = "T2.8")]
    SecondKindStrong,
    /// Maximal class size of second-kind pairs is `floor(|f(v_j)| / q1)`.
    #[serde(rename = "T2.9")]
    MaximalClassFormula,
    /// Subgraphs of first-kind labeled graphs stay semi-arithmetic.
    #[serde(rename = "P2.10")]
    Subgraph,
    /// Line graphs of semi-arithmetic graphs get a non-AP vertex label.
    #[serde(rename = "P2.12")]
    LineGraph,
    /// Total graphs of semi-arithmetic graphs get a non-AP vertex label.
    #[serde(rename = "P2.14")]
    TotalGraph,
    /// Contracting an edge yields a non-AP vertex label.
    #[serde(rename = "P2.16")]
    Contraction,
    /// After a topological reduction, the new edge `uw` keeps the graph
    /// semi-arithmetic iff `u`, `w` are in a first-kind relation.
    #[serde(rename = "P2.17")]
    Reduction,
    /// Subdividing an edge yields a non-AP vertex label.
    #[serde(rename = "P2.18")]
    Subdivision,
}

impl Claim {
    pub const ALL: [Claim; 13] = [
        Claim::ArithmeticCharacterization,
        Claim::FirstKindStrong,
        Claim::FirstKindTrivialClasses,
        Claim::FirstKindNoPrimeIndex,
        Claim::UniformFirstKind,
        Claim::SecondKindStrong,
        Claim::MaximalClassFormula,
        Claim::Subgraph,
        Claim::LineGraph,
        Claim::TotalGraph,
        Claim::Contraction,
        Claim::Reduction,
        Claim::Subdivision,
    ];

    pub fn tag(self) -> &'static str {
        match self {
            Claim::ArithmeticCharacterization => "T1.3",
            Claim::FirstKindStrong => "T2.3",
            Claim::FirstKindTrivialClasses => "C2.4",
            Claim::FirstKindNoPrimeIndex => "P2.6",
            Claim::UniformFirstKind => "T2.7",
            Claim::SecondKindStrong => "T2.8",
            Claim::MaximalClassFormula => "T2.9",
            Claim::Subgraph => "P2.10",
            Claim::LineGraph => "P2.12",
            Claim::TotalGraph => "P2.14",
            Claim::Contraction => "P2.16",
            Claim::Reduction => "P2.17",
            Claim::Subdivision => "P2.18",
        }
    }
}

impl fmt::Display for Claim {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.tag())
    }
}

impl FromStr for Claim {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Claim::ALL
            .into_iter()
            .find(|c| c.tag().eq_ignore_ascii_case(s.trim()))
            .ok_or_else(|| {
                let known: Vec<&str> = Claim::ALL.iter().map(|c| c.tag()).collect();
                Error::invalid(format!(
                    "unknown theorem `{s}`; expected one of {}",
                    known.join(", ")
                ))
            })
    }
}

/// Quantities predicted by a claim or measured by brute force. Only the
/// fields relevant to the claim are filled in.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(default)]
pub struct Evidence {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub sumset_cardinality: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub max_class_size: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub strong: Option<bool>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub is_ap: Option<bool>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub ap_difference: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub composite: Option<bool>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub constructible: Option<bool>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub semi_arithmetic: Option<bool>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub edge_uniform_k: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub bipartition_by_size: Option<bool>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub non_ap_vertices: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub by_reading: Option<BTreeMap<String, u64>>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Counterexample {
    pub p: Option<ApDescriptor>,
    pub q: Option<ApDescriptor>,
    /// Graph-level instance description (graph, parameters, transform).
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub instance: Option<String>,
    pub expected: Evidence,
    pub observed: Evidence,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum AuditVerdict {
    Consistent,
    CounterexamplesFound,
}

impl AuditVerdict {
    pub fn as_str(self) -> &'static str {
        match self {
            AuditVerdict::Consistent => "consistent",
            AuditVerdict::CounterexamplesFound => "counterexamples-found",
        }
    }
}

/// Agreement of one reading of an ambiguous formula with the oracle.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ReadingAgreement {
    pub reading: String,
    pub description: String,
    pub agreed: u64,
    pub checked: u64,
}

impl ReadingAgreement {
    pub fn rate(&self) -> f64 {
        if self.checked == 0 {
            0.0
        } else {
            self.agreed as f64 / self.checked as f64
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct AuditReport {
    pub theorem: Claim,
    pub bounds: SearchBounds,
    pub checked: u64,
    pub counterexamples: Vec<Counterexample>,
    pub verdict: AuditVerdict,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub readings: Vec<ReadingAgreement>,
}

impl AuditReport {
    pub fn is_consistent(&self) -> bool {
        self.verdict == AuditVerdict::Consistent
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn bounds(f: u64, d: u64, lmin: u64, lmax: u64) -> SearchBounds {
        SearchBounds::new(f, d, lmin, lmax).unwrap()
    }

    #[test]
    fn pair_enumeration_counts() {
        let b = bounds(0, 1, 3, 3);
        let pairs: Vec<_> = enumerate_ap_pairs(&b).collect();
        let d = ApDescriptor::new(0, 1, 3).unwrap();
        assert_eq!(pairs, vec![(d, d)]);
        assert_eq!(enumerate_ap_pairs(&bounds(1, 1, 3, 3)).count(), 4);
        assert_eq!(enumerate_ap_pairs(&bounds(0, 2, 3, 4)).count(), 16);
        let b = SearchBounds::default();
        assert_eq!(enumerate_ap_pairs(&b).count() as u64, b.pair_count());
        assert_eq!(b.descriptor_count(), 72);
    }

    #[test]
    fn pair_enumeration_is_sorted() {
        let pairs: Vec<_> = enumerate_ap_pairs(&bounds(1, 2, 3, 4)).collect();
        assert!(pairs.windows(2).all(|w| w[0] < w[1]));
    }

    #[test]
    fn bounds_validation_and_parsing() {
        assert!(SearchBounds::new(3, 6, 2, 5).is_err());
        assert!(SearchBounds::new(3, 0, 3, 5).is_err());
        assert!(SearchBounds::new(3, 6, 5, 4).is_err());
        assert_eq!(
            "3,6,3,5".parse::<SearchBounds>().unwrap(),
            SearchBounds::default()
        );
        assert!("3,6,3".parse::<SearchBounds>().is_err());
        assert!("3,x,3,5".parse::<SearchBounds>().is_err());
    }

    #[test]
    fn claim_tags_round_trip() {
        for c in Claim::ALL {
            assert_eq!(c.tag().parse::<Claim>().unwrap(), c);
            assert_eq!(
                serde_json::to_string(&c).unwrap(),
                format!("\"{}\"", c.tag())
            );
        }
        assert!("T9.9".parse::<Claim>().is_err());
    }
}
