//! Integer additive set-indexers (IASIs) on finite simple graphs.
//!
//! A vertex labeling `f : V(G) -> finite subsets of N0` is an IASI when it is
//! injective and the induced edge labeling `f+(uv) = f(u) + f(v)` (the sumset)
//! is injective too. This crate provides:
//!
//! * [`setcore`]: exact sumset arithmetic, compatibility classes and
//!   arithmetic-progression recognition;
//! * [`graphcore`]: simple graphs, bipartiteness and the derived-graph
//!   transforms (line graph, total graph, subdivision, contraction,
//!   elementary topological reduction);
//! * [`labeling`]: IASI verification and full classification of a labeled graph;
//! * [`constructors`]: first-kind, isoarithmetic and second-kind labelers;
//! * [`harness`]: brute-force oracles and exhaustive audits of the
//!   semi-arithmetic IASI claims;
//! * [`cli`]: the `iasi` command-line front end.
//!
//! Bulk evaluation runs on rayon when the `parallel` feature is enabled (the
//! default) and falls back to sequential iteration otherwise; see [`exec`].

#![forbid(unsafe_code)]

pub mod cli;
pub mod constructors;
mod error;
pub mod exec;
pub mod graphcore;
pub mod harness;
pub mod labeling;
pub mod setcore;

pub use error::{Error, Result};
pub use exec::Execution;
pub use graphcore::{Edge, Element, ElementCorrespondence, Graph};
pub use labeling::{ClassificationReport, EdgeKind, EdgeRelation, SetLabeling, Violation};
pub use setcore::{ApDescriptor, CompatibilityDecomposition, IntegerSet};
