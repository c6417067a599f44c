//! Turning a simple graph into a disjoint union of degree-regular graphs by
//! adding and removing a few edges.
//!
//! A vertex is a *separation vertex* when one of its neighbors has strictly
//! larger degree. A graph has none exactly when each of its components is
//! regular. The procedures here take a graph with few separation vertices and
//! produce an [`EditScript`] whose length is bounded in terms of the number of
//! separation vertices `k` and the maximum degree `Δ` alone:
//!
//! * `Δ ≤ 3`: at most `4k + 9` edits ([`deg3::regularize_maxdeg3`]).
//! * `Δ ≥ 4`: at most `4(Δ+1)!·k + 5Δ²` edits, provided every degree
//!   `3 < d ≤ Δ` occurs on enough vertices ([`general::regularize`]).
//!
//! [`metric`] computes the exact permutation distance between small graphs
//! and is used to check scripts independently.

pub mod deg3;
pub mod general;
pub mod generators;
pub mod graph;
pub mod metric;

pub use graph::{
    apply_script, certify_regular_union, separation_vertices, Edge, EdgeOp, EditScript, Graph,
    GraphError, OpKind, RegularityCertificate, SeparationReport, Vertex,
};
