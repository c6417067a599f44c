//! Simple undirected graphs on a fixed vertex set `0..n`.
//!
//! A [`Graph`] never holds self-loops or parallel edges. Neighbor lists are
//! kept sorted so every traversal order is deterministic.

mod edit;
pub mod io;
mod regularity;
mod separation;

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use thiserror::Error;

pub(crate) use edit::Editor;
pub use edit::{apply_script, EdgeOp, EditScript, OpKind, ScriptError};
pub use regularity::{certify_regular_union, Component, RegularityCertificate};
pub use separation::{
    check_modification_bound, is_separation_vertex, separation_vertices, ModificationBoundError,
    SeparationReport,
};

pub type Vertex = usize;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GraphError {
    #[error("vertex {vertex} out of range for a graph on {n} vertices")]
    OutOfRange { vertex: Vertex, n: usize },
    #[error("self-loop at vertex {0}")]
    SelfLoop(Vertex),
    #[error("duplicate edge {0}")]
    DuplicateEdge(Edge),
    #[error("edge {0} already present")]
    EdgeExists(Edge),
    #[error("edge {0} not present")]
    EdgeMissing(Edge),
    #[error("label table has {labels} entries for {n} vertices")]
    LabelCount { labels: usize, n: usize },
    #[error("duplicate vertex label {0:?}")]
    DuplicateLabel(String),
    #[error("unknown vertex label {0:?}")]
    UnknownLabel(String),
}

/// Unordered vertex pair, stored with the smaller endpoint first.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Edge {
    u: Vertex,
    v: Vertex,
}

impl Edge {
    /// # Panics
    /// If `a == b`.
    pub fn new(a: Vertex, b: Vertex) -> Self {
        assert_ne!(a, b, "an edge needs two distinct endpoints");
        if a < b {
            Edge { u: a, v: b }
        } else {
            Edge { u: b, v: a }
        }
    }

    pub fn try_new(a: Vertex, b: Vertex) -> Result<Self, GraphError> {
        if a == b {
            Err(GraphError::SelfLoop(a))
        } else {
            Ok(Edge::new(a, b))
        }
    }

    pub fn endpoints(self) -> (Vertex, Vertex) {
        (self.u, self.v)
    }

    pub fn lo(self) -> Vertex {
        self.u
    }

    pub fn hi(self) -> Vertex {
        self.v
    }

    pub fn touches(self, x: Vertex) -> bool {
        self.u == x || self.v == x
    }

    /// The endpoint that is not `x`, if `x` is an endpoint.
    pub fn other(self, x: Vertex) -> Option<Vertex> {
        if self.u == x {
            Some(self.v)
        } else if self.v == x {
            Some(self.u)
        } else {
            None
        }
    }

    pub fn shares_vertex(self, other: Edge) -> bool {
        self.touches(other.u) || self.touches(other.v)
    }
}

impl fmt::Display for Edge {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.u, self.v)
    }
}

impl From<Edge> for (Vertex, Vertex) {
    fn from(e: Edge) -> Self {
        e.endpoints()
    }
}

/// A finite simple undirected graph with vertex set `0..n`.
///
/// Optional labels map dense indices back to human-readable names; they ride
/// along through edits but take no part in equality.
#[derive(Clone)]
pub struct Graph {
    adj: Vec<Vec<Vertex>>,
    m: usize,
    labels: Option<Arc<[String]>>,
}

impl Graph {
    /// Graph on `n` vertices with no edges.
    pub fn empty(n: usize) -> Self {
        Graph {
            adj: vec![Vec::new(); n],
            m: 0,
            labels: None,
        }
    }

    /// Builds a graph from an edge list, rejecting loops, out-of-range
    /// endpoints and repeated pairs.
    pub fn from_edges<I>(n: usize, edges: I) -> Result<Self, GraphError>
    where
        I: IntoIterator<Item = (Vertex, Vertex)>,
    {
        let mut g = Graph::empty(n);
        for (a, b) in edges {
            for x in [a, b] {
                if x >= n {
                    return Err(GraphError::OutOfRange { vertex: x, n });
                }
            }
            let e = Edge::try_new(a, b)?;
            if g.has_edge(a, b) {
                return Err(GraphError::DuplicateEdge(e));
            }
            g.insert_unchecked(e);
        }
        Ok(g)
    }

    /// Builds a graph whose vertices are named by `labels`; edges refer to
    /// the names. Vertex `i` is `labels[i]`.
    pub fn from_labeled_edges<S, I>(labels: Vec<S>, edges: I) -> Result<Self, GraphError>
    where
        S: Into<String>,
        I: IntoIterator<Item = (String, String)>,
    {
        let labels: Vec<String> = labels.into_iter().map(Into::into).collect();
        let mut index = BTreeMap::new();
        for (i, l) in labels.iter().enumerate() {
            if index.insert(l.clone(), i).is_some() {
                return Err(GraphError::DuplicateLabel(l.clone()));
            }
        }
        let lookup = |l: &String| {
            index
                .get(l)
                .copied()
                .ok_or_else(|| GraphError::UnknownLabel(l.clone()))
        };
        let mut pairs = Vec::new();
        for (a, b) in edges {
            pairs.push((lookup(&a)?, lookup(&b)?));
        }
        let g = Graph::from_edges(labels.len(), pairs)?;
        g.with_labels(labels)
    }

    pub fn with_labels(mut self, labels: Vec<String>) -> Result<Self, GraphError> {
        if labels.len() != self.n() {
            return Err(GraphError::LabelCount {
                labels: labels.len(),
                n: self.n(),
            });
        }
        self.labels = Some(labels.into());
        Ok(self)
    }

    pub fn n(&self) -> usize {
        self.adj.len()
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn degree(&self, v: Vertex) -> usize {
        self.adj[v].len()
    }

    pub fn degrees(&self) -> Vec<usize> {
        self.adj.iter().map(Vec::len).collect()
    }

    pub fn max_degree(&self) -> usize {
        self.adj.iter().map(Vec::len).max().unwrap_or(0)
    }

    /// Sorted neighbor list of `v`.
    pub fn neighbors(&self, v: Vertex) -> &[Vertex] {
        &self.adj[v]
    }

    pub fn has_edge(&self, a: Vertex, b: Vertex) -> bool {
        a != b && self.adj[a].binary_search(&b).is_ok()
    }

    /// Edges in lexicographic order.
    pub fn edges(&self) -> impl Iterator<Item = Edge> + '_ {
        self.adj.iter().enumerate().flat_map(|(u, ns)| {
            ns.iter()
                .copied()
                .filter(move |&v| v > u)
                .map(move |v| Edge { u, v })
        })
    }

    pub fn edge_list(&self) -> Vec<(Vertex, Vertex)> {
        self.edges().map(Edge::endpoints).collect()
    }

    pub fn label(&self, v: Vertex) -> String {
        match &self.labels {
            Some(l) => l[v].clone(),
            None => v.to_string(),
        }
    }

    pub fn labels(&self) -> Option<&[String]> {
        self.labels.as_deref()
    }

    /// Index of the vertex carrying `label`.
    pub fn vertex(&self, label: &str) -> Option<Vertex> {
        self.labels.as_ref()?.iter().position(|l| l == label)
    }

    /// Dense adjacency matrix, row-major `n * n`.
    pub fn adjacency_matrix(&self) -> Vec<bool> {
        let n = self.n();
        let mut a = vec![false; n * n];
        for e in self.edges() {
            a[e.u * n + e.v] = true;
            a[e.v * n + e.u] = true;
        }
        a
    }

    /// Returns a copy with `extra` isolated vertices appended.
    pub fn padded(&self, extra: usize) -> Graph {
        let mut g = Graph {
            adj: self.adj.clone(),
            m: self.m,
            labels: None,
        };
        g.adj.extend(std::iter::repeat_with(Vec::new).take(extra));
        g
    }

    /// Applies one edit, producing a new graph.
    pub fn apply_edit(&self, op: EdgeOp) -> Result<Graph, GraphError> {
        let mut g = self.clone();
        g.apply_in_place(op)?;
        Ok(g)
    }

    pub(crate) fn apply_in_place(&mut self, op: EdgeOp) -> Result<(), GraphError> {
        let e = op.edge();
        let n = self.n();
        if e.v >= n {
            return Err(GraphError::OutOfRange { vertex: e.v, n });
        }
        match op.kind() {
            OpKind::Add => {
                if self.has_edge(e.u, e.v) {
                    return Err(GraphError::EdgeExists(e));
                }
                self.insert_unchecked(e);
            }
            OpKind::Remove => {
                if !self.has_edge(e.u, e.v) {
                    return Err(GraphError::EdgeMissing(e));
                }
                for (x, y) in [(e.u, e.v), (e.v, e.u)] {
                    let pos = self.adj[x].binary_search(&y).expect("symmetric adjacency");
                    self.adj[x].remove(pos);
                }
                self.m -= 1;
            }
        }
        Ok(())
    }

    fn insert_unchecked(&mut self, e: Edge) {
        for (x, y) in [(e.u, e.v), (e.v, e.u)] {
            let pos = self.adj[x].binary_search(&y).unwrap_err();
            self.adj[x].insert(pos, y);
        }
        self.m += 1;
    }

    /// Connected components, each sorted, ordered by smallest vertex.
    pub fn components(&self) -> Vec<Vec<Vertex>> {
        let n = self.n();
        let mut seen = vec![false; n];
        let mut out = Vec::new();
        let mut stack = Vec::new();
        for s in 0..n {
            if seen[s] {
                continue;
            }
            seen[s] = true;
            stack.push(s);
            let mut comp = Vec::new();
            while let Some(x) = stack.pop() {
                comp.push(x);
                for &y in &self.adj[x] {
                    if !seen[y] {
                        seen[y] = true;
                        stack.push(y);
                    }
                }
            }
            comp.sort_unstable();
            out.push(comp);
        }
        out
    }

    /// Component index for every vertex, numbered as in [`Graph::components`].
    pub fn component_ids(&self) -> Vec<usize> {
        let mut id = vec![0; self.n()];
        for (c, comp) in self.components().into_iter().enumerate() {
            for v in comp {
                id[v] = c;
            }
        }
        id
    }

    /// Subgraph induced by `vertices`. Vertex `i` of the result is
    /// `vertices[i]` of `self`; the second value is that map.
    pub fn induced(&self, vertices: &[Vertex]) -> (Graph, Vec<Vertex>) {
        let mut local = vec![usize::MAX; self.n()];
        for (i, &v) in vertices.iter().enumerate() {
            local[v] = i;
        }
        let mut g = Graph::empty(vertices.len());
        for (i, &v) in vertices.iter().enumerate() {
            for &w in &self.adj[v] {
                let j = local[w];
                if j != usize::MAX && i < j {
                    g.insert_unchecked(Edge::new(i, j));
                }
            }
        }
        if let Some(l) = &self.labels {
            g.labels = Some(vertices.iter().map(|&v| l[v].clone()).collect());
        }
        (g, vertices.to_vec())
    }

    /// Degree -> number of vertices with that degree.
    pub fn degree_histogram(&self) -> BTreeMap<usize, usize> {
        let mut h = BTreeMap::new();
        for ns in &self.adj {
            *h.entry(ns.len()).or_insert(0) += 1;
        }
        h
    }

    pub fn count_degree(&self, d: usize) -> usize {
        self.adj.iter().filter(|ns| ns.len() == d).count()
    }
}

impl PartialEq for Graph {
    fn eq(&self, other: &Self) -> bool {
        self.adj == other.adj
    }
}

impl Eq for Graph {}

impl fmt::Debug for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Graph")
            .field("n", &self.n())
            .field("edges", &self.edge_list())
            .finish()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn builds_triangle_and_path() {
        let c3 = Graph::from_edges(3, [(0, 1), (1, 2), (0, 2)]).unwrap();
        assert_eq!(c3.m(), 3);
        assert!((0..3).all(|v| c3.degree(v) == 2));

        let p4 = Graph::from_edges(4, [(0, 1), (1, 2), (2, 3)]).unwrap();
        assert_eq!(p4.degrees(), vec![1, 2, 2, 1]);
        assert_eq!(p4.neighbors(1), &[0, 2]);
    }

    #[test]
    fn rejects_bad_input() {
        assert_eq!(Graph::from_edges(3, [(0, 0)]), Err(GraphError::SelfLoop(0)));
        assert_eq!(
            Graph::from_edges(3, [(0, 3)]),
            Err(GraphError::OutOfRange { vertex: 3, n: 3 })
        );
        assert_eq!(
            Graph::from_edges(3, [(0, 1), (1, 0)]),
            Err(GraphError::DuplicateEdge(Edge::new(0, 1)))
        );
    }

    #[test]
    fn edits_and_errors() {
        let p3 = Graph::from_edges(3, [(0, 1), (1, 2)]).unwrap();
        let c3 = p3.apply_edit(EdgeOp::add(0, 2)).unwrap();
        assert_eq!(c3, Graph::from_edges(3, [(0, 1), (1, 2), (0, 2)]).unwrap());
        assert_eq!(c3.apply_edit(EdgeOp::remove(0, 2)).unwrap(), p3);
        assert_eq!(
            c3.apply_edit(EdgeOp::add(0, 1)),
            Err(GraphError::EdgeExists(Edge::new(0, 1)))
        );
        assert_eq!(
            p3.apply_edit(EdgeOp::remove(0, 2)),
            Err(GraphError::EdgeMissing(Edge::new(0, 2)))
        );
    }

    #[test]
    fn labels_and_induced_subgraphs() {
        let g = Graph::from_labeled_edges(
            vec!["a", "b", "c", "d"],
            [("a", "b"), ("b", "c"), ("c", "d")].map(|(x, y)| (x.to_string(), y.to_string())),
        )
        .unwrap();
        assert_eq!(g.vertex("c"), Some(2));
        let (sub, map) = g.induced(&[1, 2, 3]);
        assert_eq!(sub.edge_list(), vec![(0, 1), (1, 2)]);
        assert_eq!(sub.label(0), "b");
        assert_eq!(map, vec![1, 2, 3]);
    }

    #[test]
    fn components_are_sorted() {
        let g = Graph::from_edges(6, [(4, 5), (0, 2)]).unwrap();
        assert_eq!(
            g.components(),
            vec![vec![0, 2], vec![1], vec![3], vec![4, 5]]
        );
    }
}
