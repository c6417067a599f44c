use std::fmt;

use thiserror::Error;

use super::{Edge, Graph, GraphError, Vertex};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum OpKind {
    Add,
    Remove,
}

/// A single edge edit.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct EdgeOp {
    kind: OpKind,
    edge: Edge,
}

impl EdgeOp {
    pub fn new(kind: OpKind, edge: Edge) -> Self {
        EdgeOp { kind, edge }
    }

    pub fn add(a: Vertex, b: Vertex) -> Self {
        EdgeOp::new(OpKind::Add, Edge::new(a, b))
    }

    pub fn remove(a: Vertex, b: Vertex) -> Self {
        EdgeOp::new(OpKind::Remove, Edge::new(a, b))
    }

    pub fn kind(self) -> OpKind {
        self.kind
    }

    pub fn edge(self) -> Edge {
        self.edge
    }

    pub fn inverse(self) -> Self {
        let kind = match self.kind {
            OpKind::Add => OpKind::Remove,
            OpKind::Remove => OpKind::Add,
        };
        EdgeOp { kind, ..self }
    }
}

impl fmt::Display for EdgeOp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let sign = match self.kind {
            OpKind::Add => '+',
            OpKind::Remove => '-',
        };
        write!(f, "{} {} {}", sign, self.edge.lo(), self.edge.hi())
    }
}

/// Ordered, replayable list of edge edits. Its length is the edit cost.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct EditScript {
    ops: Vec<EdgeOp>,
}

impl EditScript {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn ops(&self) -> &[EdgeOp] {
        &self.ops
    }

    pub fn len(&self) -> usize {
        self.ops.len()
    }

    pub fn is_empty(&self) -> bool {
        self.ops.is_empty()
    }

    /// Number of edge operations; an upper bound on the distance between
    /// the start and end graphs.
    pub fn cost(&self) -> usize {
        self.ops.len()
    }

    pub fn push(&mut self, op: EdgeOp) {
        self.ops.push(op);
    }

    pub fn extend(&mut self, other: &EditScript) {
        self.ops.extend_from_slice(&other.ops);
    }

    pub fn iter(&self) -> impl Iterator<Item = &EdgeOp> {
        self.ops.iter()
    }

    /// The script that undoes this one.
    pub fn inverse(&self) -> EditScript {
        EditScript {
            ops: self.ops.iter().rev().map(|op| op.inverse()).collect(),
        }
    }

    /// Rewrites vertex `i` as `map[i]`, lifting a script on an induced
    /// subgraph back to its parent graph.
    pub fn relabeled(&self, map: &[Vertex]) -> EditScript {
        EditScript {
            ops: self
                .ops
                .iter()
                .map(|op| {
                    let (a, b) = op.edge().endpoints();
                    EdgeOp::new(op.kind(), Edge::new(map[a], map[b]))
                })
                .collect(),
        }
    }

    pub fn count(&self, kind: OpKind) -> usize {
        self.ops.iter().filter(|op| op.kind() == kind).count()
    }
}

impl FromIterator<EdgeOp> for EditScript {
    fn from_iter<T: IntoIterator<Item = EdgeOp>>(iter: T) -> Self {
        EditScript {
            ops: iter.into_iter().collect(),
        }
    }
}

impl<'a> IntoIterator for &'a EditScript {
    type Item = &'a EdgeOp;
    type IntoIter = std::slice::Iter<'a, EdgeOp>;

    fn into_iter(self) -> Self::IntoIter {
        self.ops.iter()
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("op {index} ({op}): {source}")]
pub struct ScriptError {
    /// 1-based position of the failing op.
    pub index: usize,
    pub op: EdgeOp,
    #[source]
    pub source: GraphError,
}

/// Replays `script` on `g` from top to bottom.
pub fn apply_script(g: &Graph, script: &EditScript) -> Result<Graph, ScriptError> {
    let mut out = g.clone();
    for (i, &op) in script.iter().enumerate() {
        out.apply_in_place(op).map_err(|source| ScriptError {
            index: i + 1,
            op,
            source,
        })?;
    }
    Ok(out)
}

/// Mutable graph that records every edit it performs.
#[derive(Debug, Clone)]
pub(crate) struct Editor {
    graph: Graph,
    script: EditScript,
}

impl Editor {
    pub fn new(graph: Graph) -> Self {
        Editor {
            graph,
            script: EditScript::new(),
        }
    }

    pub fn graph(&self) -> &Graph {
        &self.graph
    }

    pub fn ops_done(&self) -> usize {
        self.script.len()
    }

    pub fn apply(&mut self, op: EdgeOp) -> Result<(), GraphError> {
        self.graph.apply_in_place(op)?;
        self.script.push(op);
        Ok(())
    }

    pub fn add(&mut self, a: Vertex, b: Vertex) -> Result<(), GraphError> {
        self.apply(EdgeOp::add(a, b))
    }

    pub fn remove(&mut self, a: Vertex, b: Vertex) -> Result<(), GraphError> {
        self.apply(EdgeOp::remove(a, b))
    }

    /// Applies `ops` without recording them, evaluates `f`, then restores
    /// the graph.
    pub fn trial<R>(
        &mut self,
        ops: &[EdgeOp],
        f: impl FnOnce(&Graph) -> R,
    ) -> Result<R, GraphError> {
        for (i, &op) in ops.iter().enumerate() {
            if let Err(e) = self.graph.apply_in_place(op) {
                self.undo(&ops[..i]);
                return Err(e);
            }
        }
        let r = f(&self.graph);
        self.undo(ops);
        Ok(r)
    }

    fn undo(&mut self, ops: &[EdgeOp]) {
        for &op in ops.iter().rev() {
            self.graph
                .apply_in_place(op.inverse())
                .expect("inverse of an applied op is valid");
        }
    }

    /// Joins vertices of `pool(graph)` pairwise: repeatedly adds the
    /// lexicographically first non-adjacent pair, re-evaluating the pool
    /// after every add. On return the pool is a clique.
    pub fn saturate(&mut self, pool: impl Fn(&Graph) -> Vec<Vertex>) -> Result<(), GraphError> {
        loop {
            let vs = pool(&self.graph);
            let pair = vs.iter().enumerate().find_map(|(i, &a)| {
                vs[i + 1..]
                    .iter()
                    .find(|&&b| !self.graph.has_edge(a, b))
                    .map(|&b| (a, b))
            });
            match pair {
                Some((a, b)) => self.add(a, b)?,
                None => return Ok(()),
            }
        }
    }

    pub fn apply_all(&mut self, script: &EditScript) -> Result<(), GraphError> {
        for &op in script {
            self.apply(op)?;
        }
        Ok(())
    }

    pub fn into_parts(self) -> (Graph, EditScript) {
        (self.graph, self.script)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c3() -> Graph {
        Graph::from_edges(3, [(0, 1), (1, 2), (0, 2)]).unwrap()
    }

    #[test]
    fn replays_in_order() {
        let p3 = Graph::from_edges(3, [(0, 1), (1, 2)]).unwrap();
        let s: EditScript = [EdgeOp::add(0, 2)].into_iter().collect();
        assert_eq!(apply_script(&p3, &s).unwrap(), c3());
        assert_eq!(apply_script(&p3, &EditScript::new()).unwrap(), p3);
    }

    #[test]
    fn reports_failing_index() {
        let s: EditScript = [EdgeOp::remove(0, 2), EdgeOp::remove(0, 2)]
            .into_iter()
            .collect();
        let err = apply_script(&c3(), &s).unwrap_err();
        assert_eq!(err.index, 2);
        assert_eq!(err.source, GraphError::EdgeMissing(Edge::new(0, 2)));
    }

    #[test]
    fn inverse_restores_start() {
        let g = c3();
        let s: EditScript = [
            EdgeOp::remove(0, 1),
            EdgeOp::add(0, 1),
            EdgeOp::remove(1, 2),
        ]
        .into_iter()
        .collect();
        let h = apply_script(&g, &s).unwrap();
        assert_eq!(apply_script(&h, &s.inverse()).unwrap(), g);
    }

    #[test]
    fn display_format() {
        assert_eq!(EdgeOp::add(5, 2).to_string(), "+ 2 5");
        assert_eq!(EdgeOp::remove(0, 9).to_string(), "- 0 9");
    }
}
