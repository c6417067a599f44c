//! Regularization of graphs with maximum degree at most 3.
//!
//! The pipeline runs in four phases on a recording [`Editor`]:
//!
//! 1. degree-1 separation vertices are joined in pairs, and a single
//!    leftover is attached elsewhere by moving one edge;
//! 2. runs of non-separation degree-2 vertices hanging between two
//!    separation vertices are peeled off into their own cycle;
//! 3. the remaining degree-2 separation vertices are joined in pairs;
//! 4. the at most two survivors are absorbed by rewiring one far edge.

use std::collections::BTreeSet;
use std::fmt;

use itertools::Itertools;
use thiserror::Error;

use crate::graph::{
    certify_regular_union, is_separation_vertex, separation_vertices, Edge, EdgeOp, EditScript,
    Editor, Graph, GraphError, RegularityCertificate, Vertex,
};

/// Components with fewer edges than this are repaired by exhaustive search.
pub const SMALL_COMPONENT_EDGES: usize = 8;

/// Longest script the exhaustive fallback will try.
pub const EXHAUSTIVE_MAX_OPS: usize = 5;

/// Largest component the exhaustive fallback will enumerate.
const EXHAUSTIVE_MAX_VERTICES: usize = 10;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Deg3Error {
    #[error("precondition violated: {0}")]
    PreconditionViolated(String),
    #[error("maximum degree {0} exceeds 3")]
    MaxDegreeExceeded(usize),
    #[error("edges {0} and {1} share a vertex")]
    SharedVertex(Edge, Edge),
    #[error("both re-pairings of {0} and {1} would duplicate an edge")]
    WouldCreateParallelEdge(Edge, Edge),
    #[error("edge {0} not present")]
    EdgeMissing(Edge),
    #[error("script of length {cost} exceeds the bound {bound}")]
    BoundExceeded { cost: usize, bound: usize },
    #[error("no repair found: {0}")]
    Stuck(String),
    #[error(transparent)]
    Graph(#[from] GraphError),
}

/// Something the pipeline did that is worth reporting beyond the script.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Deg3Note {
    /// Peeling left the two path vertices as a `K2` component.
    PathLeftAsK2(Vertex, Vertex),
    /// Peeling left a one-vertex path isolated.
    PathVertexIsolated(Vertex),
    /// A lone degree-2 vertex was cut loose from its component.
    VertexIsolated(Vertex),
    /// A lone degree-2 vertex was closed into a triangle with its
    /// neighbors.
    TriangleCut(Vertex),
    /// The residual component was repaired by exhaustive search.
    ExhaustiveRepair { component_size: usize, ops: usize },
}

impl fmt::Display for Deg3Note {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Deg3Note::PathLeftAsK2(a, b) => write!(f, "peeled path ({a}, {b}) left as K2"),
            Deg3Note::PathVertexIsolated(v) => write!(f, "peeled path vertex {v} left isolated"),
            Deg3Note::VertexIsolated(v) => write!(f, "degree-2 vertex {v} isolated"),
            Deg3Note::TriangleCut(v) => write!(f, "triangle at degree-2 vertex {v} cut off"),
            Deg3Note::ExhaustiveRepair {
                component_size,
                ops,
            } => write!(
                f,
                "component of {component_size} vertices repaired by search in {ops} ops"
            ),
        }
    }
}

/// Bookkeeping collected while regularizing.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Deg3Stats {
    /// Separation count of the input.
    pub k: usize,
    /// Degree-1 separation vertices of the input.
    pub k1: usize,
    /// Degree-3 vertex count of the input, halved (rounded down).
    pub m: usize,
    /// Peeled `(u, u')` pairs, in processing order.
    pub peeled: Vec<(Vertex, Vertex)>,
    /// Separation count just before and just after peeling.
    pub separation_before_peel: usize,
    pub separation_after_peel: usize,
    /// Degree-1 separation vertices left after the pairing pass (0 or 1).
    pub leaves_after_pairing: usize,
    /// Ops spent per phase: leaves, peeling, pairing, residual.
    pub phase_ops: [usize; 4],
    pub notes: Vec<Deg3Note>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Deg3Outcome {
    pub script: EditScript,
    pub claimed_bound: usize,
    pub final_graph: Graph,
    pub certificate: RegularityCertificate,
    pub stats: Deg3Stats,
}

/// Degree-preserving swap: removes `e1 = (a, b)` and `e2 = (c, d)`, then
/// adds `(a, c)` and `(b, d)`, or `(a, d)` and `(b, c)` when the first
/// pairing would duplicate an edge.
pub fn edge_swap(
    g: &Graph,
    e1: (Vertex, Vertex),
    e2: (Vertex, Vertex),
) -> Result<EditScript, Deg3Error> {
    let ((a, b), (c, d)) = (e1, e2);
    let (f1, f2) = (Edge::try_new(a, b)?, Edge::try_new(c, d)?);
    if f1.shares_vertex(f2) {
        return Err(Deg3Error::SharedVertex(f1, f2));
    }
    for f in [f1, f2] {
        if f.hi() >= g.n() || !g.has_edge(f.lo(), f.hi()) {
            return Err(Deg3Error::EdgeMissing(f));
        }
    }
    let (x, y) = [((a, c), (b, d)), ((a, d), (b, c))]
        .into_iter()
        .find(|&((p, q), (r, s))| !g.has_edge(p, q) && !g.has_edge(r, s))
        .ok_or(Deg3Error::WouldCreateParallelEdge(f1, f2))?;
    Ok([
        EdgeOp::remove(a, b),
        EdgeOp::remove(c, d),
        EdgeOp::add(x.0, x.1),
        EdgeOp::add(y.0, y.1),
    ]
    .into_iter()
    .collect())
}

/// Repairs a graph whose vertices all have degree 2 or 3, at most two of
/// them degree 2.
///
/// The bound is 4, except with a single degree-2 vertex whose neighbors are
/// adjacent and cannot be split off as a triangle, where isolating the
/// vertex and repairing its neighbors may take 5.
pub fn fix_two_deg2(g: &Graph) -> Result<Deg3Outcome, Deg3Error> {
    if let Some(v) = (0..g.n()).find(|&v| !(2..=3).contains(&g.degree(v))) {
        return Err(Deg3Error::PreconditionViolated(format!(
            "vertex {v} has degree {}",
            g.degree(v)
        )));
    }
    let twos = g.count_degree(2);
    if twos > 2 {
        return Err(Deg3Error::PreconditionViolated(format!(
            "{twos} vertices have degree 2"
        )));
    }
    let bound = if twos == 1 { 5 } else { 4 };
    let mut run = Run::new(g);
    run.residual()?;
    run.finish(bound)
}

/// Repairs a graph of maximum degree 3 with degree-2 vertices but no
/// degree-1 vertices. Bound `3k + 4`.
pub fn fix_deg2_many(g: &Graph) -> Result<Deg3Outcome, Deg3Error> {
    let d = g.max_degree();
    if d > 3 {
        return Err(Deg3Error::MaxDegreeExceeded(d));
    }
    if let Some(v) = (0..g.n()).find(|&v| g.degree(v) == 1) {
        return Err(Deg3Error::PreconditionViolated(format!(
            "vertex {v} has degree 1"
        )));
    }
    if g.count_degree(3) < 2 {
        return Err(Deg3Error::PreconditionViolated(
            "fewer than two degree-3 vertices".into(),
        ));
    }
    if g.count_degree(2) == 0 {
        return Err(Deg3Error::PreconditionViolated("no degree-2 vertex".into()));
    }
    let mut run = Run::new(g);
    let bound = 3 * run.stats.k + 4;
    run.peel()?;
    run.pair_degree2()?;
    run.residual()?;
    run.finish(bound)
}

/// Repairs any graph of maximum degree at most 3. Bound `4k + 9`.
pub fn regularize_maxdeg3(g: &Graph) -> Result<Deg3Outcome, Deg3Error> {
    let d = g.max_degree();
    if d > 3 {
        return Err(Deg3Error::MaxDegreeExceeded(d));
    }
    let mut run = Run::new(g);
    let bound = 4 * run.stats.k + 9;
    run.pair_leaves()?;
    run.peel()?;
    run.pair_degree2()?;
    run.residual()?;
    run.finish(bound)
}

/// Separation vertices of degree `d`, ascending.
fn separation_of_degree(g: &Graph, d: usize) -> Vec<Vertex> {
    (0..g.n())
        .filter(|&v| g.degree(v) == d && is_separation_vertex(g, v))
        .collect()
}

fn count_separation(g: &Graph, vs: &BTreeSet<Vertex>) -> usize {
    vs.iter().filter(|&&v| is_separation_vertex(g, v)).count()
}

fn closed_neighborhoods(g: &Graph, vs: &[Vertex], into: &mut BTreeSet<Vertex>) {
    for &v in vs {
        into.insert(v);
        into.extend(g.neighbors(v).iter().copied());
    }
}

struct Run {
    ed: Editor,
    stats: Deg3Stats,
}

impl Run {
    fn new(g: &Graph) -> Self {
        let report = separation_vertices(g);
        let stats = Deg3Stats {
            k: report.k,
            k1: report
                .separation_set
                .iter()
                .filter(|&&v| g.degree(v) == 1)
                .count(),
            m: g.count_degree(3) / 2,
            ..Deg3Stats::default()
        };
        Run {
            ed: Editor::new(g.clone()),
            stats,
        }
    }

    fn g(&self) -> &Graph {
        self.ed.graph()
    }

    fn finish(self, bound: usize) -> Result<Deg3Outcome, Deg3Error> {
        let (final_graph, script) = self.ed.into_parts();
        let certificate = certify_regular_union(&final_graph);
        if let RegularityCertificate::Irregular(e) = certificate {
            return Err(Deg3Error::Stuck(format!(
                "edge {e} still joins unequal degrees"
            )));
        }
        if script.len() > bound {
            return Err(Deg3Error::BoundExceeded {
                cost: script.len(),
                bound,
            });
        }
        Ok(Deg3Outcome {
            script,
            claimed_bound: bound,
            final_graph,
            certificate,
            stats: self.stats,
        })
    }

    fn pair_leaves(&mut self) -> Result<(), Deg3Error> {
        let start = self.ed.ops_done();
        self.ed.saturate(|g| separation_of_degree(g, 1))?;
        let left = separation_of_degree(self.g(), 1);
        self.stats.leaves_after_pairing = left.len();
        match left[..] {
            [] => {}
            [u] => self.attach_leaf(u)?,
            _ => {
                return Err(Deg3Error::Stuck(format!(
                    "{} degree-1 separation vertices survived pairing",
                    left.len()
                )))
            }
        }
        self.stats.phase_ops[0] = self.ed.ops_done() - start;
        Ok(())
    }

    /// Moves an edge `(v, w)` of a degree-3 vertex `v` in the leaf's
    /// component onto the leaf, choosing the move that leaves the fewest
    /// separation vertices, then the smallest `(v, w)`.
    fn attach_leaf(&mut self, u: Vertex) -> Result<(), Deg3Error> {
        let x = self.g().neighbors(u)[0];
        let comp = self.component_of(u);
        let mut best: Option<(isize, Vertex, Vertex)> = None;
        for &v in &comp {
            if self.g().degree(v) != 3 {
                continue;
            }
            let ws: Vec<Vertex> = self
                .g()
                .neighbors(v)
                .iter()
                .copied()
                .filter(|&w| w != u && w != x)
                .collect();
            for w in ws {
                let mut area = BTreeSet::new();
                closed_neighborhoods(self.g(), &[u, v, w], &mut area);
                let ops = [EdgeOp::remove(v, w), EdgeOp::add(u, w)];
                let (after, area) = self.ed.trial(&ops, |h| {
                    let mut area = area.clone();
                    closed_neighborhoods(h, &[u, v, w], &mut area);
                    (count_separation(h, &area), area)
                })?;
                let delta = after as isize - count_separation(self.g(), &area) as isize;
                if best.is_none_or(|(d, _, _)| delta < d) {
                    best = Some((delta, v, w));
                }
            }
        }
        let (_, v, w) =
            best.ok_or_else(|| Deg3Error::Stuck(format!("no degree-3 vertex beside leaf {u}")))?;
        self.ed.remove(v, w)?;
        self.ed.add(u, w)?;
        Ok(())
    }

    fn component_of(&self, s: Vertex) -> Vec<Vertex> {
        let g = self.g();
        let mut seen = vec![false; g.n()];
        let mut stack = vec![s];
        seen[s] = true;
        let mut out = Vec::new();
        while let Some(x) = stack.pop() {
            out.push(x);
            for &y in g.neighbors(x) {
                if !seen[y] {
                    seen[y] = true;
                    stack.push(y);
                }
            }
        }
        out.sort_unstable();
        out
    }

    /// First degree-2 separation vertex with a non-separation degree-2
    /// neighbor, together with that neighbor.
    fn next_peel_start(&self) -> Option<(Vertex, Vertex)> {
        let g = self.g();
        (0..g.n())
            .filter(|&u| g.degree(u) == 2 && is_separation_vertex(g, u))
            .find_map(|u| {
                g.neighbors(u)
                    .iter()
                    .copied()
                    .find(|&v| g.degree(v) == 2 && !is_separation_vertex(g, v))
                    .map(|v| (u, v))
            })
    }

    fn peel(&mut self) -> Result<(), Deg3Error> {
        let start = self.ed.ops_done();
        self.stats.separation_before_peel = separation_vertices(self.g()).k;
        while let Some((u, v)) = self.next_peel_start() {
            let g = self.g();
            let mut path = vec![v];
            let (mut prev, mut cur) = (u, v);
            let u2 = loop {
                let next = *g
                    .neighbors(cur)
                    .iter()
                    .find(|&&y| y != prev)
                    .ok_or_else(|| Deg3Error::Stuck(format!("path dead-ends at {cur}")))?;
                if is_separation_vertex(g, next) {
                    break next;
                }
                if g.degree(next) != 2 || path.len() > g.n() {
                    return Err(Deg3Error::Stuck(format!("path from {u} does not close")));
                }
                path.push(next);
                (prev, cur) = (cur, next);
            };
            let v2 = cur;
            match path.len() {
                1 => {
                    self.ed.remove(u, v)?;
                    self.ed.remove(u2, v)?;
                    self.ed.add(u, u2)?;
                    self.stats.notes.push(Deg3Note::PathVertexIsolated(v));
                }
                2 => {
                    self.ed.remove(u, v)?;
                    self.ed.remove(u2, v2)?;
                    self.ed.add(u, u2)?;
                    self.stats.notes.push(Deg3Note::PathLeftAsK2(v, v2));
                }
                _ => {
                    let swap = edge_swap(self.g(), (u, v), (u2, v2))?;
                    self.ed.apply_all(&swap)?;
                }
            }
            self.stats.peeled.push((u, u2));
        }
        self.stats.separation_after_peel = separation_vertices(self.g()).k;
        self.stats.phase_ops[1] = self.ed.ops_done() - start;
        Ok(())
    }

    fn pair_degree2(&mut self) -> Result<(), Deg3Error> {
        let start = self.ed.ops_done();
        self.ed.saturate(|g| separation_of_degree(g, 2))?;
        self.stats.phase_ops[2] = self.ed.ops_done() - start;
        Ok(())
    }

    fn residual(&mut self) -> Result<(), Deg3Error> {
        let start = self.ed.ops_done();
        let left = separation_of_degree(self.g(), 2);
        match left[..] {
            [] => {}
            [v] => self.single_vertex(v)?,
            [a, b] if !self.g().has_edge(a, b) => self.ed.add(a, b)?,
            [a, b] => self.adjacent_pair(a, b)?,
            _ => {
                return Err(Deg3Error::Stuck(format!(
                    "{} degree-2 separation vertices left after pairing",
                    left.len()
                )))
            }
        }
        self.stats.phase_ops[3] = self.ed.ops_done() - start;
        Ok(())
    }

    fn single_vertex(&mut self, v: Vertex) -> Result<(), Deg3Error> {
        if self.try_small_component(v)? {
            return Ok(());
        }
        let (a, b) = match self.g().neighbors(v) {
            &[a, b] => (a, b),
            _ => unreachable!("degree-2 vertex"),
        };
        if !self.g().has_edge(a, b) {
            self.ed.remove(v, a)?;
            self.ed.remove(v, b)?;
            self.ed.add(a, b)?;
            self.stats.notes.push(Deg3Note::VertexIsolated(v));
            return Ok(());
        }
        let third = |x: Vertex, y: Vertex| {
            self.g()
                .neighbors(x)
                .iter()
                .copied()
                .find(|&z| z != v && z != y)
        };
        if let (Some(a2), Some(b2)) = (third(a, b), third(b, a)) {
            if a2 != b2 && !self.g().has_edge(a2, b2) {
                self.ed.remove(a, a2)?;
                self.ed.remove(b, b2)?;
                self.ed.add(a2, b2)?;
                self.stats.notes.push(Deg3Note::TriangleCut(v));
                return Ok(());
            }
        }
        self.ed.remove(v, a)?;
        self.ed.remove(v, b)?;
        self.stats.notes.push(Deg3Note::VertexIsolated(v));
        self.adjacent_pair(a, b)
    }

    /// Two adjacent degree-2 vertices: remove a far edge `(w1, w2)` between
    /// degree-3 vertices and add `(v1, w1)`, `(v2, w2)`.
    fn adjacent_pair(&mut self, v1: Vertex, v2: Vertex) -> Result<(), Deg3Error> {
        if self.try_small_component(v1)? {
            return Ok(());
        }
        let g = self.g();
        let other = |x: Vertex, y: Vertex| g.neighbors(x).iter().copied().find(|&z| z != y);
        let (u1, u2) = (other(v1, v2), other(v2, v1));
        let labelled: Vec<Vertex> = [Some(v1), Some(v2), u1, u2].into_iter().flatten().collect();
        let ids = g.component_ids();
        let home = ids[v1];
        let cubic = |e: &Edge| g.degree(e.lo()) == 3 && g.degree(e.hi()) == 3;
        let far = |e: &Edge| !labelled.iter().any(|&x| e.touches(x));
        let orient = |e: Edge| -> Option<(Vertex, Vertex)> {
            let (p, q) = e.endpoints();
            [(p, q), (q, p)].into_iter().find(|&(w1, w2)| {
                w1 != v1
                    && w2 != v2
                    && !g.has_edge(v1, w1)
                    && !g.has_edge(v2, w2)
                    && w1 != v2
                    && w2 != v1
            })
        };
        let pick = |same_component: bool, strict: bool| {
            g.edges()
                .filter(|e| cubic(e) && (ids[e.lo()] == home) == same_component)
                .filter(|e| !strict || far(e))
                .find_map(orient)
        };
        let choice = pick(true, true)
            .or_else(|| pick(true, false))
            .or_else(|| pick(false, true))
            .or_else(|| pick(false, false));
        let (w1, w2) = choice
            .ok_or_else(|| Deg3Error::Stuck(format!("no edge to rewire onto ({v1}, {v2})")))?;
        self.ed.remove(w1, w2)?;
        self.ed.add(v1, w1)?;
        self.ed.add(v2, w2)?;
        Ok(())
    }

    /// Repairs the component of `v` by exhaustive search when it is too small
    /// for the constructive rewiring. Returns whether it did.
    fn try_small_component(&mut self, v: Vertex) -> Result<bool, Deg3Error> {
        let comp = self.component_of(v);
        let g = self.g();
        let edges = comp.iter().map(|&x| g.degree(x)).sum::<usize>() / 2;
        if edges >= SMALL_COMPONENT_EDGES {
            return Ok(false);
        }
        if comp.len() > EXHAUSTIVE_MAX_VERTICES {
            return Ok(false);
        }
        let (sub, map) = g.induced(&comp);
        let script = shortest_component_repair(&sub, EXHAUSTIVE_MAX_OPS).ok_or_else(|| {
            Deg3Error::Stuck(format!(
                "no repair within {EXHAUSTIVE_MAX_OPS} ops for component of {v}"
            ))
        })?;
        self.ed.apply_all(&script.relabeled(&map))?;
        self.stats.notes.push(Deg3Note::ExhaustiveRepair {
            component_size: comp.len(),
            ops: script.len(),
        });
        Ok(true)
    }
}

/// Shortest set of pair toggles (at most `max_ops`) that turns `g` into a
/// union of regular graphs, removals listed before additions. Ties go to
/// the lexicographically first set of pairs.
pub fn shortest_component_repair(g: &Graph, max_ops: usize) -> Option<EditScript> {
    let n = g.n();
    let pairs: Vec<(Vertex, Vertex)> = (0..n).tuple_combinations().collect();
    let base = g.adjacency_matrix();
    for size in 0..=max_ops {
        for combo in pairs.iter().combinations(size) {
            let mut adj = base.clone();
            let mut deg = g.degrees();
            for &&(a, b) in &combo {
                let on = !adj[a * n + b];
                adj[a * n + b] = on;
                adj[b * n + a] = on;
                for x in [a, b] {
                    if on {
                        deg[x] += 1;
                    } else {
                        deg[x] -= 1;
                    }
                }
            }
            if pairs
                .iter()
                .all(|&(a, b)| !adj[a * n + b] || deg[a] == deg[b])
            {
                let (removes, adds): (Vec<_>, Vec<_>) =
                    combo.into_iter().partition(|&&(a, b)| g.has_edge(a, b));
                return Some(
                    removes
                        .into_iter()
                        .map(|&(a, b)| EdgeOp::remove(a, b))
                        .chain(adds.into_iter().map(|&(a, b)| EdgeOp::add(a, b)))
                        .collect(),
                );
            }
        }
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::apply_script;
    use crate::metric::exact_distance;

    fn cube() -> Graph {
        Graph::from_edges(
            8,
            (0..8usize)
                .flat_map(|v| (0..3).map(move |b| (v, v ^ (1 << b))))
                .filter(|&(a, b)| a < b),
        )
        .unwrap()
    }

    fn cycle(n: usize) -> Graph {
        Graph::from_edges(n, (0..n).map(|i| (i, (i + 1) % n))).unwrap()
    }

    fn check(g: &Graph, out: &Deg3Outcome) {
        assert!(out.certificate.is_regular());
        assert!(out.script.len() <= out.claimed_bound);
        assert_eq!(apply_script(g, &out.script).unwrap(), out.final_graph);
    }

    #[test]
    fn swap_on_cycle_keeps_degrees() {
        let c8 = cycle(8);
        let s = edge_swap(&c8, (1, 2), (5, 6)).unwrap();
        assert_eq!(s.len(), 4);
        let h = apply_script(&c8, &s).unwrap();
        assert_eq!(h.degrees(), c8.degrees());
        assert!(certify_regular_union(&h).is_regular());
    }

    #[test]
    fn swap_errors() {
        let k4 = Graph::from_edges(4, (0..4).tuple_combinations()).unwrap();
        assert!(matches!(
            edge_swap(&k4, (0, 1), (2, 3)),
            Err(Deg3Error::WouldCreateParallelEdge(..))
        ));
        assert!(matches!(
            edge_swap(&k4, (0, 1), (1, 2)),
            Err(Deg3Error::SharedVertex(..))
        ));
        assert!(matches!(
            edge_swap(&cycle(8), (0, 1), (3, 5)),
            Err(Deg3Error::EdgeMissing(_))
        ));
    }

    #[test]
    fn swap_falls_back_to_second_pairing() {
        // (0,2) exists, so (0,1),(2,3) must re-pair as (0,3),(1,2).
        let g = Graph::from_edges(4, [(0, 1), (2, 3), (0, 2)]).unwrap();
        let s = edge_swap(&g, (0, 1), (2, 3)).unwrap();
        assert_eq!(s.ops()[2..], [EdgeOp::add(0, 3), EdgeOp::add(1, 2)]);
    }

    #[test]
    fn cube_needs_nothing() {
        let out = fix_two_deg2(&cube()).unwrap();
        assert!(out.script.is_empty());
        let out = regularize_maxdeg3(&cube()).unwrap();
        assert!(out.script.is_empty());
    }

    #[test]
    fn cube_minus_edge_adds_it_back() {
        let g = cube().apply_edit(EdgeOp::remove(0, 1)).unwrap();
        let out = fix_two_deg2(&g).unwrap();
        assert_eq!(out.script.ops(), &[EdgeOp::add(0, 1)]);
    }

    #[test]
    fn subdivided_k4_takes_three() {
        // K4 on 0..4 with (0,1) replaced by 0-4-5-1.
        let g = Graph::from_edges(
            6,
            [
                (0, 2),
                (0, 3),
                (1, 2),
                (1, 3),
                (2, 3),
                (0, 4),
                (4, 5),
                (5, 1),
            ],
        )
        .unwrap();
        let out = fix_two_deg2(&g).unwrap();
        check(&g, &out);
        assert_eq!(out.script.len(), 3);
        assert!(
            exact_distance(&g, &out.final_graph, Default::default())
                .unwrap()
                .distance
                <= 3
        );
    }

    #[test]
    fn preconditions() {
        assert!(matches!(
            fix_two_deg2(&cycle(5)),
            Err(Deg3Error::PreconditionViolated(_))
        ));
        assert!(matches!(
            fix_deg2_many(&cycle(12)),
            Err(Deg3Error::PreconditionViolated(_))
        ));
        let star = Graph::from_edges(5, [(0, 1), (0, 2), (0, 3), (0, 4)]).unwrap();
        assert_eq!(
            regularize_maxdeg3(&star),
            Err(Deg3Error::MaxDegreeExceeded(4))
        );
    }

    #[test]
    fn path_is_regularized() {
        let p5 = Graph::from_edges(5, [(0, 1), (1, 2), (2, 3), (3, 4)]).unwrap();
        let out = regularize_maxdeg3(&p5).unwrap();
        check(&p5, &out);
        assert_eq!(out.stats.k1, 2);
        assert_eq!(out.script.ops(), &[EdgeOp::add(0, 4)]);
    }

    #[test]
    fn shortest_repair_matches_distance_for_tiny_graphs() {
        let p3 = Graph::from_edges(3, [(0, 1), (1, 2)]).unwrap();
        assert_eq!(shortest_component_repair(&p3, 4).unwrap().len(), 1);
        let star = Graph::from_edges(4, [(0, 1), (0, 2), (0, 3)]).unwrap();
        let s = shortest_component_repair(&star, 4).unwrap();
        assert!(certify_regular_union(&apply_script(&star, &s).unwrap()).is_regular());
        assert_eq!(s.len(), 2);
    }

    #[test]
    fn twisted_ladder_within_thirteen() {
        for r in [0, 1, 2, 5] {
            let g = crate::generators::figure_family("fig2", Some(r)).unwrap();
            let out = regularize_maxdeg3(&g).unwrap();
            check(&g, &out);
            assert_eq!(out.stats.k, 8);
            assert_eq!(out.script.len(), 13, "repeats {r}: {:?}", out.stats);
        }
    }

    #[test]
    fn two_cycles_take_ten() {
        for n in [8, 9, 15] {
            let g = crate::generators::figure_family("two-cycles", Some(n)).unwrap();
            let out = regularize_maxdeg3(&g).unwrap();
            check(&g, &out);
            assert_eq!(out.script.len(), 10);
            let many = fix_deg2_many(&g).unwrap();
            assert_eq!(many.script, out.script);
            // Two (n-3)-cycles and one cubic component on six vertices.
            let mut sizes: Vec<(usize, usize)> = match &out.certificate {
                RegularityCertificate::Regular(cs) => {
                    cs.iter().map(|c| (c.degree, c.vertices.len())).collect()
                }
                _ => unreachable!(),
            };
            sizes.sort_unstable();
            assert_eq!(sizes, vec![(2, n - 3), (2, n - 3), (3, 6)]);
        }
    }

    #[test]
    fn peel_ladder_within_bound() {
        let g = crate::generators::figure_family("peel", None).unwrap();
        let out = fix_deg2_many(&g).unwrap();
        check(&g, &out);
        assert_eq!(out.claimed_bound, 3 * 2 + 4);
        assert_eq!(out.stats.peeled.len(), 1);
        assert_eq!(out.stats.phase_ops[1], 4);
        assert!(out.stats.separation_after_peel <= out.stats.separation_before_peel);
    }

    #[test]
    fn short_paths_leave_notes() {
        let g = crate::generators::figure_family("peel", Some(2)).unwrap();
        let out = regularize_maxdeg3(&g).unwrap();
        check(&g, &out);
        let (p, q) = (g.vertex("4,0").unwrap(), g.vertex("4,1").unwrap());
        assert!(out.stats.notes.contains(&Deg3Note::PathLeftAsK2(p, q)));

        // Close the rows through a single middle vertex instead.
        let base = crate::generators::figure_family("peel", Some(1)).unwrap();
        let (u, w) = (base.vertex("3,0").unwrap(), base.vertex("3,1").unwrap());
        let z = base.n();
        let g = apply_script(
            &base.padded(1),
            &[EdgeOp::remove(u, w), EdgeOp::add(u, z), EdgeOp::add(w, z)]
                .into_iter()
                .collect(),
        )
        .unwrap();
        let out = regularize_maxdeg3(&g).unwrap();
        check(&g, &out);
        assert!(out.stats.notes.contains(&Deg3Note::PathVertexIsolated(z)));
    }

    #[test]
    fn single_degree2_vertex_cases() {
        // Degree-2 vertex 0 with non-adjacent neighbours in a cubic frame.
        let g = Graph::from_edges(
            11,
            [
                (0, 1),
                (0, 2),
                (1, 3),
                (1, 4),
                (2, 5),
                (2, 6),
                (3, 4),
                (3, 7),
                (4, 8),
                (5, 6),
                (5, 9),
                (6, 10),
                (7, 8),
                (7, 9),
                (8, 10),
                (9, 10),
            ],
        )
        .unwrap();
        assert_eq!(g.count_degree(2), 1);
        let out = fix_two_deg2(&g).unwrap();
        check(&g, &out);
        assert_eq!(out.script.len(), 3);
        assert!(out.stats.notes.contains(&Deg3Note::VertexIsolated(0)));
    }

    fn random_maxdeg3(seed: u64, n: usize) -> Graph {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
        let mut g = Graph::empty(n);
        for _ in 0..3 * n {
            let (a, b) = (rng.gen_range(0..n), rng.gen_range(0..n));
            if a != b && !g.has_edge(a, b) && g.degree(a) < 3 && g.degree(b) < 3 {
                g = g.apply_edit(EdgeOp::add(a, b)).unwrap();
            }
        }
        g
    }

    #[test]
    fn small_instances_agree_with_exact_distance() {
        for seed in 0..300 {
            let n = 2 + (seed as usize % 7);
            let g = random_maxdeg3(seed, n);
            let out = regularize_maxdeg3(&g).unwrap();
            check(&g, &out);
            let d = exact_distance(&g, &out.final_graph, Default::default()).unwrap();
            assert!(d.exact && d.distance <= out.script.len());
        }
    }

    proptest::proptest! {
        #[test]
        fn regularize_contract(seed in 0u64..10_000, n in 1usize..40) {
            let g = random_maxdeg3(seed, n);
            let out = regularize_maxdeg3(&g).unwrap();
            proptest::prop_assert!(out.certificate.is_regular());
            proptest::prop_assert!(out.script.len() <= 4 * out.stats.k + 9);
            proptest::prop_assert_eq!(apply_script(&g, &out.script).unwrap(), out.final_graph.clone());
            proptest::prop_assert!(out.stats.leaves_after_pairing <= 1);
            proptest::prop_assert!(out.stats.separation_after_peel <= out.stats.separation_before_peel);
        }

        #[test]
        fn swap_preserves_degrees(seed in 0u64..10_000, n in 4usize..30) {
            let g = random_maxdeg3(seed, n);
            let edges: Vec<Edge> = g.edges().collect();
            for (e1, e2) in edges.iter().tuple_combinations().take(40) {
                if let Ok(s) = edge_swap(&g, e1.endpoints(), e2.endpoints()) {
                    let h = apply_script(&g, &s).unwrap();
                    proptest::prop_assert_eq!(h.degrees(), g.degrees());
                }
            }
        }
    }
}
