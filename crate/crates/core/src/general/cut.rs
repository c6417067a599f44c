use crate::graph::{apply_script, separation_vertices, EdgeOp, EditScript, Graph, Vertex};

/// A graph split into a top-degree stratum and the rest by edge removals
/// alone, with no edges between the two parts.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DecompositionSplit {
    /// Maximum degree of the input.
    pub delta: usize,
    /// Separation count of the input.
    pub k: usize,
    /// The input after `cut_script`.
    pub graph: Graph,
    /// Top-degree vertices and the separation vertices next to them, sorted.
    pub top: Vec<Vertex>,
    /// Every other vertex, sorted.
    pub rest: Vec<Vertex>,
    /// Removals only.
    pub cut_script: EditScript,
    /// `k(Δ - 1)`: the most separation vertices the rest can carry.
    pub new_separation_bound: usize,
}

impl DecompositionSplit {
    /// Induced top stratum and its vertex map into the input.
    pub fn g_top(&self) -> (Graph, Vec<Vertex>) {
        self.graph.induced(&self.top)
    }

    /// Induced remainder and its vertex map into the input.
    pub fn g_rest(&self) -> (Graph, Vec<Vertex>) {
        self.graph.induced(&self.rest)
    }

    /// Checks the five structural guarantees of the split, returning the
    /// first one that fails.
    pub fn check(&self) -> Result<(), SplitViolation> {
        let g = &self.graph;
        let in_top = {
            let mut t = vec![false; g.n()];
            for &v in &self.top {
                t[v] = true;
            }
            t
        };
        if let Some(e) = g.edges().find(|e| in_top[e.lo()] != in_top[e.hi()]) {
            return Err(SplitViolation::CrossingEdge(e.lo(), e.hi()));
        }
        let (top, top_map) = self.g_top();
        let top_sep = separation_vertices(&top);
        if let Some(v) = (0..top.n()).find(|&v| top.degree(v) < self.delta && !top_sep.contains(v))
        {
            return Err(SplitViolation::DeficientNotSeparation(top_map[v]));
        }
        if top_sep.k > self.k {
            return Err(SplitViolation::TopSeparation {
                found: top_sep.k,
                bound: self.k,
            });
        }
        let (rest, rest_map) = self.g_rest();
        if let Some(v) = (0..rest.n()).find(|&v| self.delta > 0 && rest.degree(v) >= self.delta) {
            return Err(SplitViolation::RestDegree(rest_map[v]));
        }
        let rest_sep = separation_vertices(&rest).k;
        if rest_sep > self.new_separation_bound {
            return Err(SplitViolation::RestSeparation {
                found: rest_sep,
                bound: self.new_separation_bound,
            });
        }
        let cost_bound = self.k * self.delta.saturating_sub(2);
        if self.cut_script.len() > cost_bound {
            return Err(SplitViolation::CutCost {
                found: self.cut_script.len(),
                bound: cost_bound,
            });
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SplitViolation {
    CrossingEdge(Vertex, Vertex),
    /// A top vertex below the maximum degree that is not a separation vertex.
    DeficientNotSeparation(Vertex),
    TopSeparation {
        found: usize,
        bound: usize,
    },
    /// A remainder vertex still at the maximum degree.
    RestDegree(Vertex),
    RestSeparation {
        found: usize,
        bound: usize,
    },
    CutCost {
        found: usize,
        bound: usize,
    },
}

/// Removes every edge `(u, v)` where `v` is a separation vertex next to a
/// top-degree vertex and `u` is neither such a vertex nor of top degree.
pub fn cut_top_degree(g: &Graph) -> DecompositionSplit {
    let delta = g.max_degree();
    let report = separation_vertices(g);
    let near_top: Vec<bool> = (0..g.n())
        .map(|v| report.contains(v) && g.neighbors(v).iter().any(|&w| g.degree(w) == delta))
        .collect();
    let cut_script: EditScript = g
        .edges()
        .filter(|e| {
            let (a, b) = e.endpoints();
            let cuts = |u: Vertex, v: Vertex| near_top[v] && !near_top[u] && g.degree(u) < delta;
            cuts(a, b) || cuts(b, a)
        })
        .map(|e| EdgeOp::remove(e.lo(), e.hi()))
        .collect();
    let graph = apply_script(g, &cut_script).expect("cut removes existing edges");
    let (top, rest): (Vec<Vertex>, Vec<Vertex>) =
        (0..g.n()).partition(|&v| delta > 0 && (g.degree(v) == delta || near_top[v]));
    DecompositionSplit {
        delta,
        k: report.k,
        graph,
        top,
        rest,
        cut_script,
        new_separation_bound: report.k * delta.saturating_sub(1),
    }
}
