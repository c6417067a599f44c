use super::zone::{find_distant_edges, rewires_needed, ExclusionZone};
use super::GeneralError;
use crate::graph::{separation_vertices, Edge, EditScript, Editor, Graph, Vertex};

/// Vertex count that guarantees enough far edges when lifting deficient
/// vertices: `2Δ + Δ² + Δ³`.
pub fn promote_min_vertices(delta: usize) -> usize {
    2 * delta + delta.pow(2) + delta.pow(3)
}

/// Vertex count that guarantees enough far edges when finishing:
/// `Δ + Δ² + Δ³ + 2`.
pub fn finish_min_vertices(delta: usize) -> usize {
    delta + delta.pow(2) + delta.pow(3) + 2
}

fn below(g: &Graph, delta: usize) -> Vec<Vertex> {
    (0..g.n()).filter(|&v| g.degree(v) < delta).collect()
}

fn require_size(g: &Graph, need: usize, enforce: bool) -> Result<(), GeneralError> {
    if enforce && g.n() < need {
        return Err(GeneralError::TooFewVertices { have: g.n(), need });
    }
    Ok(())
}

/// First edge, in lexicographic order, between two degree-`delta` vertices
/// that can be oriented as `(a, b)` with `(x, a)` and `(y, b)` both absent.
/// Pass `x == y` to wire both ends to one vertex.
fn nearest_usable_edge(g: &Graph, delta: usize, x: Vertex, y: Vertex) -> Option<(Vertex, Vertex)> {
    g.edges()
        .filter(|e| g.degree(e.lo()) == delta && g.degree(e.hi()) == delta)
        .filter(|e| !e.touches(x) && !e.touches(y))
        .find_map(|e| {
            let (p, q) = e.endpoints();
            [(p, q), (q, p)]
                .into_iter()
                .find(|&(a, b)| !g.has_edge(x, a) && !g.has_edge(y, b))
        })
}

/// Lifts every vertex below the maximum degree `Δ` to degree `Δ` or `Δ - 1`
/// without changing any degree-`Δ` vertex.
///
/// Deficient vertices are first joined pairwise until they form a clique.
/// Each survivor of degree `d` then takes `⌊(Δ - d)/2⌋` far edges `(a, b)`:
/// the edge is removed and `(v, a)`, `(v, b)` added.
pub fn promote_to_near_regular(g: &Graph) -> Result<EditScript, GeneralError> {
    promote(g, true)
}

pub(crate) fn promote(g: &Graph, enforce_size: bool) -> Result<EditScript, GeneralError> {
    let delta = g.max_degree();
    let report = separation_vertices(g);
    if let Some(v) = below(g, delta).into_iter().find(|&v| !report.contains(v)) {
        return Err(GeneralError::PreconditionViolated(format!(
            "vertex {v} has degree {} < {delta} but is not a separation vertex",
            g.degree(v)
        )));
    }
    let mut ed = Editor::new(g.clone());
    ed.saturate(|h| below(h, delta))?;
    let v0 = below(ed.graph(), delta);
    let jobs: Vec<(Vertex, usize)> = v0
        .iter()
        .map(|&v| (v, rewires_needed(ed.graph().degree(v), delta)))
        .collect();
    let total: usize = jobs.iter().map(|&(_, l)| l).sum();
    if total == 0 {
        return Ok(ed.into_parts().1);
    }
    require_size(g, promote_min_vertices(delta), enforce_size)?;
    let zone = ExclusionZone::around(ed.graph(), &v0);
    match find_distant_edges(ed.graph(), &zone, total) {
        Ok(edges) => {
            let mut far = edges.into_iter();
            for &(v, l) in &jobs {
                for e in far.by_ref().take(l) {
                    rewire(&mut ed, e, v, v)?;
                }
            }
        }
        Err(GeneralError::NotEnoughDistantEdges { .. }) => {
            for &(v, l) in &jobs {
                for _ in 0..l {
                    let (a, b) = nearest_usable_edge(ed.graph(), delta, v, v).ok_or({
                        GeneralError::NotEnoughDistantEdges {
                            requested: total,
                            found: 0,
                        }
                    })?;
                    rewire(&mut ed, Edge::new(a, b), v, v)?;
                }
            }
        }
        Err(e) => return Err(e),
    }
    Ok(ed.into_parts().1)
}

/// Removes `e = (a, b)` and adds `(x, a)`, `(y, b)`, trying the other
/// orientation of `e` if the first would duplicate an edge.
fn rewire(ed: &mut Editor, e: Edge, x: Vertex, y: Vertex) -> Result<(), GeneralError> {
    let g = ed.graph();
    let (p, q) = e.endpoints();
    let (a, b) = [(p, q), (q, p)]
        .into_iter()
        .find(|&(a, b)| !g.has_edge(x, a) && !g.has_edge(y, b))
        .ok_or_else(|| GeneralError::Stuck(format!("cannot rewire {e} onto ({x}, {y})")))?;
    ed.remove(a, b)?;
    ed.add(x, a)?;
    ed.add(y, b)?;
    Ok(())
}

/// Turns a graph whose degrees are all `Δ` or `Δ - 1`, every degree-`(Δ-1)`
/// vertex a separation vertex, into a union of regular graphs.
///
/// Deficient vertices are joined pairwise, the leftover adjacent pairs each
/// take one far edge, and a single leftover (possible only for odd `Δ`) is
/// isolated before one more pairing pass.
pub fn finish_regularization(g: &Graph) -> Result<EditScript, GeneralError> {
    finish(g, true)
}

pub(crate) fn finish(g: &Graph, enforce_size: bool) -> Result<EditScript, GeneralError> {
    let delta = g.max_degree();
    if delta == 0 {
        return Ok(EditScript::new());
    }
    let report = separation_vertices(g);
    for v in 0..g.n() {
        let d = g.degree(v);
        if d + 1 < delta {
            return Err(GeneralError::PreconditionViolated(format!(
                "vertex {v} has degree {d}, below {}",
                delta - 1
            )));
        }
        if d + 1 == delta && !report.contains(v) {
            return Err(GeneralError::PreconditionViolated(format!(
                "degree-{d} vertex {v} is not a separation vertex"
            )));
        }
    }
    let mut ed = Editor::new(g.clone());
    let leftover = pairing_pass(&mut ed, g, delta, enforce_size)?;
    if let Some(v) = leftover {
        let ns = ed.graph().neighbors(v).to_vec();
        for w in ns {
            ed.remove(v, w)?;
        }
        if let Some(w) = pairing_pass(&mut ed, g, delta, enforce_size)? {
            return Err(GeneralError::Stuck(format!(
                "vertex {w} left unpaired after isolating {v}"
            )));
        }
    }
    Ok(ed.into_parts().1)
}

/// One round of joining degree-`(Δ-1)` vertices. Returns the single vertex
/// left over, if any.
fn pairing_pass(
    ed: &mut Editor,
    original: &Graph,
    delta: usize,
    enforce_size: bool,
) -> Result<Option<Vertex>, GeneralError> {
    let deficient =
        |h: &Graph| -> Vec<Vertex> { (0..h.n()).filter(|&v| h.degree(v) + 1 == delta).collect() };
    ed.saturate(deficient)?;
    let rest = deficient(ed.graph());
    let pairs: Vec<(Vertex, Vertex)> = rest.chunks_exact(2).map(|c| (c[0], c[1])).collect();
    if !pairs.is_empty() {
        require_size(original, finish_min_vertices(delta), enforce_size)?;
        let zone = ExclusionZone::around(ed.graph(), &rest);
        match find_distant_edges(ed.graph(), &zone, pairs.len()) {
            Ok(edges) => {
                for (&(x, y), e) in pairs.iter().zip(edges) {
                    rewire(ed, e, x, y)?;
                }
            }
            Err(GeneralError::NotEnoughDistantEdges { .. }) => {
                for &(x, y) in &pairs {
                    let (a, b) = nearest_usable_edge(ed.graph(), delta, x, y).ok_or(
                        GeneralError::NotEnoughDistantEdges {
                            requested: pairs.len(),
                            found: 0,
                        },
                    )?;
                    rewire(ed, Edge::new(a, b), x, y)?;
                }
            }
            Err(e) => return Err(e),
        }
    }
    Ok((rest.len() % 2 == 1).then(|| rest[rest.len() - 1]))
}
