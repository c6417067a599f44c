use std::collections::BTreeMap;

use thiserror::Error;

use super::{apply_script, EditScript, Graph, ScriptError, Vertex};

/// Separation vertices of a graph together with the counts derived from them.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SeparationReport {
    /// Sorted.
    pub separation_set: Vec<Vertex>,
    pub k: usize,
    pub max_degree: usize,
    pub degree_histogram: BTreeMap<usize, usize>,
}

impl SeparationReport {
    pub fn contains(&self, v: Vertex) -> bool {
        self.separation_set.binary_search(&v).is_ok()
    }

    pub fn is_empty(&self) -> bool {
        self.k == 0
    }
}

/// True if some neighbor of `v` has strictly larger degree.
pub fn is_separation_vertex(g: &Graph, v: Vertex) -> bool {
    let d = g.degree(v);
    g.neighbors(v).iter().any(|&w| g.degree(w) > d)
}

pub fn separation_vertices(g: &Graph) -> SeparationReport {
    let separation_set: Vec<Vertex> = (0..g.n()).filter(|&v| is_separation_vertex(g, v)).collect();
    SeparationReport {
        k: separation_set.len(),
        separation_set,
        max_degree: g.max_degree(),
        degree_histogram: g.degree_histogram(),
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ModificationBoundError {
    #[error("graph is not regular (degrees {0} and {1} both occur)")]
    NotRegular(usize, usize),
    #[error(transparent)]
    Replay(#[from] ScriptError),
}

/// Checks that modifying `k = |mods|` edges of a `d`-regular graph leaves at
/// most `2dk` separation vertices.
pub fn check_modification_bound(
    g: &Graph,
    mods: &EditScript,
) -> Result<bool, ModificationBoundError> {
    let hist = g.degree_histogram();
    let mut degrees = hist.keys().copied();
    let d = degrees.next().unwrap_or(0);
    if let Some(other) = degrees.next() {
        return Err(ModificationBoundError::NotRegular(d, other));
    }
    let modified = apply_script(g, mods)?;
    let k = mods.len();
    Ok(separation_vertices(&modified).k <= 2 * d * k)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::EdgeOp;

    fn cycle(n: usize) -> Graph {
        Graph::from_edges(n, (0..n).map(|i| (i, (i + 1) % n))).unwrap()
    }

    fn cube() -> Graph {
        let edges = (0..8usize).flat_map(|v| {
            (0..3)
                .map(move |b| (v, v ^ (1 << b)))
                .filter(|&(a, b)| a < b)
        });
        Graph::from_edges(8, edges).unwrap()
    }

    #[test]
    fn regular_graphs_have_none() {
        let r = separation_vertices(&cycle(3));
        assert!(r.is_empty());
        assert_eq!(r.max_degree, 2);
    }

    #[test]
    fn star_leaves() {
        let star = Graph::from_edges(4, [(0, 1), (0, 2), (0, 3)]).unwrap();
        let r = separation_vertices(&star);
        assert_eq!(r.separation_set, vec![1, 2, 3]);
        assert_eq!(r.degree_histogram, BTreeMap::from([(1, 3), (3, 1)]));
    }

    #[test]
    fn modification_bound_examples() {
        let mods: EditScript = [EdgeOp::remove(0, 1)].into_iter().collect();
        let after = apply_script(&cycle(8), &mods).unwrap();
        assert_eq!(separation_vertices(&after).k, 2);
        assert!(check_modification_bound(&cycle(8), &mods).unwrap());

        // Antipodal add in the cube: both endpoints go to degree 4 and their
        // six neighbors become separation vertices.
        let mods: EditScript = [EdgeOp::add(0, 7)].into_iter().collect();
        let after = apply_script(&cube(), &mods).unwrap();
        assert_eq!(separation_vertices(&after).k, 6);
        assert!(check_modification_bound(&cube(), &mods).unwrap());
    }

    #[test]
    fn modification_bound_rejects_irregular() {
        let p3 = Graph::from_edges(3, [(0, 1), (1, 2)]).unwrap();
        assert_eq!(
            check_modification_bound(&p3, &EditScript::new()),
            Err(ModificationBoundError::NotRegular(1, 2))
        );
    }
}
