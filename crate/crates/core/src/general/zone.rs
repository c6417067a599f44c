use std::collections::BTreeSet;

use super::GeneralError;
use crate::graph::{Edge, Graph, Vertex};

/// Vertices too close to the deficient vertices for their edges to be
/// rewired safely.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct ExclusionZone {
    /// The deficient (separation) vertices themselves.
    pub v0: Vec<Vertex>,
    /// Neighbors of `v0` outside `v0`.
    pub v1: Vec<Vertex>,
    /// Neighbors of `v1` outside `v0 ∪ v1`.
    pub v2: Vec<Vertex>,
}

impl ExclusionZone {
    pub fn around(g: &Graph, v0: &[Vertex]) -> Self {
        let ring = |inner: &BTreeSet<Vertex>, from: &[Vertex]| -> Vec<Vertex> {
            from.iter()
                .flat_map(|&v| g.neighbors(v).iter().copied())
                .filter(|w| !inner.contains(w))
                .collect::<BTreeSet<_>>()
                .into_iter()
                .collect()
        };
        let mut seen: BTreeSet<Vertex> = v0.iter().copied().collect();
        let v1 = ring(&seen, v0);
        seen.extend(v1.iter().copied());
        let v2 = ring(&seen, &v1);
        ExclusionZone {
            v0: v0
                .iter()
                .copied()
                .collect::<BTreeSet<_>>()
                .into_iter()
                .collect(),
            v1,
            v2,
        }
    }

    pub fn k0(&self) -> usize {
        self.v0.len()
    }

    pub fn contains(&self, v: Vertex) -> bool {
        [&self.v0, &self.v1, &self.v2]
            .iter()
            .any(|s| s.binary_search(&v).is_ok())
    }

    /// Whether the ring sizes respect `|v1| ≤ k0(Δ-1)` and
    /// `|v2| ≤ k0(Δ-1)²`.
    pub fn within_bounds(&self, delta: usize) -> bool {
        let step = delta.saturating_sub(1);
        self.v1.len() <= self.k0() * step && self.v2.len() <= self.k0() * step * step
    }
}

/// Rewires needed to lift a degree-`d` vertex to `Δ` or `Δ - 1`; each one
/// removes a far edge and joins both freed endpoints to the vertex.
pub fn rewires_needed(d: usize, delta: usize) -> usize {
    delta.saturating_sub(d) / 2
}

/// The lexicographically first `count` pairwise vertex-disjoint edges with
/// both endpoints outside the zone.
pub fn find_distant_edges(
    g: &Graph,
    zone: &ExclusionZone,
    count: usize,
) -> Result<Vec<Edge>, GeneralError> {
    let mut used = vec![false; g.n()];
    let mut out = Vec::with_capacity(count);
    for e in g.edges() {
        if out.len() == count {
            break;
        }
        let (a, b) = e.endpoints();
        if used[a] || used[b] || zone.contains(a) || zone.contains(b) {
            continue;
        }
        used[a] = true;
        used[b] = true;
        out.push(e);
    }
    if out.len() < count {
        return Err(GeneralError::NotEnoughDistantEdges {
            requested: count,
            found: out.len(),
        });
    }
    Ok(out)
}
