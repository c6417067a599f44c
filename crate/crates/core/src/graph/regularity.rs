use super::{Edge, Graph, Vertex};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Component {
    /// Sorted.
    pub vertices: Vec<Vertex>,
    pub degree: usize,
}

/// Whether every connected component is degree-regular.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum RegularityCertificate {
    /// Components ordered by smallest vertex. Isolated vertices appear as
    /// 0-regular components.
    Regular(Vec<Component>),
    /// An edge whose endpoints have different degrees.
    Irregular(Edge),
}

impl RegularityCertificate {
    pub fn is_regular(&self) -> bool {
        matches!(self, RegularityCertificate::Regular(_))
    }

    pub fn witness(&self) -> Option<Edge> {
        match self {
            RegularityCertificate::Irregular(e) => Some(*e),
            RegularityCertificate::Regular(_) => None,
        }
    }
}

/// A component is regular iff no edge inside it joins vertices of different
/// degree, so the first such edge in lexicographic order is the witness.
pub fn certify_regular_union(g: &Graph) -> RegularityCertificate {
    if let Some(e) = g.edges().find(|e| g.degree(e.lo()) != g.degree(e.hi())) {
        return RegularityCertificate::Irregular(e);
    }
    RegularityCertificate::Regular(
        g.components()
            .into_iter()
            .map(|vertices| Component {
                degree: g.degree(vertices[0]),
                vertices,
            })
            .collect(),
    )
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn triangle_plus_k4() {
        let g = Graph::from_edges(
            7,
            [
                (0, 1),
                (1, 2),
                (0, 2),
                (3, 4),
                (3, 5),
                (3, 6),
                (4, 5),
                (4, 6),
                (5, 6),
            ],
        )
        .unwrap();
        assert_eq!(
            certify_regular_union(&g),
            RegularityCertificate::Regular(vec![
                Component {
                    vertices: vec![0, 1, 2],
                    degree: 2
                },
                Component {
                    vertices: vec![3, 4, 5, 6],
                    degree: 3
                },
            ])
        );
    }

    #[test]
    fn path_is_irregular() {
        let p3 = Graph::from_edges(3, [(0, 1), (1, 2)]).unwrap();
        assert_eq!(
            certify_regular_union(&p3),
            RegularityCertificate::Irregular(Edge::new(0, 1))
        );
    }

    #[test]
    fn empty_graph_is_five_isolated_components() {
        match certify_regular_union(&Graph::empty(5)) {
            RegularityCertificate::Regular(cs) => {
                assert_eq!(cs.len(), 5);
                assert!(cs.iter().all(|c| c.degree == 0 && c.vertices.len() == 1));
            }
            other => panic!("expected regular, got {other:?}"),
        }
    }
}
