//! Hand-drawn example families. Vertices carry `x,y` grid labels so edit
//! scripts can be written against the drawing.

use std::collections::HashMap;

use super::GeneratorError;
use crate::graph::{EdgeOp, EditScript, Graph};

pub const FIG2_DEFAULT_REPEATS: usize = 1;

/// Side of the punctured torus grid.
pub const FIG9_SIDE: usize = 8;

const MAX_SIZE: usize = 100_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Family {
    /// An `n`-cycle joined by one edge to a cube.
    CycleCubeBridge,
    /// A twisted ladder with four long degree-2 rows, three pendant paths
    /// and a loop; the size is the number of elided middle columns.
    TwistedLadder,
    /// Two `n`-cycles joined by one edge.
    TwoCycles,
    /// A short twisted ladder whose two rows run on into a long degree-2
    /// cycle; the size is the number of columns on that cycle.
    PeelLadder,
    /// A twisted ladder with a long cycle hanging off two adjacent rungs.
    LadderWithLoop,
    /// An 8x8 torus grid minus one vertex and four nearby edges.
    PuncturedTorus,
}

impl Family {
    pub const ALL: [Family; 6] = [
        Family::CycleCubeBridge,
        Family::TwistedLadder,
        Family::TwoCycles,
        Family::PeelLadder,
        Family::LadderWithLoop,
        Family::PuncturedTorus,
    ];

    pub fn parse(id: &str) -> Result<Family, GeneratorError> {
        Ok(match id {
            "fig1" => Family::CycleCubeBridge,
            "fig2" => Family::TwistedLadder,
            "two-cycles" | "fig5a" => Family::TwoCycles,
            "peel" => Family::PeelLadder,
            "fig8a" => Family::LadderWithLoop,
            "fig9" => Family::PuncturedTorus,
            _ => return Err(GeneratorError::UnknownFamily(id.to_string())),
        })
    }

    pub fn id(self) -> &'static str {
        match self {
            Family::CycleCubeBridge => "fig1",
            Family::TwistedLadder => "fig2",
            Family::TwoCycles => "two-cycles",
            Family::PeelLadder => "peel",
            Family::LadderWithLoop => "fig8a",
            Family::PuncturedTorus => "fig9",
        }
    }

    pub fn default_size(self) -> usize {
        match self {
            Family::CycleCubeBridge | Family::TwoCycles => 8,
            Family::TwistedLadder => FIG2_DEFAULT_REPEATS,
            Family::PeelLadder => 4,
            Family::LadderWithLoop => 1,
            Family::PuncturedTorus => FIG9_SIDE,
        }
    }

    pub fn size_range(self) -> (usize, usize) {
        match self {
            Family::CycleCubeBridge | Family::TwoCycles => (3, MAX_SIZE),
            Family::TwistedLadder => (0, MAX_SIZE),
            Family::PeelLadder => (1, MAX_SIZE),
            Family::LadderWithLoop => (1, 1),
            Family::PuncturedTorus => (FIG9_SIDE, FIG9_SIDE),
        }
    }

    fn check_size(self, size: usize) -> Result<(), GeneratorError> {
        let (min, max) = self.size_range();
        if (min..=max).contains(&size) {
            Ok(())
        } else {
            Err(GeneratorError::SizeOutOfRange {
                family: self.id(),
                size,
                min,
                max,
            })
        }
    }
}

/// The family's graph at `size`, or at its default size.
pub fn figure_family(id: &str, size: Option<usize>) -> Result<Graph, GeneratorError> {
    let family = Family::parse(id)?;
    let size = size.unwrap_or(family.default_size());
    family.check_size(size)?;
    Ok(match family {
        Family::CycleCubeBridge => cycle_cube(size),
        Family::TwistedLadder => twisted_ladder(size),
        Family::TwoCycles => two_cycles(size),
        Family::PeelLadder => peel_ladder(size),
        Family::LadderWithLoop => ladder_with_loop(),
        Family::PuncturedTorus => punctured_torus(),
    })
}

type LabelPair = (&'static str, &'static str);

/// A stored edit script for the family, in vertex indices of
/// `figure_family(id, size)`.
///
/// * `fig2`: a 6-op script reaching a union of regular graphs.
/// * `fig9`: 4 removals and 8 additions lifting every degree-2 vertex to
///   degree 4.
pub fn figure_script(id: &str, size: Option<usize>) -> Result<EditScript, GeneratorError> {
    let family = Family::parse(id)?;
    let g = figure_family(id, size)?;
    let (removes, adds): (&[LabelPair], &[LabelPair]) = match family {
        Family::TwistedLadder => (
            &[("0,-2", "0,-1"), ("0,2", "0,1"), ("1,2", "1,3")],
            &[("0,1", "0,-1"), ("-6,-3", "6,-3"), ("-6,3", "1,3")],
        ),
        Family::PuncturedTorus => (
            &[
                ("-2,-1", "-2,-2"),
                ("-2,2", "-1,2"),
                ("2,1", "2,2"),
                ("2,-2", "1,-2"),
            ],
            &[
                ("-1,0", "-2,-1"),
                ("-1,0", "-2,-2"),
                ("0,1", "-2,2"),
                ("0,1", "-1,2"),
                ("1,0", "2,1"),
                ("1,0", "2,2"),
                ("0,-1", "2,-2"),
                ("0,-1", "1,-2"),
            ],
        ),
        _ => return Err(GeneratorError::NoScript(family.id())),
    };
    let at = |l: &str| g.vertex(l).expect("script labels exist in the drawing");
    Ok(removes
        .iter()
        .map(|&(a, b)| EdgeOp::remove(at(a), at(b)))
        .chain(adds.iter().map(|&(a, b)| EdgeOp::add(at(a), at(b))))
        .collect())
}

#[derive(Default)]
struct Builder {
    labels: Vec<String>,
    index: HashMap<String, usize>,
    edges: Vec<(String, String)>,
}

impl Builder {
    fn vertex(&mut self, l: impl Into<String>) -> String {
        let l = l.into();
        if !self.index.contains_key(&l) {
            self.index.insert(l.clone(), self.labels.len());
            self.labels.push(l.clone());
        }
        l
    }

    fn edge(&mut self, a: impl Into<String>, b: impl Into<String>) {
        let (a, b) = (self.vertex(a), self.vertex(b));
        self.edges.push((a, b));
    }

    fn path<S: Into<String>>(&mut self, vs: impl IntoIterator<Item = S>) {
        let vs: Vec<String> = vs.into_iter().map(|v| self.vertex(v)).collect();
        for w in vs.windows(2) {
            self.edge(w[0].clone(), w[1].clone());
        }
    }

    fn build(self) -> Graph {
        Graph::from_labeled_edges(self.labels, self.edges).expect("figure graphs are simple")
    }
}

fn xy(x: impl std::fmt::Display, y: i32) -> String {
    format!("{x},{y}")
}

fn cycle_cube(n: usize) -> Graph {
    let mut b = Builder::default();
    for i in 0..n {
        b.vertex(format!("c{i}"));
    }
    for i in 0..n {
        b.edge(format!("c{i}"), format!("c{}", (i + 1) % n));
    }
    for v in 0..8usize {
        for bit in 0..3 {
            let w = v ^ (1 << bit);
            if v < w {
                b.edge(format!("q{v}"), format!("q{w}"));
            }
        }
    }
    b.edge("c0", "q0");
    b.build()
}

fn two_cycles(n: usize) -> Graph {
    let mut b = Builder::default();
    for side in ["a", "b"] {
        for i in 0..n {
            b.vertex(format!("{side}{i}"));
        }
        for i in 0..n {
            b.edge(format!("{side}{i}"), format!("{side}{}", (i + 1) % n));
        }
    }
    b.edge("a0", "b0");
    b.build()
}

/// Column positions of the long rows, with `r` elided columns on each side
/// of the middle labelled `-3.j` and `3.j`.
fn ladder_columns(r: usize) -> Vec<String> {
    let mut cols: Vec<String> = ["-6", "-5", "-4"].map(String::from).to_vec();
    cols.extend((1..=r).map(|j| format!("-3.{j}")));
    cols.extend(["-2", "-1", "0", "1", "2"].map(String::from));
    cols.extend((1..=r).map(|j| format!("3.{j}")));
    cols.extend(["4", "5", "6"].map(String::from));
    cols
}

fn twisted_ladder(r: usize) -> Graph {
    let mut b = Builder::default();
    let cols = ladder_columns(r);
    let mut top: Vec<String> = ["1", "2"].map(String::from).to_vec();
    top.extend((1..=r).map(|j| format!("3.{j}")));
    top.extend(["4", "5", "6"].map(String::from));
    b.vertex(xy(-6, 3));
    for x in &top {
        b.vertex(xy(x, 3));
    }
    for y in [2, 1, -1, -2] {
        for x in &cols {
            b.vertex(xy(x, y));
        }
    }
    b.vertex(xy(-6, -3));
    b.vertex(xy(6, -3));

    for y in [2, 1, -1, -2] {
        b.path(cols.iter().map(|x| xy(x, y)));
    }
    b.path(top.iter().map(|x| xy(x, 3)));
    let rungs = cols
        .iter()
        .filter(|x| !["-5", "0", "5"].contains(&x.as_str()));
    for x in rungs {
        b.edge(xy(x, 1), xy(x, -1));
    }
    for (a, c) in [
        ("-5,-1", "-6,1"),
        ("-5,1", "-6,-1"),
        ("5,-1", "6,1"),
        ("5,1", "6,-1"),
    ] {
        b.edge(a, c);
    }
    for (a, c) in [
        ("-6,3", "-6,2"),
        ("6,3", "6,2"),
        ("1,3", "1,2"),
        ("-6,-3", "-6,-2"),
        ("6,-3", "6,-2"),
        ("0,2", "0,1"),
        ("0,-2", "0,-1"),
    ] {
        b.edge(a, c);
    }
    b.build()
}

fn peel_ladder(len: usize) -> Graph {
    let mut b = Builder::default();
    let last = 2 + len as i32;
    for y in [0, 1] {
        b.path((0..=last).map(|x| xy(x, y)));
    }
    b.edge(xy(0, 0), xy(0, 1));
    b.edge(xy(last, 0), xy(last, 1));
    b.edge(xy(0, 0), xy(1, 1));
    b.edge(xy(1, 0), xy(0, 1));
    b.edge(xy(2, 0), xy(2, 1));
    b.build()
}

fn ladder_with_loop() -> Graph {
    let mut b = Builder::default();
    let bottom = [-4, -3, -2, -1, 2, 3, 4, 5];
    let top: Vec<i32> = (-4..=5).collect();
    b.path(bottom.iter().map(|&x| xy(x, 0)));
    b.path(top.iter().map(|&x| xy(x, 1)));
    for x in [-4, -2, -1, 2, 3, 5] {
        b.edge(xy(x, 0), xy(x, 1));
    }
    b.edge("-4,0", "-3,1");
    b.edge("-4,1", "-3,0");
    b.edge("4,0", "5,1");
    b.edge("4,1", "5,0");
    b.path(["0,1", "0,2", "0,3"]);
    b.path(["1,1", "1,2", "1,3"]);
    let mut loop_path: Vec<String> = (-3..=0).rev().map(|x| xy(x, 3)).collect();
    loop_path.extend((-3..=4).map(|x| xy(x, 4)));
    loop_path.extend((1..=4).rev().map(|x| xy(x, 3)));
    b.path(loop_path);
    b.build()
}

fn punctured_torus() -> Graph {
    let s = FIG9_SIDE as i32;
    let h = s / 2;
    let wrap = |v: i32| (v + h).rem_euclid(s) - h;
    let mut b = Builder::default();
    for y in (-h..h).rev() {
        for x in -h..h {
            if (x, y) != (0, 0) {
                b.vertex(xy(x, y));
            }
        }
    }
    let missing = [
        ((0, 1), (0, 2)),
        ((0, -1), (0, -2)),
        ((1, 0), (2, 0)),
        ((-1, 0), (-2, 0)),
    ];
    for y in -h..h {
        for x in -h..h {
            for (nx, ny) in [(wrap(x + 1), y), (x, wrap(y + 1))] {
                let (p, q) = ((x, y), (nx, ny));
                if p == (0, 0) || q == (0, 0) {
                    continue;
                }
                if missing
                    .iter()
                    .any(|&(a, c)| (a, c) == (p, q) || (c, a) == (p, q))
                {
                    continue;
                }
                b.edge(xy(x, y), xy(nx, ny));
            }
        }
    }
    b.build()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{apply_script, certify_regular_union, separation_vertices};

    fn k(id: &str) -> usize {
        separation_vertices(&figure_family(id, None).unwrap()).k
    }

    #[test]
    fn unknown_and_out_of_range() {
        assert_eq!(
            figure_family("fig3", None),
            Err(GeneratorError::UnknownFamily("fig3".into()))
        );
        assert!(matches!(
            figure_family("two-cycles", Some(2)),
            Err(GeneratorError::SizeOutOfRange { .. })
        ));
        assert!(figure_family("fig9", Some(10)).is_err());
    }

    #[test]
    fn cycle_cube_shape() {
        let g = figure_family("fig1", None).unwrap();
        assert_eq!((g.n(), g.m()), (16, 8 + 12 + 1));
        assert_eq!(g.max_degree(), 4);
        // Both bridge endpoints count: the cycle side sits next to degree 4.
        assert_eq!(k("fig1"), 6);
        let bridge = g.vertex("c0").unwrap();
        assert!(separation_vertices(&g).contains(bridge));
    }

    #[test]
    fn two_cycles_shape() {
        assert_eq!(k("two-cycles"), 4);
        assert_eq!(k("fig5a"), 4);
        let g = figure_family("two-cycles", Some(20)).unwrap();
        assert_eq!(g.n(), 40);
    }

    #[test]
    fn twisted_ladder_shape() {
        for r in [0, 1, 3] {
            let g = figure_family("fig2", Some(r)).unwrap();
            assert_eq!(g.n(), 52 + 9 * r);
            assert_eq!(g.max_degree(), 3);
            let rep = separation_vertices(&g);
            let labels: Vec<String> = rep.separation_set.iter().map(|&v| g.label(v)).collect();
            assert_eq!(
                labels,
                ["-6,3", "1,3", "-1,2", "2,2", "-1,-2", "1,-2", "-6,-3", "6,-3"]
            );
        }
    }

    #[test]
    fn short_script_on_twisted_ladder() {
        for r in [0, 1, 4] {
            let g = figure_family("fig2", Some(r)).unwrap();
            let s = figure_script("fig2", Some(r)).unwrap();
            assert_eq!(s.len(), 6);
            let h = apply_script(&g, &s).unwrap();
            assert!(certify_regular_union(&h).is_regular());
        }
    }

    #[test]
    fn peel_ladder_shape() {
        let g = figure_family("peel", None).unwrap();
        assert_eq!(g.n(), 14);
        assert_eq!(k("peel"), 2);
    }

    #[test]
    fn ladder_with_loop_shape() {
        let g = figure_family("fig8a", None).unwrap();
        assert_eq!(g.n(), 36);
        assert_eq!(g.max_degree(), 3);
        let rep = separation_vertices(&g);
        let labels: Vec<String> = rep.separation_set.iter().map(|&v| g.label(v)).collect();
        assert_eq!(labels, ["0,2", "1,2"]);
    }

    #[test]
    fn punctured_torus_shape() {
        let g = figure_family("fig9", None).unwrap();
        assert_eq!(g.n(), 63);
        assert_eq!(g.max_degree(), 4);
        assert_eq!(g.count_degree(2), 4);
        assert_eq!(g.count_degree(3), 4);
        assert_eq!(k("fig9"), 8);
        let s = figure_script("fig9", None).unwrap();
        assert_eq!(s.len(), 12);
        let h = apply_script(&g, &s).unwrap();
        assert_eq!(h.count_degree(2), 0);
        assert!(h.degrees().iter().all(|&d| d == 3 || d == 4));
        assert!(figure_script("fig1", None).is_err());
    }
}
