//! Exact permutation distance between small graphs.
//!
//! `d(G, H)` is the smallest number of vertex pairs on which `G` and a
//! relabeling of `H` disagree: half the entrywise L1 distance between the
//! adjacency matrices, minimized over vertex permutations. It is computed
//! here as an integer symmetric-difference count.

use itertools::Itertools;
use petgraph::graph::UnGraph;
use thiserror::Error;

use crate::graph::{EditScript, Graph, Vertex};

/// Node expansions allowed before the search gives up on proving optimality.
pub const DEFAULT_BUDGET: u64 = 10_000_000;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum MetricError {
    #[error("graphs have {left} and {right} vertices (enable padding to compare)")]
    SizeMismatch { left: usize, right: usize },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct DistanceOptions {
    pub budget: u64,
    /// Append isolated vertices to the smaller graph instead of failing.
    pub pad: bool,
}

impl Default for DistanceOptions {
    fn default() -> Self {
        DistanceOptions {
            budget: DEFAULT_BUDGET,
            pad: false,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DistanceResult {
    pub distance: usize,
    /// `witness[i]` is the vertex of `h` that vertex `i` of `g` maps to.
    pub witness: Vec<Vertex>,
    /// False when the budget ran out; `distance` is then only an upper bound.
    pub exact: bool,
    pub expansions: u64,
}

/// Number of unordered vertex pairs where `g` and `h` relabeled by `pi`
/// disagree.
pub fn relabeled_difference(g: &Graph, h: &Graph, pi: &[Vertex]) -> usize {
    let n = g.n();
    let mut diff = 0;
    for i in 0..n {
        for j in i + 1..n {
            if g.has_edge(i, j) != h.has_edge(pi[i], pi[j]) {
                diff += 1;
            }
        }
    }
    diff
}

fn equalize(g: &Graph, h: &Graph, pad: bool) -> Result<(Graph, Graph), MetricError> {
    let (a, b) = (g.n(), h.n());
    if a == b {
        return Ok((g.clone(), h.clone()));
    }
    if !pad {
        return Err(MetricError::SizeMismatch { left: a, right: b });
    }
    let n = a.max(b);
    Ok((g.padded(n - a), h.padded(n - b)))
}

/// Minimum over all `n!` permutations by plain enumeration. Ties go to the
/// lexicographically smallest permutation. Intended for `n ≤ 8`.
pub fn naive_distance(g: &Graph, h: &Graph) -> Result<(usize, Vec<Vertex>), MetricError> {
    let (g, h) = equalize(g, h, false)?;
    let n = g.n();
    let mut best = (usize::MAX, Vec::new());
    for pi in (0..n).permutations(n) {
        let d = relabeled_difference(&g, &h, &pi);
        if d < best.0 {
            best = (d, pi);
        }
    }
    if n == 0 {
        best = (0, Vec::new());
    }
    Ok(best)
}

struct Search<'a> {
    n: usize,
    ag: &'a [bool],
    ah: &'a [bool],
    order: Vec<Vertex>,
    pi: Vec<Vertex>,
    used: Vec<bool>,
    // Neighbors each vertex still has among unassigned vertices (of g) or
    // unused images (of h).
    free_deg_g: Vec<usize>,
    free_deg_h: Vec<usize>,
    free_edges_g: usize,
    free_edges_h: usize,
    best: usize,
    best_pi: Vec<Vertex>,
    expansions: u64,
    budget: u64,
    exhausted: bool,
    // In the witness pass the optimum is known: accept the first complete
    // assignment that reaches it.
    target: Option<usize>,
    done: bool,
}

impl<'a> Search<'a> {
    fn new(g: &Graph, ag: &'a [bool], ah: &'a [bool], h: &Graph, order: Vec<Vertex>) -> Self {
        let n = g.n();
        Search {
            n,
            ag,
            ah,
            order,
            pi: vec![usize::MAX; n],
            used: vec![false; n],
            free_deg_g: g.degrees(),
            free_deg_h: h.degrees(),
            free_edges_g: g.m(),
            free_edges_h: h.m(),
            best: usize::MAX,
            best_pi: Vec::new(),
            expansions: 0,
            budget: 0,
            exhausted: false,
            target: None,
            done: false,
        }
    }

    fn lower_bound(&self, depth: usize, cost: usize) -> usize {
        let mut lb = cost + self.free_edges_g.abs_diff(self.free_edges_h);
        for &x in &self.order[..depth] {
            lb += self.free_deg_g[x].abs_diff(self.free_deg_h[self.pi[x]]);
        }
        lb
    }

    fn assign(&mut self, x: Vertex, y: Vertex) {
        let n = self.n;
        self.pi[x] = y;
        self.used[y] = true;
        self.free_edges_g -= self.free_deg_g[x];
        self.free_edges_h -= self.free_deg_h[y];
        for v in 0..n {
            if self.ag[x * n + v] {
                self.free_deg_g[v] -= 1;
            }
            if self.ah[y * n + v] {
                self.free_deg_h[v] -= 1;
            }
        }
    }

    fn unassign(&mut self, x: Vertex, y: Vertex) {
        let n = self.n;
        for v in 0..n {
            if self.ag[x * n + v] {
                self.free_deg_g[v] += 1;
            }
            if self.ah[y * n + v] {
                self.free_deg_h[v] += 1;
            }
        }
        self.free_edges_g += self.free_deg_g[x];
        self.free_edges_h += self.free_deg_h[y];
        self.used[y] = false;
        self.pi[x] = usize::MAX;
    }

    fn run(&mut self, depth: usize, cost: usize) {
        if self.done || self.exhausted {
            return;
        }
        if self.expansions >= self.budget {
            self.exhausted = true;
            return;
        }
        self.expansions += 1;
        if depth == self.n {
            match self.target {
                Some(t) if cost == t => {
                    self.best = cost;
                    self.best_pi = self.pi.clone();
                    self.done = true;
                }
                None if cost < self.best => {
                    self.best = cost;
                    self.best_pi = self.pi.clone();
                }
                _ => {}
            }
            return;
        }
        let n = self.n;
        let x = self.order[depth];
        for y in 0..n {
            if self.used[y] {
                continue;
            }
            let mut added = 0;
            for &x2 in &self.order[..depth] {
                if self.ag[x * n + x2] != self.ah[y * n + self.pi[x2]] {
                    added += 1;
                }
            }
            self.assign(x, y);
            let lb = self.lower_bound(depth + 1, cost + added);
            let keep = match self.target {
                Some(t) => lb <= t,
                None => lb < self.best,
            };
            if keep {
                self.run(depth + 1, cost + added);
            }
            self.unassign(x, y);
            if self.done || self.exhausted {
                return;
            }
        }
    }
}

/// Exact `d(g, h)` by branch and bound.
///
/// Vertices of `g` are assigned in decreasing-degree order; a branch is cut
/// once its partial mismatch count plus a degree-based lower bound for the
/// unassigned part reaches the incumbent. A second pass in index order then
/// recovers the lexicographically smallest optimal permutation.
pub fn exact_distance(
    g: &Graph,
    h: &Graph,
    opts: DistanceOptions,
) -> Result<DistanceResult, MetricError> {
    let (g, h) = equalize(g, h, opts.pad)?;
    let n = g.n();
    let ag = g.adjacency_matrix();
    let ah = h.adjacency_matrix();

    let identity: Vec<Vertex> = (0..n).collect();
    let mut order = identity.clone();
    order.sort_by_key(|&v| (std::cmp::Reverse(g.degree(v)), v));

    let mut search = Search::new(&g, &ag, &ah, &h, order);
    search.budget = opts.budget;
    search.best = relabeled_difference(&g, &h, &identity);
    search.best_pi = identity.clone();
    search.run(0, 0);
    let exact = !search.exhausted;
    let mut result = DistanceResult {
        distance: search.best,
        witness: search.best_pi.clone(),
        exact,
        expansions: search.expansions,
    };
    if !exact {
        return Ok(result);
    }

    let spent = search.expansions;
    let mut lex = Search::new(&g, &ag, &ah, &h, identity);
    lex.budget = opts.budget.saturating_sub(spent);
    lex.target = Some(result.distance);
    lex.run(0, 0);
    result.expansions += lex.expansions;
    if lex.done {
        result.witness = lex.best_pi;
    }
    Ok(result)
}

/// Cost of a script: an upper bound on the distance between the graph it
/// starts from and the graph it produces.
pub fn script_cost_bound(s: &EditScript) -> usize {
    s.cost()
}

fn to_petgraph(g: &Graph) -> UnGraph<(), ()> {
    let mut pg = UnGraph::with_capacity(g.n(), g.m());
    let nodes: Vec<_> = (0..g.n()).map(|_| pg.add_node(())).collect();
    for e in g.edges() {
        pg.add_edge(nodes[e.lo()], nodes[e.hi()], ());
    }
    pg
}

pub fn is_isomorphic(g: &Graph, h: &Graph) -> bool {
    petgraph::algo::is_isomorphic(&to_petgraph(g), &to_petgraph(h))
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum AxiomViolation {
    Asymmetric {
        triple: usize,
        pair: (usize, usize),
        forward: usize,
        backward: usize,
    },
    Triangle {
        triple: usize,
        path: (usize, usize, usize),
        direct: usize,
        via: usize,
    },
    ZeroWithoutIsomorphism {
        triple: usize,
        pair: (usize, usize),
    },
    IsomorphicButPositive {
        triple: usize,
        pair: (usize, usize),
        distance: usize,
    },
    Inexact {
        triple: usize,
        pair: (usize, usize),
    },
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct AxiomReport {
    pub triples_checked: usize,
    pub violations: Vec<AxiomViolation>,
}

impl AxiomReport {
    pub fn holds(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Checks symmetry, the triangle inequality and `d = 0 ⇔ isomorphic` on each
/// triple. Isomorphism is decided by an independent VF2 test.
pub fn verify_metric_axioms(triples: &[[Graph; 3]]) -> Result<AxiomReport, MetricError> {
    let mut report = AxiomReport::default();
    for (t, graphs) in triples.iter().enumerate() {
        let mut d = [[0usize; 3]; 3];
        for i in 0..3 {
            for j in 0..3 {
                if i == j {
                    continue;
                }
                let r = exact_distance(&graphs[i], &graphs[j], DistanceOptions::default())?;
                if !r.exact {
                    report.violations.push(AxiomViolation::Inexact {
                        triple: t,
                        pair: (i, j),
                    });
                }
                d[i][j] = r.distance;
            }
        }
        for i in 0..3 {
            for j in i + 1..3 {
                if d[i][j] != d[j][i] {
                    report.violations.push(AxiomViolation::Asymmetric {
                        triple: t,
                        pair: (i, j),
                        forward: d[i][j],
                        backward: d[j][i],
                    });
                }
                let iso = is_isomorphic(&graphs[i], &graphs[j]);
                if d[i][j] == 0 && !iso {
                    report
                        .violations
                        .push(AxiomViolation::ZeroWithoutIsomorphism {
                            triple: t,
                            pair: (i, j),
                        });
                }
                if d[i][j] != 0 && iso {
                    report
                        .violations
                        .push(AxiomViolation::IsomorphicButPositive {
                            triple: t,
                            pair: (i, j),
                            distance: d[i][j],
                        });
                }
            }
        }
        for (a, b, c) in (0..3).permutations(3).map(|p| (p[0], p[1], p[2])) {
            if d[a][c] > d[a][b] + d[b][c] {
                report.violations.push(AxiomViolation::Triangle {
                    triple: t,
                    path: (a, b, c),
                    direct: d[a][c],
                    via: d[a][b] + d[b][c],
                });
            }
        }
        report.triples_checked += 1;
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{apply_script, EdgeOp};
    use proptest::prelude::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn cycle(n: usize) -> Graph {
        Graph::from_edges(n, (0..n).map(|i| (i, (i + 1) % n))).unwrap()
    }

    fn path(n: usize) -> Graph {
        Graph::from_edges(n, (1..n).map(|i| (i - 1, i))).unwrap()
    }

    fn random_graph(rng: &mut ChaCha8Rng, n: usize, p: f64) -> Graph {
        let mut edges = Vec::new();
        for i in 0..n {
            for j in i + 1..n {
                if rng.gen_bool(p) {
                    edges.push((i, j));
                }
            }
        }
        Graph::from_edges(n, edges).unwrap()
    }

    #[test]
    fn self_distance_is_zero() {
        let g = cycle(6);
        let r = exact_distance(&g, &g, DistanceOptions::default()).unwrap();
        assert_eq!((r.distance, r.exact), (0, true));
        assert_eq!(r.witness, (0..6).collect::<Vec<_>>());
    }

    #[test]
    fn cycle_vs_matching() {
        // Brute force over all 24 permutations gives 2: C4 and 2K2 differ in
        // edge count by 2 and 2K2 embeds in C4.
        let c4 = cycle(4);
        let matching = Graph::from_edges(4, [(0, 1), (2, 3)]).unwrap();
        let (naive, _) = naive_distance(&c4, &matching).unwrap();
        assert_eq!(naive, 2);
        let r = exact_distance(&c4, &matching, DistanceOptions::default()).unwrap();
        assert_eq!(r.distance, 2);
        assert_eq!(relabeled_difference(&c4, &matching, &r.witness), 2);
    }

    #[test]
    fn path_vs_triangle() {
        let r = exact_distance(&path(3), &cycle(3), DistanceOptions::default()).unwrap();
        assert_eq!(r.distance, 1);
    }

    #[test]
    fn size_mismatch_and_padding() {
        let err = exact_distance(&path(3), &path(4), DistanceOptions::default()).unwrap_err();
        assert_eq!(err, MetricError::SizeMismatch { left: 3, right: 4 });
        let r = exact_distance(
            &path(3),
            &path(4),
            DistanceOptions {
                pad: true,
                ..Default::default()
            },
        )
        .unwrap();
        assert_eq!(r.distance, 1);
        assert_eq!(r.witness.len(), 4);
    }

    #[test]
    fn small_budget_is_inexact() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let g = random_graph(&mut rng, 12, 0.5);
        let h = random_graph(&mut rng, 12, 0.3);
        let r = exact_distance(
            &g,
            &h,
            DistanceOptions {
                budget: 50,
                pad: false,
            },
        )
        .unwrap();
        assert!(!r.exact);
        assert_eq!(relabeled_difference(&g, &h, &r.witness), r.distance);
    }

    #[test]
    fn branch_and_bound_matches_enumeration() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for _ in 0..150 {
            let n = rng.gen_range(0..=6);
            let (pg, ph) = (rng.gen_range(0.1..0.9), rng.gen_range(0.1..0.9));
            let g = random_graph(&mut rng, n, pg);
            let h = random_graph(&mut rng, n, ph);
            let (d, pi) = naive_distance(&g, &h).unwrap();
            let r = exact_distance(&g, &h, DistanceOptions::default()).unwrap();
            assert!(r.exact);
            assert_eq!(r.distance, d);
            assert_eq!(r.witness, pi, "lexicographic tie-break");
        }
    }

    #[test]
    fn padding_is_neutral() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        for _ in 0..40 {
            let n = rng.gen_range(1..=6);
            let g = random_graph(&mut rng, n, 0.4);
            let h = random_graph(&mut rng, n, 0.6);
            let base = exact_distance(&g, &h, DistanceOptions::default()).unwrap();
            let padded =
                exact_distance(&g.padded(1), &h.padded(1), DistanceOptions::default()).unwrap();
            assert_eq!(base.distance, padded.distance);
        }
    }

    #[test]
    fn axioms_on_small_triples() {
        let c4 = cycle(4);
        let r = verify_metric_axioms(&[[c4.clone(), c4.clone(), c4]]).unwrap();
        assert!(r.holds());

        let k5_minus_matching = Graph::from_edges(
            5,
            (0..5)
                .flat_map(|i| (i + 1..5).map(move |j| (i, j)))
                .filter(|&e| e != (0, 1) && e != (2, 3)),
        )
        .unwrap();
        let r = verify_metric_axioms(&[[cycle(5), path(5), k5_minus_matching]]).unwrap();
        assert!(r.holds(), "{:?}", r.violations);
    }

    proptest! {
        #[test]
        fn script_cost_bounds_distance(seed in 0u64..1000, steps in 0usize..6) {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let n = rng.gen_range(2..=7);
            let g = random_graph(&mut rng, n, 0.4);
            let mut script = EditScript::new();
            let mut cur = g.clone();
            for _ in 0..steps {
                let a = rng.gen_range(0..n);
                let b = (a + rng.gen_range(1..n)) % n;
                let op = if cur.has_edge(a, b) { EdgeOp::remove(a, b) } else { EdgeOp::add(a, b) };
                cur = cur.apply_edit(op).unwrap();
                script.push(op);
            }
            let end = apply_script(&g, &script).unwrap();
            let d = exact_distance(&g, &end, DistanceOptions::default()).unwrap();
            prop_assert!(d.distance <= script_cost_bound(&script));
        }
    }
}
