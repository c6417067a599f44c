use std::collections::{BTreeSet, HashMap};

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::GeneratorError;
use crate::graph::{
    separation_vertices, Component, Edge, EdgeOp, EditScript, Editor, Graph, Vertex,
};

/// Pairing-model attempts before switching to swap repair.
pub const MAX_RESTARTS: usize = 1000;

/// Uniform-ish random simple `d`-regular graph on `n` vertices.
///
/// Stubs are shuffled and matched in order; an attempt is abandoned at the
/// first loop or repeated pair. After [`MAX_RESTARTS`] failures the last
/// matching is repaired by random stub swaps.
pub fn random_regular(n: usize, d: usize, seed: u64) -> Result<Graph, GeneratorError> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    random_regular_with(n, d, &mut rng)
}

fn random_regular_with(n: usize, d: usize, rng: &mut ChaCha8Rng) -> Result<Graph, GeneratorError> {
    if (n * d) % 2 == 1 || (d >= n && !(n == 0 && d == 0)) {
        return Err(GeneratorError::InfeasibleDegreeSequence { n, d });
    }
    let mut stubs: Vec<Vertex> = (0..n).flat_map(|v| std::iter::repeat_n(v, d)).collect();
    for _ in 0..MAX_RESTARTS {
        stubs.shuffle(rng);
        if let Some(g) = pair_simple(n, &stubs) {
            return Ok(g);
        }
    }
    stubs.shuffle(rng);
    let mut pairs: Vec<(Vertex, Vertex)> = stubs.chunks(2).map(|c| (c[0], c[1])).collect();
    repair_pairs(&mut pairs, rng)?;
    Ok(Graph::from_edges(n, pairs).expect("repaired pairing is simple"))
}

fn pair_simple(n: usize, stubs: &[Vertex]) -> Option<Graph> {
    let mut g = Graph::empty(n);
    for c in stubs.chunks(2) {
        if c[0] == c[1] || g.has_edge(c[0], c[1]) {
            return None;
        }
        g.apply_in_place(EdgeOp::add(c[0], c[1])).ok()?;
    }
    Some(g)
}

fn key(a: Vertex, b: Vertex) -> (Vertex, Vertex) {
    (a.min(b), a.max(b))
}

/// Swaps stubs between a bad pair and a random partner until every pair is
/// a distinct non-loop. A swap is kept when it does not increase the local
/// excess (loops plus repeated copies).
fn repair_pairs(
    pairs: &mut [(Vertex, Vertex)],
    rng: &mut ChaCha8Rng,
) -> Result<(), GeneratorError> {
    let mut count: HashMap<(Vertex, Vertex), usize> = HashMap::new();
    for &(a, b) in pairs.iter() {
        *count.entry(key(a, b)).or_default() += 1;
    }
    let excess = |keys: &[(Vertex, Vertex)], count: &HashMap<(Vertex, Vertex), usize>| {
        let mut keys = keys.to_vec();
        keys.sort_unstable();
        keys.dedup();
        keys.iter()
            .map(|k| {
                let c = count.get(k).copied().unwrap_or(0);
                if k.0 == k.1 {
                    c
                } else {
                    c.saturating_sub(1)
                }
            })
            .sum::<usize>()
    };
    let bad =
        |p: (Vertex, Vertex), count: &HashMap<_, usize>| p.0 == p.1 || count[&key(p.0, p.1)] > 1;
    let budget = 1000 * pairs.len().max(1);
    for _ in 0..budget {
        let Some(i) = pairs.iter().position(|&p| bad(p, &count)) else {
            return Ok(());
        };
        let j = rng.gen_range(0..pairs.len());
        if i == j {
            continue;
        }
        let ((a, b), (c, e)) = (pairs[i], pairs[j]);
        let (x, y) = if rng.gen() {
            ((a, c), (b, e))
        } else {
            ((a, e), (b, c))
        };
        let keys = [key(a, b), key(c, e), key(x.0, x.1), key(y.0, y.1)];
        let before = excess(&keys, &count);
        let mut step = |remove: [(Vertex, Vertex); 2], add: [(Vertex, Vertex); 2]| {
            for p in remove {
                *count.get_mut(&key(p.0, p.1)).unwrap() -= 1;
            }
            for p in add {
                *count.entry(key(p.0, p.1)).or_default() += 1;
            }
        };
        step([pairs[i], pairs[j]], [x, y]);
        let after = excess(&keys, &count);
        if after < before || (after == before && rng.gen()) {
            pairs[i] = x;
            pairs[j] = y;
        } else {
            let (pi, pj) = (pairs[i], pairs[j]);
            let mut undo = |remove: [(Vertex, Vertex); 2], add: [(Vertex, Vertex); 2]| {
                for p in remove {
                    *count.get_mut(&key(p.0, p.1)).unwrap() -= 1;
                }
                for p in add {
                    *count.entry(key(p.0, p.1)).or_default() += 1;
                }
            };
            undo([x, y], [pi, pj]);
        }
    }
    if pairs.iter().any(|&p| bad(p, &count)) {
        return Err(GeneratorError::PairingStuck);
    }
    Ok(())
}

/// A union of regular graphs with a few recorded edge modifications.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PerturbedInstance {
    pub graph: Graph,
    pub ground_truth_components: Vec<Component>,
    /// Replaying the inverse of this on `graph` gives the pristine union.
    pub applied_mods: EditScript,
    /// `2 · d_max · |applied_mods|`.
    pub expected_separation_bound: usize,
}

impl PerturbedInstance {
    pub fn pristine(&self) -> Graph {
        crate::graph::apply_script(&self.graph, &self.applied_mods.inverse())
            .expect("inverse of applied mods replays")
    }
}

/// Disjoint union of random `(n, d)`-regular blocks (vertices numbered block
/// by block), followed by `k` modifications, each an Add or a Remove with
/// equal probability, on pairs not touched before.
pub fn union_plus_perturbation(
    components: &[(usize, usize)],
    k: usize,
    seed: u64,
) -> Result<PerturbedInstance, GeneratorError> {
    perturb(components, k, seed, None)
}

/// As [`union_plus_perturbation`], but Adds only join vertices of degree
/// below `cap`, so the maximum degree never exceeds `max(cap, d_max)`.
pub fn union_plus_perturbation_capped(
    components: &[(usize, usize)],
    k: usize,
    seed: u64,
    cap: usize,
) -> Result<PerturbedInstance, GeneratorError> {
    perturb(components, k, seed, Some(cap))
}

fn perturb(
    components: &[(usize, usize)],
    k: usize,
    seed: u64,
    cap: Option<usize>,
) -> Result<PerturbedInstance, GeneratorError> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let (g, truth) = disjoint_union(components, &mut rng)?;
    let d_max = components.iter().map(|&(_, d)| d).max().unwrap_or(0);
    let n = g.n();
    let mut ed = Editor::new(g);
    let mut touched: BTreeSet<Edge> = BTreeSet::new();
    let tries = 200 * (k + 1) + 20 * n;
    for _ in 0..tries {
        if ed.ops_done() == k || n < 2 {
            break;
        }
        let a = rng.gen_range(0..n);
        let b = rng.gen_range(0..n);
        if a == b || touched.contains(&Edge::new(a, b)) {
            continue;
        }
        let want_add = rng.gen_bool(0.5);
        let g = ed.graph();
        if g.has_edge(a, b) {
            if want_add {
                continue;
            }
            ed.remove(a, b).expect("edge present");
        } else {
            if !want_add {
                // Draw an existing edge instead.
                let Some(e) = random_edge(g, &touched, &mut rng) else {
                    continue;
                };
                touched.insert(e);
                ed.remove(e.lo(), e.hi()).expect("edge present");
                continue;
            }
            if let Some(c) = cap {
                if g.degree(a) >= c || g.degree(b) >= c {
                    continue;
                }
            }
            ed.add(a, b).expect("edge absent");
        }
        touched.insert(Edge::new(a, b));
    }
    if ed.ops_done() < k {
        return Err(GeneratorError::NotEnoughModifications {
            requested: k,
            applied: ed.ops_done(),
        });
    }
    let (graph, applied_mods) = ed.into_parts();
    Ok(PerturbedInstance {
        graph,
        ground_truth_components: truth,
        expected_separation_bound: 2 * d_max * k,
        applied_mods,
    })
}

fn random_edge(g: &Graph, touched: &BTreeSet<Edge>, rng: &mut ChaCha8Rng) -> Option<Edge> {
    if g.m() == 0 {
        return None;
    }
    for _ in 0..64 {
        let v = rng.gen_range(0..g.n());
        let ns = g.neighbors(v);
        if ns.is_empty() {
            continue;
        }
        let e = Edge::new(v, ns[rng.gen_range(0..ns.len())]);
        if !touched.contains(&e) {
            return Some(e);
        }
    }
    None
}

fn disjoint_union(
    components: &[(usize, usize)],
    rng: &mut ChaCha8Rng,
) -> Result<(Graph, Vec<Component>), GeneratorError> {
    let total = components.iter().map(|&(n, _)| n).sum();
    let mut g = Graph::empty(total);
    let mut truth = Vec::new();
    let mut offset = 0;
    for &(n, d) in components {
        let block = random_regular_with(n, d, rng)?;
        for e in block.edges() {
            g.apply_in_place(EdgeOp::add(e.lo() + offset, e.hi() + offset))
                .expect("blocks are disjoint");
        }
        truth.push(Component {
            vertices: (offset..offset + n).collect(),
            degree: d,
        });
        offset += n;
    }
    Ok((g, truth))
}

/// Vertices of degree `d` required for maximum degree `delta` and `k`
/// separation vertices: `2d + d² + d³ + k·Δ!`, saturating.
pub fn hypothesis_requirement(d: usize, delta: usize, k: usize) -> u128 {
    let fact: u128 = (1..=delta as u128).product();
    let d = d as u128;
    (2 * d + d * d + d * d * d).saturating_add((k as u128).saturating_mul(fact))
}

/// A perturbed union with maximum degree `delta` padded with pristine
/// regular blocks until every degree `3 < d ≤ delta` has enough vertices for
/// the measured separation count. Padding never changes that count.
pub fn hypothesis_instance(
    components: &[(usize, usize)],
    k: usize,
    seed: u64,
    delta: usize,
) -> Result<PerturbedInstance, GeneratorError> {
    let mut inst = union_plus_perturbation_capped(components, k, seed, delta)?;
    let sep = separation_vertices(&inst.graph).k;
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x9e37_79b9_7f4a_7c15);
    for d in 4..=delta {
        let need = hypothesis_requirement(d, delta, sep) as usize;
        let have = inst.graph.count_degree(d);
        if have >= need {
            continue;
        }
        let mut size = (need - have).max(d + 1);
        if (size * d) % 2 == 1 {
            size += 1;
        }
        let block = random_regular_with(size, d, &mut rng)?;
        let offset = inst.graph.n();
        let mut g = inst.graph.padded(size);
        for e in block.edges() {
            g.apply_in_place(EdgeOp::add(e.lo() + offset, e.hi() + offset))
                .expect("fresh block");
        }
        inst.graph = g;
        inst.ground_truth_components.push(Component {
            vertices: (offset..offset + size).collect(),
            degree: d,
        });
    }
    Ok(inst)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{certify_regular_union, RegularityCertificate};

    #[test]
    fn k4_is_unique() {
        let k4 = Graph::from_edges(4, [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)]).unwrap();
        for seed in 0..5 {
            assert_eq!(random_regular(4, 3, seed).unwrap(), k4);
        }
    }

    #[test]
    fn cycles_on_eight() {
        let g = random_regular(8, 2, 7).unwrap();
        assert_eq!(
            g.degree_histogram().into_iter().collect::<Vec<_>>(),
            vec![(2, 8)]
        );
    }

    #[test]
    fn infeasible() {
        assert_eq!(
            random_regular(5, 3, 0),
            Err(GeneratorError::InfeasibleDegreeSequence { n: 5, d: 3 })
        );
        assert!(random_regular(3, 3, 0).is_err());
        assert_eq!(random_regular(0, 0, 0).unwrap().n(), 0);
    }

    #[test]
    fn dense_case_needs_repair_but_succeeds() {
        for seed in 0..3 {
            let g = random_regular(40, 9, seed).unwrap();
            assert!(g.degrees().iter().all(|&d| d == 9));
        }
    }

    #[test]
    fn repair_path_produces_simple_graph() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        // Stubs matched in sorted order: every vertex starts with loops.
        let stubs: Vec<Vertex> = (0..30).flat_map(|v| std::iter::repeat_n(v, 4)).collect();
        let mut pairs: Vec<(Vertex, Vertex)> = stubs.chunks(2).map(|c| (c[0], c[1])).collect();
        repair_pairs(&mut pairs, &mut rng).unwrap();
        let g = Graph::from_edges(30, pairs).unwrap();
        assert!(g.degrees().iter().all(|&d| d == 4));
    }

    #[test]
    fn deterministic() {
        assert_eq!(
            random_regular(30, 3, 11).unwrap(),
            random_regular(30, 3, 11).unwrap()
        );
        let a = union_plus_perturbation(&[(20, 3), (20, 3)], 4, 5).unwrap();
        let b = union_plus_perturbation(&[(20, 3), (20, 3)], 4, 5).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn perturbation_records_ground_truth() {
        let inst = union_plus_perturbation(&[(20, 3), (20, 3)], 4, 1).unwrap();
        assert_eq!(inst.applied_mods.len(), 4);
        assert_eq!(inst.expected_separation_bound, 24);
        assert!(separation_vertices(&inst.graph).k <= 24);
        let pristine = inst.pristine();
        match certify_regular_union(&pristine) {
            RegularityCertificate::Regular(_) => {}
            other => panic!("pristine union irregular: {other:?}"),
        }
        let zero = union_plus_perturbation(&[(8, 2), (8, 3)], 0, 9).unwrap();
        assert!(separation_vertices(&zero.graph).is_empty());
    }

    #[test]
    fn cap_bounds_degree() {
        for seed in 0..20 {
            let inst = union_plus_perturbation_capped(&[(12, 2), (12, 3)], 6, seed, 3).unwrap();
            assert!(inst.graph.max_degree() <= 3);
        }
    }

    #[test]
    fn requirement_arithmetic() {
        assert_eq!(hypothesis_requirement(4, 4, 1), 112);
        assert_eq!(hypothesis_requirement(4, 5, 2), 328);
        assert_eq!(hypothesis_requirement(5, 5, 0), 160);
    }

    #[test]
    fn padding_keeps_separation_count() {
        let inst = hypothesis_instance(&[(30, 4), (20, 3)], 2, 4, 4).unwrap();
        let base = union_plus_perturbation_capped(&[(30, 4), (20, 3)], 2, 4, 4).unwrap();
        let k = separation_vertices(&base.graph).k;
        assert_eq!(separation_vertices(&inst.graph).k, k);
        assert!(inst.graph.count_degree(4) as u128 >= hypothesis_requirement(4, 4, k));
    }
}
