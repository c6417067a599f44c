//! Regularization for arbitrary maximum degree.
//!
//! Each level splits off the top-degree stratum, lifts its deficient
//! vertices to near-regular, finishes it to regular, and recurses on the
//! remainder, whose maximum degree is strictly smaller. Levels with maximum
//! degree at most 3 hand over to [`crate::deg3`].

mod cut;
mod promote;
mod zone;

use std::fmt;

use thiserror::Error;

use crate::deg3::{regularize_maxdeg3, Deg3Error};
use crate::generators::hypothesis_requirement;
use crate::graph::{
    certify_regular_union, separation_vertices, EditScript, Editor, Graph, GraphError,
    RegularityCertificate, Vertex,
};

pub use cut::{cut_top_degree, DecompositionSplit, SplitViolation};
pub use promote::{
    finish_min_vertices, finish_regularization, promote_min_vertices, promote_to_near_regular,
};
pub use zone::{find_distant_edges, rewires_needed, ExclusionZone};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GeneralError {
    #[error("{have} vertices, at least {need} required")]
    TooFewVertices { have: usize, need: usize },
    #[error("precondition violated: {0}")]
    PreconditionViolated(String),
    #[error("needed {requested} far edges, found {found}")]
    NotEnoughDistantEdges { requested: usize, found: usize },
    #[error("vertex-count hypothesis fails:\n{0}")]
    HypothesisFailed(HypothesisReport),
    #[error("no repair found: {0}")]
    Stuck(String),
    #[error(transparent)]
    Deg3(#[from] Deg3Error),
    #[error(transparent)]
    Graph(#[from] GraphError),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HypothesisRow {
    pub degree: usize,
    pub required: u128,
    pub actual: usize,
}

impl HypothesisRow {
    pub fn passes(&self) -> bool {
        self.actual as u128 >= self.required
    }
}

/// Per-degree vertex counts against `2d + d² + d³ + k·Δ!` for `3 < d ≤ Δ`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HypothesisReport {
    pub delta: usize,
    pub k: usize,
    pub rows: Vec<HypothesisRow>,
}

impl HypothesisReport {
    pub fn passes(&self) -> bool {
        self.rows.iter().all(HypothesisRow::passes)
    }
}

impl fmt::Display for HypothesisReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "max degree {}, k = {}", self.delta, self.k)?;
        for r in &self.rows {
            let mark = if r.passes() { "ok" } else { "SHORT" };
            writeln!(
                f,
                "  degree {}: have {}, need {} [{mark}]",
                r.degree, r.actual, r.required
            )?;
        }
        Ok(())
    }
}

pub fn hypothesis_check(g: &Graph) -> HypothesisReport {
    let delta = g.max_degree();
    let k = separation_vertices(g).k;
    let rows = (4..=delta)
        .map(|d| HypothesisRow {
            degree: d,
            required: hypothesis_requirement(d, delta, k),
            actual: g.count_degree(d),
        })
        .collect();
    HypothesisReport { delta, k, rows }
}

/// `4(Δ+1)!·k + 5Δ²`, saturating.
pub fn general_bound(delta: usize, k: usize) -> u128 {
    let fact = (1..=delta as u128 + 1).fold(1u128, u128::saturating_mul);
    let d = delta as u128;
    4u128
        .saturating_mul(fact)
        .saturating_mul(k as u128)
        .saturating_add(5 * d * d)
}

/// Ops spent on one level of the recursion.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LevelCost {
    /// Maximum degree of the part handled at this level.
    pub delta: usize,
    /// Separation count measured on that part.
    pub k_measured: usize,
    /// Separation allowance carried down the recursion: the input `k` at
    /// the first level, then `k(Δ - 1)` from the level above.
    pub k_recursion: usize,
    pub ops: usize,
    /// `4kΔ + 4Δ` for `Δ ≥ 4`, `4k + 9` below, with `k = k_recursion`.
    pub bound: usize,
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct RegularizeOptions {
    /// Run even when the vertex-count hypothesis fails; the bound is then
    /// not claimed.
    pub best_effort: bool,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GeneralOutcome {
    pub script: EditScript,
    /// `None` when the hypothesis failed and the run was best-effort.
    pub claimed_bound: Option<u128>,
    pub final_graph: Graph,
    pub certificate: RegularityCertificate,
    pub per_level_costs: Vec<LevelCost>,
    pub hypothesis: HypothesisReport,
}

fn level_bound(delta: usize, k: usize) -> usize {
    if delta <= 3 {
        k.saturating_mul(4).saturating_add(9)
    } else {
        k.saturating_mul(delta)
            .saturating_mul(4)
            .saturating_add(4 * delta)
    }
}

/// Regularizes `g`, recursing on strictly decreasing maximum degree.
///
/// An input with no separation vertices is returned unchanged whether or
/// not the vertex-count hypothesis holds.
pub fn regularize(g: &Graph, opts: RegularizeOptions) -> Result<GeneralOutcome, GeneralError> {
    let hypothesis = hypothesis_check(g);
    let delta = hypothesis.delta;
    let k = hypothesis.k;
    let holds = hypothesis.passes();
    if k == 0 {
        return Ok(GeneralOutcome {
            script: EditScript::new(),
            claimed_bound: Some(0),
            final_graph: g.clone(),
            certificate: certify_regular_union(g),
            per_level_costs: Vec::new(),
            hypothesis,
        });
    }
    if !holds && !opts.best_effort {
        return Err(GeneralError::HypothesisFailed(hypothesis));
    }
    let claimed_bound = match (delta <= 3, holds) {
        (true, _) => Some(4 * k as u128 + 9),
        (false, true) => Some(general_bound(delta, k)),
        (false, false) => None,
    };
    let enforce = holds;

    let mut ed = Editor::new(g.clone());
    let mut active: Vec<Vertex> = (0..g.n()).collect();
    let mut k_rec = k;
    let mut levels = Vec::new();
    loop {
        let (part, map) = ed.graph().induced(&active);
        let d = part.max_degree();
        let k_here = separation_vertices(&part).k;
        if k_here == 0 {
            break;
        }
        let start = ed.ops_done();
        if d <= 3 {
            let out = regularize_maxdeg3(&part)?;
            ed.apply_all(&out.script.relabeled(&map))?;
            levels.push(LevelCost {
                delta: d,
                k_measured: k_here,
                k_recursion: k_rec,
                ops: ed.ops_done() - start,
                bound: level_bound(d, k_rec),
            });
            break;
        }
        let split = cut_top_degree(&part);
        ed.apply_all(&split.cut_script.relabeled(&map))?;
        let (top, top_map) = split.g_top();
        let lift = promote::promote(&top, enforce)?;
        let lifted = crate::graph::apply_script(&top, &lift)
            .map_err(|e| GeneralError::Stuck(e.to_string()))?;
        let done = promote::finish(&lifted, enforce)?;
        let to_parent: Vec<Vertex> = top_map.iter().map(|&i| map[i]).collect();
        ed.apply_all(&lift.relabeled(&to_parent))?;
        ed.apply_all(&done.relabeled(&to_parent))?;
        levels.push(LevelCost {
            delta: d,
            k_measured: k_here,
            k_recursion: k_rec,
            ops: ed.ops_done() - start,
            bound: level_bound(d, k_rec),
        });
        k_rec = k_rec.saturating_mul(d - 1);
        active = split.rest.iter().map(|&i| map[i]).collect();
    }

    let (final_graph, script) = ed.into_parts();
    let certificate = certify_regular_union(&final_graph);
    if let RegularityCertificate::Irregular(e) = &certificate {
        return Err(GeneralError::Stuck(format!(
            "edge {e} still joins unequal degrees"
        )));
    }
    Ok(GeneralOutcome {
        script,
        claimed_bound,
        final_graph,
        certificate,
        per_level_costs: levels,
        hypothesis,
    })
}
