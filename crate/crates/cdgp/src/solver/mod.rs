//! Branch-prune-and-bound search engine for distance coloring instances.
//!
//! The engine walks the graph from a start vertex, colors one vertex per
//! tree node, and backtracks. Three strategies differ in how candidate
//! colors are produced and when feasibility is checked:
//!
//! * [`Strategy::Prev`] derives at most two candidates from the single
//!   reference vertex (`x(i) + d` and, when it stays positive, `x(i) - d`)
//!   and verifies the just-colored vertex against all colored neighbors at
//!   every step.
//! * [`Strategy::PrevFeasCheckFull`] uses the same candidates but defers
//!   the feasibility check to total colorings, so its tree is a superset
//!   of `Prev`'s.
//! * [`Strategy::Select`] computes the single smallest color in `[1, ub]`
//!   satisfying the distance system over all colored neighbors; no
//!   explicit feasibility check is needed.
//!
//! When the walk has no uncolored neighbor it restarts from vertices whose
//! predecessor was recorded when a neighbor was colored. When a total
//! coloring improves on the incumbent, the incumbent and the upper bound
//! are updated; partial colorings whose span reaches the bound are cut.
//!
//! By default the search is repeated from every start vertex (the start is
//! forced to color 1, so a single fixed start can miss optima whose lowest
//! color sits elsewhere); pass an explicit start vertex to reproduce a
//! single-origin trace.
//!
//! One [`solve`] call is strictly single-threaded; distinct calls on shared
//! instances may run in parallel, and all result types are plain values.

mod search;

use crate::embedding::{check_embedding, Embedding};
use crate::graph::{Color, VertexId, Weight};
use crate::instance::{ConstraintOp, Instance, Objective};
use std::time::Duration;
use thiserror::Error;

/// Color-selection / feasibility-check strategy.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Strategy {
    /// Candidates from the previous vertex; feasibility checked per step.
    Prev,
    /// Candidates from the previous vertex; feasibility checked at leaves.
    PrevFeasCheckFull,
    /// Single smallest color satisfying the system over colored neighbors.
    Select,
}

impl Strategy {
    pub const ALL: [Strategy; 3] = [
        Strategy::Prev,
        Strategy::PrevFeasCheckFull,
        Strategy::Select,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Strategy::Prev => "prev",
            Strategy::PrevFeasCheckFull => "prev-feascheckfull",
            Strategy::Select => "select",
        }
    }
}

impl std::str::FromStr for Strategy {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "prev" => Ok(Strategy::Prev),
            "prev-feascheckfull" | "feascheckfull" => Ok(Strategy::PrevFeasCheckFull),
            "select" => Ok(Strategy::Select),
            other => Err(format!(
                "unknown strategy `{other}` (expected prev, prev-feascheckfull or select)"
            )),
        }
    }
}

/// Search budget; exhaustion yields [`SolveOutcome::TimedOut`], not an error.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct Budget {
    pub time_limit: Option<Duration>,
    pub node_limit: Option<u64>,
}

impl Budget {
    pub const UNLIMITED: Budget = Budget {
        time_limit: None,
        node_limit: None,
    };

    pub fn time_limit_secs(secs: f64) -> Budget {
        Budget {
            time_limit: Some(Duration::from_secs_f64(secs)),
            node_limit: None,
        }
    }
}

/// Full parameter set for one [`solve`] call.
#[derive(Debug, Clone, Copy)]
pub struct SolveOptions {
    pub strategy: Strategy,
    pub objective: Objective,
    pub budget: Budget,
    /// Restrict the search to this single start vertex. `None` sweeps all
    /// start vertices, which is required for exact optimization.
    pub start_vertex: Option<VertexId>,
    /// Override the initial upper bound. Defaults to `2 + sum of weights`,
    /// one above the largest color any chain of exact offsets can reach.
    pub initial_ub: Option<Color>,
}

impl SolveOptions {
    pub fn new(strategy: Strategy, objective: Objective) -> Self {
        SolveOptions {
            strategy,
            objective,
            budget: Budget::UNLIMITED,
            start_vertex: None,
            initial_ub: None,
        }
    }
}

/// Counters and timings collected during one solve call.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct SearchStats {
    /// Color assignments performed.
    pub nodes: u64,
    /// Assignments rejected by a feasibility check.
    pub prunes: u64,
    /// Assignments rejected because the partial span reached the bound.
    pub bounds: u64,
    /// Valid total colorings found (incumbent updates in optimization).
    pub solutions: u64,
    /// Wall-clock time until the first valid total coloring, if any.
    pub time_to_first: Option<Duration>,
    /// Wall-clock time of the whole call.
    pub time_total: Duration,
}

/// Final outcome of a solve call.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SolveOutcome {
    Feasible {
        embedding: Embedding,
        span: Color,
    },
    Infeasible,
    /// Budget exhausted; carries the best embedding found so far, if any.
    TimedOut {
        best: Option<Embedding>,
    },
}

impl SolveOutcome {
    pub fn is_feasible(&self) -> bool {
        matches!(self, SolveOutcome::Feasible { .. })
    }

    pub fn span(&self) -> Option<Color> {
        match self {
            SolveOutcome::Feasible { span, .. } => Some(*span),
            _ => None,
        }
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SolveError {
    #[error("start vertex {v} outside 0..{n}")]
    StartVertexOutOfRange { v: VertexId, n: usize },
}

/// Ordered candidate colors for vertex `j` derived from the reference
/// vertex `i` (at most two, lower color first).
///
/// With no reference the only candidate is color 1. Otherwise the
/// candidates are `x(i) - d` (only when `x(i) > d`, so the color stays
/// positive) and `x(i) + d`.
///
/// `i`, when present, must be colored and adjacent to `j`.
pub fn select_colors_prev(
    inst: &Instance,
    x: &Embedding,
    i: Option<VertexId>,
    j: VertexId,
) -> Vec<Color> {
    match i {
        None => vec![1],
        Some(i) => {
            let xi = x.get(i).expect("reference vertex must be colored");
            let d = inst
                .graph()
                .weight(i, j)
                .expect("reference vertex must be adjacent");
            prev_candidates(xi, d).into_iter().flatten().collect()
        }
    }
}

#[inline]
pub(crate) fn prev_candidates(xi: Color, d: Weight) -> [Option<Color>; 2] {
    if xi > d {
        [Some(xi - d), Some(xi + d)]
    } else {
        [Some(xi + d), None]
    }
}

/// Smallest color in `[1, ub]` satisfying the distance constraint against
/// every colored neighbor of `j`, or `None` when the system has no solution
/// in range. With no colored neighbors the system is vacuous and 1 wins.
pub fn select_colors_system(
    inst: &Instance,
    x: &Embedding,
    j: VertexId,
    ub: Color,
) -> Option<Color> {
    let g = inst.graph();
    let op = inst.op();
    let colored: Vec<(Color, Weight)> = g
        .neighbors(j)
        .iter()
        .filter_map(|&(w, d)| x.get(w).map(|c| (c, d)))
        .collect();
    system_scan(&colored, op, ub)
}

#[inline]
pub(crate) fn system_scan(
    colored: &[(Color, Weight)],
    op: ConstraintOp,
    ub: Color,
) -> Option<Color> {
    (1..=ub).find(|&k| colored.iter().all(|&(c, d)| op.holds(c.abs_diff(k), d)))
}

/// Direct distance coloring feasibility: true iff the just-colored vertex
/// `i` satisfies its edge constraint against every colored neighbor.
pub fn ddcf_check(inst: &Instance, x: &Embedding, i: VertexId) -> bool {
    let xi = x.get(i).expect("vertex must be colored");
    let op = inst.op();
    inst.graph()
        .neighbors(i)
        .iter()
        .all(|&(k, d)| match x.get(k) {
            Some(xk) => op.holds(xi.abs_diff(xk), d),
            None => true,
        })
}

/// Runs the branch-prune-and-bound search.
///
/// Decision objective: returns at the first valid total coloring, or
/// `Infeasible` once the tree is exhausted (no bounding is applied).
/// Minimum-span objective: exhausts the tree subject to bounding and
/// returns the incumbent.
///
/// On a disconnected graph the walk can never reach vertices outside the
/// start component, so the search reports `Infeasible`; callers should
/// check connectivity first.
pub fn solve(
    inst: &Instance,
    opts: &SolveOptions,
) -> Result<(SolveOutcome, SearchStats), SolveError> {
    let n = inst.graph().vertex_count();
    if let Some(s) = opts.start_vertex {
        if s >= n {
            return Err(SolveError::StartVertexOutOfRange { v: s, n });
        }
    }
    let (outcome, stats) = search::run(inst, opts);
    if let SolveOutcome::Feasible { embedding, span } = &outcome {
        let check = check_embedding(inst, embedding).expect("engine produces total embeddings");
        assert!(check.is_valid(), "engine returned an invalid embedding");
        assert_eq!(embedding.span().unwrap(), *span);
    }
    if let SolveOutcome::TimedOut {
        best: Some(embedding),
    } = &outcome
    {
        let check = check_embedding(inst, embedding).expect("engine produces total embeddings");
        assert!(check.is_valid(), "engine returned an invalid incumbent");
    }
    Ok((outcome, stats))
}
