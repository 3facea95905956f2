//! The recursive search behind [`super::solve`].

use super::{prev_candidates, Budget, SearchStats, SolveOptions, SolveOutcome, Strategy};
use crate::embedding::Embedding;
use crate::graph::{Color, VertexId, Weight, WeightedGraph};
use crate::instance::{ConstraintOp, Instance, Objective};
use std::time::Instant;

/// Budget checks hit the clock only every this many nodes.
const TIME_CHECK_INTERVAL: u64 = 1024;

struct Search<'a> {
    graph: &'a WeightedGraph,
    op: ConstraintOp,
    strategy: Strategy,
    objective: Objective,
    /// Color per vertex; 0 means unassigned.
    colors: Vec<Color>,
    /// Recorded predecessor per vertex (first colored neighbor), reverted on
    /// backtrack so restart references are always currently colored.
    predec: Vec<Option<VertexId>>,
    mark_trail: Vec<VertexId>,
    colored: usize,
    span: Color,
    ub: Color,
    incumbent: Option<Vec<Color>>,
    stats: SearchStats,
    started: Instant,
    deadline: Option<Instant>,
    node_limit: Option<u64>,
    budget_exhausted: bool,
    decision_found: bool,
}

pub(super) fn run(inst: &Instance, opts: &SolveOptions) -> (SolveOutcome, SearchStats) {
    let g = inst.graph();
    let n = g.vertex_count();
    let started = Instant::now();
    let Budget {
        time_limit,
        node_limit,
    } = opts.budget;
    let initial_ub = opts.initial_ub.unwrap_or_else(|| 2 + g.total_weight());

    let mut search = Search {
        graph: g,
        op: inst.op(),
        strategy: opts.strategy,
        objective: opts.objective,
        colors: vec![0; n],
        predec: vec![None; n],
        mark_trail: Vec::with_capacity(n),
        colored: 0,
        span: 0,
        ub: initial_ub,
        incumbent: None,
        stats: SearchStats::default(),
        started,
        deadline: time_limit.map(|t| started + t),
        node_limit,
        budget_exhausted: false,
        decision_found: false,
    };

    match opts.start_vertex {
        Some(s) => {
            search.visit(None, s);
        }
        None => {
            for s in 0..n {
                if search.visit(None, s) {
                    break;
                }
            }
        }
    }

    search.stats.time_total = started.elapsed();
    let incumbent = search
        .incumbent
        .take()
        .map(|colors| Embedding::total(&colors).expect("colors are positive"));
    let outcome = if search.budget_exhausted {
        SolveOutcome::TimedOut { best: incumbent }
    } else {
        match incumbent {
            Some(embedding) => {
                let span = embedding.span().expect("total embedding");
                SolveOutcome::Feasible { embedding, span }
            }
            None => SolveOutcome::Infeasible,
        }
    };
    (outcome, search.stats)
}

impl<'a> Search<'a> {
    /// Explores every coloring of `j` given the current partial state.
    /// `reference` is the walk predecessor for extension steps; restarts
    /// pass `None` and fall back to the recorded predecessor. Returns true
    /// when the whole search must unwind (decision found or budget hit).
    fn visit(&mut self, reference: Option<VertexId>, j: VertexId) -> bool {
        // Record j as predecessor of its not-yet-marked neighbors so the
        // search can restart from them later with a colored reference.
        let trail_base = self.mark_trail.len();
        for &(k, _) in self.graph.neighbors(j) {
            if self.predec[k].is_none() {
                self.predec[k] = Some(j);
                self.mark_trail.push(k);
            }
        }

        let reference = reference.or(self.predec[j]);
        let mut stop = false;

        // Candidate colors, lowest first. Prev-style strategies yield up to
        // two exact offsets from the reference; Select yields at most one.
        let candidates: [Option<Color>; 2] = match self.strategy {
            Strategy::Prev | Strategy::PrevFeasCheckFull => match reference {
                None => [Some(1), None],
                Some(i) => {
                    let xi = self.colors[i];
                    debug_assert!(xi > 0, "reference vertex must be colored");
                    let d = self.weight(i, j);
                    prev_candidates(xi, d)
                }
            },
            Strategy::Select => {
                // Same scan as `select_colors_system`, inlined over the
                // adjacency list to avoid per-node allocation.
                let found = (1..=self.ub).find(|&k| {
                    self.graph.neighbors(j).iter().all(|&(w, d)| {
                        let c = self.colors[w];
                        c == 0 || self.op.holds(c.abs_diff(k), d)
                    })
                });
                [found, None]
            }
        };

        'colors: for color in candidates.into_iter().flatten() {
            if self.budget_hit() {
                stop = true;
                break 'colors;
            }
            let saved_span = self.span;
            self.colors[j] = color;
            self.colored += 1;
            self.span = self.span.max(color);
            self.stats.nodes += 1;

            // Bound first, then prune, mirroring the enumeration discipline;
            // the decision objective stops at the first solution and never
            // bounds.
            if self.objective == Objective::MinimizeSpan && self.span >= self.ub {
                self.stats.bounds += 1;
                self.unassign(j, saved_span);
                continue 'colors;
            }
            if self.strategy == Strategy::Prev && !self.ddcf(j) {
                self.stats.prunes += 1;
                self.unassign(j, saved_span);
                continue 'colors;
            }

            if self.colored == self.graph.vertex_count() {
                if self.strategy == Strategy::PrevFeasCheckFull && !self.total_valid() {
                    self.stats.prunes += 1;
                    self.unassign(j, saved_span);
                    continue 'colors;
                }
                debug_assert!(self.total_valid());
                self.record_solution();
                self.unassign(j, saved_span);
                if self.decision_found {
                    stop = true;
                    break 'colors;
                }
                continue 'colors;
            }

            // Extend the walk through each uncolored neighbor; when none is
            // left, restart from any uncolored vertex with a recorded
            // predecessor.
            let mut has_uncolored_neighbor = false;
            for idx in 0..self.graph.neighbors(j).len() {
                let (k, _) = self.graph.neighbors(j)[idx];
                if self.colors[k] == 0 {
                    has_uncolored_neighbor = true;
                    if self.visit(Some(j), k) {
                        stop = true;
                        break;
                    }
                }
            }
            if !stop && !has_uncolored_neighbor {
                for k in 0..self.graph.vertex_count() {
                    if self.colors[k] == 0 && self.predec[k].is_some() && self.visit(None, k) {
                        stop = true;
                        break;
                    }
                }
            }

            self.unassign(j, saved_span);
            if stop {
                break 'colors;
            }
        }

        for &k in &self.mark_trail[trail_base..] {
            self.predec[k] = None;
        }
        self.mark_trail.truncate(trail_base);
        stop
    }

    #[inline]
    fn unassign(&mut self, j: VertexId, saved_span: Color) {
        self.colors[j] = 0;
        self.colored -= 1;
        self.span = saved_span;
    }

    #[inline]
    fn weight(&self, i: VertexId, j: VertexId) -> Weight {
        self.graph
            .weight(i, j)
            .expect("reference vertex is adjacent")
    }

    /// Just-colored vertex `j` against all colored neighbors.
    fn ddcf(&self, j: VertexId) -> bool {
        let xj = self.colors[j];
        self.graph.neighbors(j).iter().all(|&(k, d)| {
            let xk = self.colors[k];
            xk == 0 || self.op.holds(xj.abs_diff(xk), d)
        })
    }

    /// Every edge of the (total) coloring.
    fn total_valid(&self) -> bool {
        self.graph.edges().iter().all(|e| {
            self.op
                .holds(self.colors[e.u].abs_diff(self.colors[e.v]), e.d)
        })
    }

    fn record_solution(&mut self) {
        self.stats.solutions += 1;
        if self.stats.time_to_first.is_none() {
            self.stats.time_to_first = Some(self.started.elapsed());
        }
        match self.objective {
            Objective::Decision => {
                self.incumbent = Some(self.colors.clone());
                self.decision_found = true;
            }
            Objective::MinimizeSpan => {
                // The bound check guarantees strict improvement.
                assert!(self.span < self.ub, "incumbent span must strictly decrease");
                self.incumbent = Some(self.colors.clone());
                self.ub = self.span;
            }
        }
    }

    fn budget_hit(&mut self) -> bool {
        if self.budget_exhausted {
            return true;
        }
        if let Some(limit) = self.node_limit {
            if self.stats.nodes >= limit {
                self.budget_exhausted = true;
                return true;
            }
        }
        if let Some(deadline) = self.deadline {
            if self.stats.nodes.is_multiple_of(TIME_CHECK_INTERVAL) && Instant::now() >= deadline {
                self.budget_exhausted = true;
                return true;
            }
        }
        false
    }
}
