//! Exhaustive reference solver for small instances.
//!
//! Ground truth for everything else in the crate: it enumerates complete
//! candidate colorings and returns the exact minimum span, or `Infeasible`
//! when no embedding with span at most the cap exists.
//!
//! A cap of `1 + sum of all edge weights` gives a definitive verdict for
//! both constraint types. For equalities: translate any valid embedding so
//! its minimum color is 1 (validity depends only on color differences);
//! along a spanning walk consecutive colors differ by exactly the edge
//! weight, so no color exceeds 1 plus the total weight. For inequalities:
//! sort the colors of a minimal valid embedding; every gap between
//! consecutive colors must be covered by an edge whose constraint is tight,
//! otherwise all higher colors could shift down by one, so the total range
//! is at most the sum of weights.
//!
//! Enumeration is exhaustive but not naive: equality instances enumerate
//! the two exact offsets per vertex relative to an already-placed neighbor
//! (every valid embedding is reached this way), and inequality instances
//! take the minimum of greedy lowest-color completions over all vertex
//! orders, which attains the optimum for the color-sorted order of any
//! optimal embedding.

use crate::embedding::{check_embedding, CheckResult, Embedding};
use crate::graph::{Color, VertexId};
use crate::instance::{ConstraintOp, Instance};
use thiserror::Error;

/// Guard against accidental exponential blowups.
pub const DEFAULT_MAX_N: usize = 9;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum OracleError {
    #[error("instance has {n} vertices; oracle limit is {limit} (raise the limit explicitly)")]
    TooLarge { n: usize, limit: usize },
    #[error("span cap must be at least 1")]
    ZeroCap,
}

/// Outcome of an exhaustive run.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum OracleOutcome {
    /// Minimum span over all valid embeddings with span <= cap, plus one
    /// witness (deterministic: the lexicographically smallest color vector
    /// among enumerated minimum-span embeddings).
    Feasible { span: Color, witness: Embedding },
    /// No valid embedding with span <= cap exists.
    Infeasible,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OracleResult {
    pub outcome: OracleOutcome,
    /// Number of complete candidate colorings examined.
    pub explored: u64,
}

impl OracleResult {
    pub fn is_feasible(&self) -> bool {
        matches!(self.outcome, OracleOutcome::Feasible { .. })
    }

    pub fn span(&self) -> Option<Color> {
        match &self.outcome {
            OracleOutcome::Feasible { span, .. } => Some(*span),
            OracleOutcome::Infeasible => None,
        }
    }
}

/// Cap large enough to make an `Infeasible` verdict definitive.
pub fn definitive_span_cap(inst: &Instance) -> Color {
    1 + inst.graph().total_weight()
}

/// Exhaustive solve with the default vertex limit of [`DEFAULT_MAX_N`].
pub fn oracle_solve(inst: &Instance, span_cap: Color) -> Result<OracleResult, OracleError> {
    oracle_solve_with_limit(inst, span_cap, DEFAULT_MAX_N)
}

/// Exhaustive solve with an explicit vertex limit.
pub fn oracle_solve_with_limit(
    inst: &Instance,
    span_cap: Color,
    max_n: usize,
) -> Result<OracleResult, OracleError> {
    let n = inst.graph().vertex_count();
    if n > max_n {
        return Err(OracleError::TooLarge { n, limit: max_n });
    }
    if span_cap == 0 {
        return Err(OracleError::ZeroCap);
    }
    let result = match inst.op() {
        ConstraintOp::Eq => solve_eq(inst, span_cap),
        ConstraintOp::Geq => solve_geq(inst, span_cap),
    };
    if let OracleOutcome::Feasible { span, witness } = &result.outcome {
        debug_assert!(*span <= span_cap);
        debug_assert_eq!(check_embedding(inst, witness).unwrap(), CheckResult::Valid);
    }
    Ok(result)
}

// ---------------------------------------------------------------------------
// Equality constraints: relative placement enumeration per component.
// ---------------------------------------------------------------------------

struct EqComponent {
    /// Vertices in BFS order; `order[0]` is the component root.
    order: Vec<VertexId>,
    /// For each position > 0: (position of an already-placed neighbor, weight).
    parent: Vec<(usize, u64)>,
    /// For each position: all (earlier position, weight) pairs to check.
    earlier: Vec<Vec<(usize, u64)>>,
}

fn eq_component(inst: &Instance, comp: &[VertexId]) -> EqComponent {
    let g = inst.graph();
    let mut pos = vec![usize::MAX; g.vertex_count()];
    let mut order = Vec::with_capacity(comp.len());
    let root = comp[0];
    order.push(root);
    pos[root] = 0;
    let mut head = 0;
    while head < order.len() {
        let v = order[head];
        head += 1;
        for &(w, _) in g.neighbors(v) {
            if pos[w] == usize::MAX {
                pos[w] = order.len();
                order.push(w);
            }
        }
    }
    let mut parent = vec![(0usize, 0u64); order.len()];
    let mut earlier = vec![Vec::new(); order.len()];
    for (i, &v) in order.iter().enumerate() {
        let mut first: Option<(usize, u64)> = None;
        for &(w, d) in g.neighbors(v) {
            let j = pos[w];
            if j < i {
                earlier[i].push((j, d));
                if first.is_none() || j < first.unwrap().0 {
                    first = Some((j, d));
                }
            }
        }
        if i > 0 {
            parent[i] = first.expect("BFS order guarantees an earlier neighbor");
        }
    }
    EqComponent {
        order,
        parent,
        earlier,
    }
}

struct EqBest {
    span: Color,
    colors: Vec<Color>,
}

fn eq_enumerate(
    comp: &EqComponent,
    rel: &mut Vec<i64>,
    depth: usize,
    explored: &mut u64,
    best: &mut Option<EqBest>,
) {
    if depth == comp.order.len() {
        *explored += 1;
        let min = *rel.iter().min().unwrap();
        let max = *rel.iter().max().unwrap();
        let span = (max - min + 1) as Color;
        let colors: Vec<Color> = rel.iter().map(|&r| (r - min + 1) as Color).collect();
        let better = match best {
            None => true,
            Some(b) => span < b.span || (span == b.span && colors < b.colors),
        };
        if better {
            *best = Some(EqBest { span, colors });
        }
        return;
    }
    let (pj, d) = comp.parent[depth];
    let base = rel[pj];
    for cand in [base - d as i64, base + d as i64] {
        let ok = comp.earlier[depth]
            .iter()
            .all(|&(j, dj)| (cand - rel[j]).unsigned_abs() == dj);
        if ok {
            rel.push(cand);
            eq_enumerate(comp, rel, depth + 1, explored, best);
            rel.pop();
        }
    }
}

fn solve_eq(inst: &Instance, span_cap: Color) -> OracleResult {
    let g = inst.graph();
    let mut explored = 0u64;
    let mut witness = vec![0 as Color; g.vertex_count()];
    let mut overall_span: Color = 0;
    for comp in g.components() {
        let layout = eq_component(inst, &comp);
        let mut best = None;
        let mut rel = Vec::with_capacity(layout.order.len());
        rel.push(0i64);
        eq_enumerate(&layout, &mut rel, 1, &mut explored, &mut best);
        let Some(best) = best else {
            return OracleResult {
                outcome: OracleOutcome::Infeasible,
                explored,
            };
        };
        for (i, &v) in layout.order.iter().enumerate() {
            witness[v] = best.colors[i];
        }
        overall_span = overall_span.max(best.span);
    }
    if overall_span > span_cap {
        return OracleResult {
            outcome: OracleOutcome::Infeasible,
            explored,
        };
    }
    let witness = Embedding::total(&witness).expect("positive colors");
    OracleResult {
        outcome: OracleOutcome::Feasible {
            span: overall_span,
            witness,
        },
        explored,
    }
}

// ---------------------------------------------------------------------------
// Inequality constraints: greedy completion minimized over all vertex orders.
// ---------------------------------------------------------------------------

/// Smallest color >= 1 outside every interval `(c - d, c + d)` of already
/// colored neighbors.
fn lowest_free_color(bands: &mut [(i64, i64)]) -> Color {
    bands.sort_unstable();
    let mut candidate = 1i64;
    for &(lo, hi) in bands.iter() {
        if candidate >= lo && candidate <= hi {
            candidate = hi + 1;
        }
    }
    candidate as Color
}

fn greedy_span(inst: &Instance, order: &[VertexId], colors: &mut [Color]) -> Color {
    let g = inst.graph();
    colors.fill(0);
    let mut span = 0;
    let mut bands: Vec<(i64, i64)> = Vec::new();
    for &v in order {
        bands.clear();
        for &(w, d) in g.neighbors(v) {
            let cw = colors[w];
            if cw != 0 {
                bands.push((cw as i64 - d as i64 + 1, cw as i64 + d as i64 - 1));
            }
        }
        let c = lowest_free_color(&mut bands);
        colors[v] = c;
        span = span.max(c);
    }
    span
}

fn solve_geq(inst: &Instance, span_cap: Color) -> OracleResult {
    let n = inst.graph().vertex_count();
    let mut order: Vec<VertexId> = (0..n).collect();
    let mut colors = vec![0 as Color; n];
    let mut explored = 0u64;
    let mut best: Option<(Color, Vec<Color>)> = None;

    // Heap's algorithm over all vertex orders.
    let mut stack = vec![0usize; n];
    let mut consider = |order: &[VertexId], colors: &mut [Color], explored: &mut u64| {
        let span = greedy_span(inst, order, colors);
        *explored += 1;
        let better = match &best {
            None => true,
            Some((s, cs)) => span < *s || (span == *s && colors[..] < cs[..]),
        };
        if better {
            best = Some((span, colors.to_vec()));
        }
    };
    consider(&order, &mut colors, &mut explored);
    let mut i = 1;
    while i < n {
        if stack[i] < i {
            if i % 2 == 0 {
                order.swap(0, i);
            } else {
                order.swap(stack[i], i);
            }
            consider(&order, &mut colors, &mut explored);
            stack[i] += 1;
            i = 1;
        } else {
            stack[i] = 0;
            i += 1;
        }
    }

    let (span, colors) = best.expect("at least one order evaluated");
    if span > span_cap {
        return OracleResult {
            outcome: OracleOutcome::Infeasible,
            explored,
        };
    }
    let witness = Embedding::total(&colors).expect("positive colors");
    OracleResult {
        outcome: OracleOutcome::Feasible { span, witness },
        explored,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::WeightedGraph;
    use crate::instance::{ConstraintOp, DistanceMode, Instance};

    fn cycle(n: usize, d: u64) -> Instance {
        let edges: Vec<_> = (0..n).map(|i| (i, (i + 1) % n, d)).collect();
        let g = WeightedGraph::build(n, &edges).unwrap();
        Instance::new(g, ConstraintOp::Eq, DistanceMode::Uniform(d)).unwrap()
    }

    fn geq_uniform(n: usize, edges: &[(usize, usize)], d: u64) -> Instance {
        let weighted: Vec<_> = edges.iter().map(|&(u, v)| (u, v, d)).collect();
        let g = WeightedGraph::build(n, &weighted).unwrap();
        Instance::new(g, ConstraintOp::Geq, DistanceMode::Uniform(d)).unwrap()
    }

    fn complete_graph(n: usize, d: u64) -> Instance {
        let mut edges = Vec::new();
        for u in 0..n {
            for v in (u + 1)..n {
                edges.push((u, v));
            }
        }
        geq_uniform(n, &edges, d)
    }

    #[test]
    fn triangle_uniform_eq_is_infeasible() {
        let res = oracle_solve(&cycle(3, 5), 16).unwrap();
        assert_eq!(res.outcome, OracleOutcome::Infeasible);
    }

    #[test]
    fn geq_triangle_unit_weights_is_three() {
        let res = oracle_solve(&complete_graph(3, 1), 4).unwrap();
        assert_eq!(res.span(), Some(3));
    }

    #[test]
    fn eq_path_minimum_span_is_four() {
        let g = WeightedGraph::build(3, &[(0, 1, 2), (1, 2, 3)]).unwrap();
        let inst = Instance::per_edge(g, ConstraintOp::Eq);
        let res = oracle_solve(&inst, 6).unwrap();
        assert_eq!(res.span(), Some(4));
        match res.outcome {
            OracleOutcome::Feasible { witness, .. } => {
                assert_eq!(
                    check_embedding(&inst, &witness).unwrap(),
                    CheckResult::Valid
                );
            }
            _ => unreachable!(),
        }
    }

    #[test]
    fn cap_excludes_larger_spans() {
        let g = WeightedGraph::build(2, &[(0, 1, 5)]).unwrap();
        let inst = Instance::per_edge(g, ConstraintOp::Eq);
        assert_eq!(
            oracle_solve(&inst, 5).unwrap().outcome,
            OracleOutcome::Infeasible
        );
        assert_eq!(oracle_solve(&inst, 6).unwrap().span(), Some(6));
    }

    #[test]
    fn translation_preserves_validity() {
        let g = WeightedGraph::build(3, &[(0, 1, 2), (1, 2, 3)]).unwrap();
        for op in [ConstraintOp::Eq, ConstraintOp::Geq] {
            let inst = Instance::per_edge(g.clone(), op);
            let res = oracle_solve(&inst, 20).unwrap();
            let OracleOutcome::Feasible { witness, .. } = res.outcome else {
                panic!()
            };
            let shifted: Vec<Color> = witness.colors().iter().map(|c| c.unwrap() + 1).collect();
            let shifted = Embedding::total(&shifted).unwrap();
            assert_eq!(
                check_embedding(&inst, &shifted).unwrap(),
                CheckResult::Valid
            );
        }
    }

    #[test]
    fn geq_unit_uniform_matches_chromatic_number() {
        // Complete graphs.
        for n in 3..=6 {
            let res = oracle_solve(&complete_graph(n, 1), 10).unwrap();
            assert_eq!(res.span(), Some(n as Color), "K{n}");
        }
        // Odd cycles need three colors.
        let c5 = geq_uniform(5, &[(0, 1), (1, 2), (2, 3), (3, 4), (4, 0)], 1);
        assert_eq!(oracle_solve(&c5, 10).unwrap().span(), Some(3));
        let c7_edges: Vec<_> = (0..7).map(|i| (i, (i + 1) % 7)).collect();
        let c7 = geq_uniform(7, &c7_edges, 1);
        assert_eq!(oracle_solve(&c7, 10).unwrap().span(), Some(3));
        // Petersen graph, chromatic number 3 (needs a raised limit).
        let mut edges = Vec::new();
        for i in 0..5 {
            edges.push((i, (i + 1) % 5));
            edges.push((5 + i, 5 + (i + 2) % 5));
            edges.push((i, 5 + i));
        }
        let petersen = geq_uniform(10, &edges, 1);
        let res = oracle_solve_with_limit(&petersen, 10, 10).unwrap();
        assert_eq!(res.span(), Some(3));
    }

    #[test]
    fn size_limit_is_enforced() {
        let err = oracle_solve(&complete_graph(10, 1), 20).unwrap_err();
        assert_eq!(err, OracleError::TooLarge { n: 10, limit: 9 });
    }

    #[test]
    fn disconnected_components_solved_independently() {
        let g = WeightedGraph::build(4, &[(0, 1, 3), (2, 3, 7)]).unwrap();
        let inst = Instance::per_edge(g, ConstraintOp::Eq);
        let res = oracle_solve(&inst, 100).unwrap();
        assert_eq!(res.span(), Some(8));
    }

    #[test]
    fn witness_is_lexicographically_lowest() {
        // Path with weights (2, 3): both (2,4,1) and (3,1,4) have span 4;
        // the lexicographically smaller vector wins.
        let g = WeightedGraph::build(3, &[(0, 1, 2), (1, 2, 3)]).unwrap();
        let inst = Instance::per_edge(g, ConstraintOp::Eq);
        let res = oracle_solve(&inst, 6).unwrap();
        let OracleOutcome::Feasible { witness, .. } = res.outcome else {
            panic!()
        };
        let colors: Vec<Color> = witness.colors().iter().map(|c| c.unwrap()).collect();
        assert_eq!(colors, vec![2, 4, 1]);
    }
}
