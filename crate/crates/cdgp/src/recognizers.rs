//! Linear-time feasibility recognizers and constructive embeddings.
//!
//! Equality constraints with one uniform distance are feasible exactly on
//! bipartite graphs, and a two-level embedding realizes them. Trees are
//! feasible for equality constraints with arbitrary weights via a marking
//! walk. Both constructions run in linear time.

use crate::embedding::Embedding;
use crate::graph::{Color, VertexId, WeightedGraph};
use crate::instance::{ConstraintOp, DistanceMode, Instance};
use crate::solver::SolveOutcome;
use std::collections::VecDeque;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum RecognizerError {
    #[error("operation requires op={expected_op:?} and mode={expected_mode}")]
    WrongModel {
        expected_op: ConstraintOp,
        expected_mode: &'static str,
    },
    #[error("graph is not a tree (connected with |E| = |V| - 1 required)")]
    NotATree,
}

/// Result of two-coloring a graph: either a side assignment or an odd
/// closed walk witnessing non-bipartiteness.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum BipartiteResult {
    /// `sides[v]` is 0 or 1; no edge joins two vertices of the same side.
    Bipartite { sides: Vec<u8> },
    /// Closed walk of odd length >= 3: consecutive vertices adjacent,
    /// first vertex repeated at the end.
    OddCycle { walk: Vec<VertexId> },
}

impl BipartiteResult {
    pub fn is_bipartite(&self) -> bool {
        matches!(self, BipartiteResult::Bipartite { .. })
    }
}

/// Two-colors the graph by BFS from the lowest-id vertex of each component.
///
/// On conflict, extracts an odd closed walk from the BFS tree paths of the
/// conflicting edge's endpoints.
pub fn bipartite_check(g: &WeightedGraph) -> BipartiteResult {
    let n = g.vertex_count();
    let mut side: Vec<Option<u8>> = vec![None; n];
    let mut parent: Vec<Option<VertexId>> = vec![None; n];
    let mut depth: Vec<usize> = vec![0; n];

    for root in 0..n {
        if side[root].is_some() {
            continue;
        }
        side[root] = Some(0);
        let mut queue = VecDeque::from([root]);
        while let Some(v) = queue.pop_front() {
            let sv = side[v].unwrap();
            for &(w, _) in g.neighbors(v) {
                match side[w] {
                    None => {
                        side[w] = Some(1 - sv);
                        parent[w] = Some(v);
                        depth[w] = depth[v] + 1;
                        queue.push_back(w);
                    }
                    Some(sw) if sw == sv => {
                        return BipartiteResult::OddCycle {
                            walk: odd_walk(v, w, &parent, &depth),
                        };
                    }
                    Some(_) => {}
                }
            }
        }
    }
    BipartiteResult::Bipartite {
        sides: side.into_iter().map(|s| s.unwrap()).collect(),
    }
}

/// Closes the BFS tree paths of `u` and `v` (same side, adjacent) into an
/// odd cycle through their lowest common ancestor.
fn odd_walk(
    u: VertexId,
    v: VertexId,
    parent: &[Option<VertexId>],
    depth: &[usize],
) -> Vec<VertexId> {
    let mut up = u;
    let mut vp = v;
    let mut left = vec![up];
    let mut right = vec![vp];
    while depth[up] > depth[vp] {
        up = parent[up].unwrap();
        left.push(up);
    }
    while depth[vp] > depth[up] {
        vp = parent[vp].unwrap();
        right.push(vp);
    }
    while up != vp {
        up = parent[up].unwrap();
        vp = parent[vp].unwrap();
        left.push(up);
        right.push(vp);
    }
    // left ends at the LCA; append the right path reversed (excluding the
    // LCA) and close the walk back at u.
    right.pop();
    left.extend(right.into_iter().rev());
    left.push(u);
    left
}

/// Outcome of the uniform-distance equality recognizer: the solver-style
/// outcome plus the odd-cycle certificate on infeasibility.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EqUnifResult {
    pub outcome: SolveOutcome,
    pub certificate: Option<Vec<VertexId>>,
}

/// Decides equality instances with one uniform distance in linear time.
///
/// Feasible iff the graph is bipartite; the witness assigns 1 to side-0
/// vertices and `1 + phi` to side-1 vertices of every component.
pub fn solve_eq_unif(inst: &Instance) -> Result<EqUnifResult, RecognizerError> {
    let DistanceMode::Uniform(phi) = inst.distance_mode() else {
        return Err(RecognizerError::WrongModel {
            expected_op: ConstraintOp::Eq,
            expected_mode: "uniform",
        });
    };
    if inst.op() != ConstraintOp::Eq {
        return Err(RecognizerError::WrongModel {
            expected_op: ConstraintOp::Eq,
            expected_mode: "uniform",
        });
    }
    match bipartite_check(inst.graph()) {
        BipartiteResult::Bipartite { sides } => {
            let colors: Vec<Color> = sides
                .iter()
                .map(|&s| if s == 0 { 1 } else { 1 + phi })
                .collect();
            let embedding = Embedding::total(&colors).expect("colors are positive");
            let span = embedding.span().expect("nonempty");
            Ok(EqUnifResult {
                outcome: SolveOutcome::Feasible { embedding, span },
                certificate: None,
            })
        }
        BipartiteResult::OddCycle { walk } => Ok(EqUnifResult {
            outcome: SolveOutcome::Infeasible,
            certificate: Some(walk),
        }),
    }
}

/// True iff the graph is connected with exactly `|V| - 1` edges.
pub fn is_tree(g: &WeightedGraph) -> bool {
    g.edge_count() == g.vertex_count() - 1 && g.is_connected()
}

/// Builds a feasible embedding for an equality instance on a tree.
///
/// BFS from vertex 0, neighbors in ascending id order. The root receives
/// color 1; each newly marked vertex `j` adjacent to its marked neighbor `k`
/// receives a color at distance exactly `d(j,k)` from `x(k)`, preferring
/// `x(k) - d` when that stays >= 1 and `x(k) + d` otherwise.
///
/// Guarantees feasibility only, not minimum span.
pub fn embed_tree(inst: &Instance) -> Result<Embedding, RecognizerError> {
    if inst.op() != ConstraintOp::Eq {
        return Err(RecognizerError::WrongModel {
            expected_op: ConstraintOp::Eq,
            expected_mode: "uniform or per-edge",
        });
    }
    let g = inst.graph();
    if !is_tree(g) {
        return Err(RecognizerError::NotATree);
    }
    let mut embedding = Embedding::empty(g.vertex_count());
    embedding.assign(0, 1).expect("root color");
    let mut queue = VecDeque::from([0]);
    while let Some(k) = queue.pop_front() {
        let xk = embedding.get(k).expect("marked before queueing");
        for &(j, d) in g.neighbors(k) {
            if embedding.get(j).is_some() {
                continue;
            }
            let color = if xk > d { xk - d } else { xk + d };
            embedding.assign(j, color).expect("positive color");
            queue.push_back(j);
        }
    }
    Ok(embedding)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::embedding::{check_embedding, CheckResult};
    use crate::graph::WeightedGraph;
    use crate::instance::{DistanceMode, Instance};

    fn cycle(n: usize, d: u64) -> WeightedGraph {
        let edges: Vec<_> = (0..n).map(|i| (i, (i + 1) % n, d)).collect();
        WeightedGraph::build(n, &edges).unwrap()
    }

    /// Independent certificate verification: closed, odd, adjacent steps.
    fn assert_odd_walk(g: &WeightedGraph, walk: &[usize]) {
        assert!(walk.len() >= 4, "walk must have at least 3 edges");
        assert_eq!(walk.first(), walk.last());
        assert_eq!(walk.len() % 2, 0, "odd edge count means even vertex count");
        for w in walk.windows(2) {
            assert!(g.weight(w[0], w[1]).is_some(), "steps must follow edges");
        }
    }

    #[test]
    fn even_cycle_is_bipartite_with_alternating_sides() {
        let g = cycle(4, 1);
        match bipartite_check(&g) {
            BipartiteResult::Bipartite { sides } => assert_eq!(sides, vec![0, 1, 0, 1]),
            other => panic!("expected bipartite, got {other:?}"),
        }
    }

    #[test]
    fn triangle_yields_odd_cycle_certificate() {
        let g = cycle(3, 1);
        match bipartite_check(&g) {
            BipartiteResult::OddCycle { walk } => assert_odd_walk(&g, &walk),
            other => panic!("expected odd cycle, got {other:?}"),
        }
    }

    #[test]
    fn single_vertex_is_bipartite() {
        let g = WeightedGraph::build(1, &[]).unwrap();
        assert!(bipartite_check(&g).is_bipartite());
    }

    #[test]
    fn odd_cycle_found_in_larger_graph() {
        // C5 with a pendant path; certificate must still verify.
        let g = WeightedGraph::build(
            7,
            &[
                (0, 1, 1),
                (1, 2, 1),
                (2, 3, 1),
                (3, 4, 1),
                (4, 0, 1),
                (0, 5, 1),
                (5, 6, 1),
            ],
        )
        .unwrap();
        match bipartite_check(&g) {
            BipartiteResult::OddCycle { walk } => assert_odd_walk(&g, &walk),
            other => panic!("expected odd cycle, got {other:?}"),
        }
    }

    #[test]
    fn eq_unif_on_even_cycle() {
        let inst = Instance::new(cycle(4, 5), ConstraintOp::Eq, DistanceMode::Uniform(5)).unwrap();
        let res = solve_eq_unif(&inst).unwrap();
        match res.outcome {
            SolveOutcome::Feasible { embedding, span } => {
                assert_eq!(span, 6);
                assert_eq!(
                    embedding
                        .colors()
                        .iter()
                        .map(|c| c.unwrap())
                        .collect::<Vec<_>>(),
                    vec![1, 6, 1, 6]
                );
                assert_eq!(
                    check_embedding(&inst, &embedding).unwrap(),
                    CheckResult::Valid
                );
            }
            other => panic!("expected feasible, got {other:?}"),
        }
        assert!(res.certificate.is_none());
    }

    #[test]
    fn eq_unif_on_triangle_is_infeasible() {
        let inst = Instance::new(cycle(3, 5), ConstraintOp::Eq, DistanceMode::Uniform(5)).unwrap();
        let res = solve_eq_unif(&inst).unwrap();
        assert_eq!(res.outcome, SolveOutcome::Infeasible);
        assert_odd_walk(inst.graph(), &res.certificate.unwrap());
    }

    #[test]
    fn eq_unif_on_star() {
        let g = WeightedGraph::build(4, &[(0, 1, 2), (0, 2, 2), (0, 3, 2)]).unwrap();
        let inst = Instance::new(g, ConstraintOp::Eq, DistanceMode::Uniform(2)).unwrap();
        let res = solve_eq_unif(&inst).unwrap();
        match res.outcome {
            SolveOutcome::Feasible { embedding, span } => {
                assert_eq!(span, 3);
                assert_eq!(embedding.get(0), Some(1));
                for leaf in 1..4 {
                    assert_eq!(embedding.get(leaf), Some(3));
                }
            }
            other => panic!("expected feasible, got {other:?}"),
        }
    }

    #[test]
    fn eq_unif_rejects_wrong_model() {
        let inst = Instance::per_edge(cycle(4, 5), ConstraintOp::Eq);
        assert!(matches!(
            solve_eq_unif(&inst),
            Err(RecognizerError::WrongModel { .. })
        ));
        let inst = Instance::new(cycle(4, 5), ConstraintOp::Geq, DistanceMode::Uniform(5)).unwrap();
        assert!(matches!(
            solve_eq_unif(&inst),
            Err(RecognizerError::WrongModel { .. })
        ));
    }

    #[test]
    fn tree_recognition() {
        let p4 = WeightedGraph::build(4, &[(0, 1, 1), (1, 2, 1), (2, 3, 1)]).unwrap();
        assert!(is_tree(&p4));
        assert!(!is_tree(&cycle(4, 1)));
        let two_edges = WeightedGraph::build(4, &[(0, 1, 1), (2, 3, 1)]).unwrap();
        assert!(!is_tree(&two_edges));
    }

    #[test]
    fn embed_tree_path() {
        let g = WeightedGraph::build(3, &[(0, 1, 2), (1, 2, 3)]).unwrap();
        let inst = Instance::per_edge(g, ConstraintOp::Eq);
        let e = embed_tree(&inst).unwrap();
        let colors: Vec<u64> = e.colors().iter().map(|c| c.unwrap()).collect();
        assert_eq!(colors, vec![1, 3, 6]);
        assert_eq!(e.span().unwrap(), 6);
        assert_eq!(check_embedding(&inst, &e).unwrap(), CheckResult::Valid);
    }

    #[test]
    fn embed_tree_single_vertex() {
        let g = WeightedGraph::build(1, &[]).unwrap();
        let inst = Instance::per_edge(g, ConstraintOp::Eq);
        let e = embed_tree(&inst).unwrap();
        assert_eq!(e.get(0), Some(1));
    }

    #[test]
    fn embed_tree_star_forces_addition() {
        // Root at the center; 1 - 4 and 1 - 9 both fall below 1.
        let g = WeightedGraph::build(3, &[(0, 1, 4), (0, 2, 9)]).unwrap();
        let inst = Instance::per_edge(g, ConstraintOp::Eq);
        let e = embed_tree(&inst).unwrap();
        assert_eq!(e.get(0), Some(1));
        assert_eq!(e.get(1), Some(5));
        assert_eq!(e.get(2), Some(10));
    }

    #[test]
    fn embed_tree_prefers_subtraction() {
        // 0 -(9)- 1 -(3)- 2: x(1) = 10, x(2) = 10 - 3 = 7.
        let g = WeightedGraph::build(3, &[(0, 1, 9), (1, 2, 3)]).unwrap();
        let inst = Instance::per_edge(g, ConstraintOp::Eq);
        let e = embed_tree(&inst).unwrap();
        let colors: Vec<u64> = e.colors().iter().map(|c| c.unwrap()).collect();
        assert_eq!(colors, vec![1, 10, 7]);
    }

    #[test]
    fn embed_tree_rejects_non_trees() {
        let inst = Instance::per_edge(cycle(4, 2), ConstraintOp::Eq);
        assert!(matches!(embed_tree(&inst), Err(RecognizerError::NotATree)));
    }

    #[test]
    fn embed_tree_rejects_geq() {
        let g = WeightedGraph::build(2, &[(0, 1, 2)]).unwrap();
        let inst = Instance::per_edge(g, ConstraintOp::Geq);
        assert!(matches!(
            embed_tree(&inst),
            Err(RecognizerError::WrongModel { .. })
        ));
    }
}
