//! Problem instances: a weighted graph plus the constraint operator and
//! distance mode that select one of the distance coloring models.

use crate::graph::{Weight, WeightedGraph};
use thiserror::Error;

/// Constraint imposed on each edge between the endpoint colors.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ConstraintOp {
    /// `|x(i) - x(j)| = d`
    Eq,
    /// `|x(i) - x(j)| >= d`
    Geq,
}

impl ConstraintOp {
    /// True iff the gap `|x(i) - x(j)|` satisfies the operator for distance `d`.
    #[inline]
    pub fn holds(self, gap: u64, d: Weight) -> bool {
        match self {
            ConstraintOp::Eq => gap == d,
            ConstraintOp::Geq => gap >= d,
        }
    }
}

/// Whether all edges share one distance or each edge carries its own.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum DistanceMode {
    /// All edge weights equal the given constant.
    Uniform(Weight),
    /// Each edge carries an arbitrary positive weight.
    PerEdge,
}

/// Goal of a solver run. This is a solver-invocation parameter, not part of
/// the serialized instance: the same graph serves both modes.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Objective {
    /// Find any feasible embedding.
    Decision,
    /// Find an embedding of minimum span.
    MinimizeSpan,
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum InstanceError {
    #[error("uniform mode requires every edge weight to equal {phi}, but edge ({u}, {v}) has {d}")]
    InconsistentUniformWeight {
        u: usize,
        v: usize,
        d: Weight,
        phi: Weight,
    },
}

/// A distance coloring instance.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Instance {
    graph: WeightedGraph,
    op: ConstraintOp,
    distance_mode: DistanceMode,
}

impl Instance {
    /// Wraps a graph with a constraint operator and distance mode.
    ///
    /// In uniform mode every stored edge weight must equal the constant.
    pub fn new(
        graph: WeightedGraph,
        op: ConstraintOp,
        distance_mode: DistanceMode,
    ) -> Result<Self, InstanceError> {
        if let DistanceMode::Uniform(phi) = distance_mode {
            for e in graph.edges() {
                if e.d != phi {
                    return Err(InstanceError::InconsistentUniformWeight {
                        u: e.u,
                        v: e.v,
                        d: e.d,
                        phi,
                    });
                }
            }
        }
        Ok(Instance {
            graph,
            op,
            distance_mode,
        })
    }

    /// Convenience constructor for per-edge instances.
    pub fn per_edge(graph: WeightedGraph, op: ConstraintOp) -> Self {
        Instance {
            graph,
            op,
            distance_mode: DistanceMode::PerEdge,
        }
    }

    pub fn graph(&self) -> &WeightedGraph {
        &self.graph
    }

    pub fn op(&self) -> ConstraintOp {
        self.op
    }

    pub fn distance_mode(&self) -> DistanceMode {
        self.distance_mode
    }

    /// Same graph and distances under a different constraint operator.
    pub fn with_op(&self, op: ConstraintOp) -> Self {
        Instance {
            graph: self.graph.clone(),
            op,
            distance_mode: self.distance_mode,
        }
    }

    /// Equivalent instance with the mode downgraded to per-edge weights.
    /// Constraint checking is unaffected; only the declared mode changes.
    pub fn as_per_edge(&self) -> Self {
        Instance {
            graph: self.graph.clone(),
            op: self.op,
            distance_mode: DistanceMode::PerEdge,
        }
    }
}

/// Name of the model selected by (operator, distance mode, objective).
pub fn model_name(op: ConstraintOp, mode: DistanceMode, objective: Objective) -> &'static str {
    match (op, mode, objective) {
        (ConstraintOp::Eq, DistanceMode::PerEdge, Objective::Decision) => "EQ-CDGP",
        (ConstraintOp::Eq, DistanceMode::PerEdge, Objective::MinimizeSpan) => "MinEQ-CDGP",
        (ConstraintOp::Geq, DistanceMode::PerEdge, Objective::MinimizeSpan) => "MinGEQ-CDGP",
        (ConstraintOp::Eq, DistanceMode::Uniform(_), Objective::Decision) => "EQ-CDGP-Unif",
        (ConstraintOp::Eq, DistanceMode::Uniform(_), Objective::MinimizeSpan) => "MinEQ-CDGP-Unif",
        (ConstraintOp::Geq, DistanceMode::Uniform(_), Objective::MinimizeSpan) => {
            "MinGEQ-CDGP-Unif"
        }
        // The remaining combinations (GEQ decision) are trivially feasible and
        // carry no standard name; report the closest family.
        (ConstraintOp::Geq, DistanceMode::PerEdge, Objective::Decision) => "GEQ-CDGP",
        (ConstraintOp::Geq, DistanceMode::Uniform(_), Objective::Decision) => "GEQ-CDGP-Unif",
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::WeightedGraph;

    #[test]
    fn uniform_mode_validates_weights() {
        let g = WeightedGraph::build(3, &[(0, 1, 5), (1, 2, 5), (0, 2, 5)]).unwrap();
        assert!(Instance::new(g, ConstraintOp::Eq, DistanceMode::Uniform(5)).is_ok());

        let g = WeightedGraph::build(3, &[(0, 1, 5), (1, 2, 4), (0, 2, 5)]).unwrap();
        let err = Instance::new(g, ConstraintOp::Eq, DistanceMode::Uniform(5)).unwrap_err();
        // First offending edge in canonical order is (1,2) with weight 4.
        assert_eq!(
            err,
            InstanceError::InconsistentUniformWeight {
                u: 1,
                v: 2,
                d: 4,
                phi: 5
            }
        );
    }

    #[test]
    fn model_names_cover_the_six_models() {
        use ConstraintOp::*;
        use DistanceMode::*;
        use Objective::*;
        assert_eq!(model_name(Eq, PerEdge, Decision), "EQ-CDGP");
        assert_eq!(model_name(Eq, PerEdge, MinimizeSpan), "MinEQ-CDGP");
        assert_eq!(model_name(Geq, PerEdge, MinimizeSpan), "MinGEQ-CDGP");
        assert_eq!(model_name(Eq, Uniform(3), Decision), "EQ-CDGP-Unif");
        assert_eq!(model_name(Eq, Uniform(3), MinimizeSpan), "MinEQ-CDGP-Unif");
        assert_eq!(
            model_name(Geq, Uniform(3), MinimizeSpan),
            "MinGEQ-CDGP-Unif"
        );
    }
}
