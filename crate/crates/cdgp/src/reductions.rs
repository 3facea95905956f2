//! Equal-sum partition instances as weighted cycles.
//!
//! A multiset of integers splits into two halves of equal sum exactly when
//! the cycle carrying those integers as consecutive edge weights admits an
//! equality embedding: walking the cycle, each edge contributes its weight
//! with a sign, and a closed walk forces the signed sum to zero.

use crate::embedding::{check_embedding, CheckResult, Embedding};
use crate::graph::WeightedGraph;
use crate::instance::{ConstraintOp, Instance};
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ReductionError {
    #[error("partition instance needs at least 3 elements to form a cycle, got {r}")]
    TooFewElements { r: usize },
    #[error("values must be positive")]
    ZeroValue,
    #[error("embedding is not a valid total embedding of the reduced cycle")]
    InvalidEmbedding,
}

/// A multiset of positive integers. Equal values are distinct positional
/// elements.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PartitionInstance {
    values: Vec<u64>,
}

impl PartitionInstance {
    pub fn new(values: Vec<u64>) -> Result<Self, ReductionError> {
        if values.contains(&0) {
            return Err(ReductionError::ZeroValue);
        }
        Ok(PartitionInstance { values })
    }

    pub fn values(&self) -> &[u64] {
        &self.values
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }
}

/// Builds the equality instance on a cycle of `r` vertices where edge
/// `b -> (b + 1) mod r` carries the `b`-th value.
pub fn partition_to_cdgp(p: &PartitionInstance) -> Result<Instance, ReductionError> {
    let r = p.len();
    if r < 3 {
        return Err(ReductionError::TooFewElements { r });
    }
    let edges: Vec<_> = (0..r).map(|b| (b, (b + 1) % r, p.values[b])).collect();
    let graph = WeightedGraph::build(r, &edges).expect("cycle construction is valid");
    Ok(Instance::per_edge(graph, ConstraintOp::Eq))
}

/// Reads an equal-sum split back off a valid embedding of the reduced
/// cycle: values whose edge ascends (`x(b) < x(b+1)`) land in the first
/// half, descending ones in the second. Returns the halves as value lists.
pub fn embedding_to_partition(
    p: &PartitionInstance,
    e: &Embedding,
) -> Result<(Vec<u64>, Vec<u64>), ReductionError> {
    let inst = partition_to_cdgp(p)?;
    match check_embedding(&inst, e) {
        Ok(CheckResult::Valid) => {}
        _ => return Err(ReductionError::InvalidEmbedding),
    }
    let r = p.len();
    let mut s1 = Vec::new();
    let mut s2 = Vec::new();
    for b in 0..r {
        let xb = e.get(b).expect("total");
        let xn = e.get((b + 1) % r).expect("total");
        // Equal endpoint colors are impossible on a valid embedding: every
        // weight is at least 1.
        assert_ne!(xb, xn);
        if xb < xn {
            s1.push(p.values[b]);
        } else {
            s2.push(p.values[b]);
        }
    }
    Ok((s1, s2))
}
