//! Embeddings: partial or total assignments of positive integer colors to
//! vertices, and constraint verification against an instance.

use crate::graph::{Color, VertexId};
use crate::instance::Instance;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum EmbeddingError {
    #[error("color 0 is not allowed; colors start at 1")]
    ZeroColor,
    #[error("vertex {v} outside 0..{n}")]
    VertexOutOfRange { v: VertexId, n: usize },
    #[error("embedding assigns no vertex")]
    EmptyEmbedding,
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CheckError {
    #[error("embedding is partial; verification requires all vertices assigned")]
    PartialEmbedding,
    #[error("embedding covers {got} vertices, instance has {expected}")]
    SizeMismatch { got: usize, expected: usize },
}

/// Assignment of colors to a subset of `0..n` vertices.
///
/// A value type; cheap to clone and safe to send between threads.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Embedding {
    colors: Vec<Option<Color>>,
}

impl Embedding {
    /// Empty embedding over `n` vertices.
    pub fn empty(n: usize) -> Self {
        Embedding {
            colors: vec![None; n],
        }
    }

    /// Total embedding from one color per vertex. Fails on any zero color.
    pub fn total(colors: &[Color]) -> Result<Self, EmbeddingError> {
        if colors.contains(&0) {
            return Err(EmbeddingError::ZeroColor);
        }
        Ok(Embedding {
            colors: colors.iter().map(|&c| Some(c)).collect(),
        })
    }

    /// Partial embedding from explicit optional colors.
    pub fn from_partial(colors: Vec<Option<Color>>) -> Result<Self, EmbeddingError> {
        if colors.contains(&Some(0)) {
            return Err(EmbeddingError::ZeroColor);
        }
        Ok(Embedding { colors })
    }

    pub fn assign(&mut self, v: VertexId, color: Color) -> Result<(), EmbeddingError> {
        if color == 0 {
            return Err(EmbeddingError::ZeroColor);
        }
        if v >= self.colors.len() {
            return Err(EmbeddingError::VertexOutOfRange {
                v,
                n: self.colors.len(),
            });
        }
        self.colors[v] = Some(color);
        Ok(())
    }

    pub fn get(&self, v: VertexId) -> Option<Color> {
        self.colors.get(v).copied().flatten()
    }

    pub fn len(&self) -> usize {
        self.colors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.colors.is_empty()
    }

    pub fn assigned_count(&self) -> usize {
        self.colors.iter().filter(|c| c.is_some()).count()
    }

    /// True iff every vertex is assigned.
    pub fn is_total(&self) -> bool {
        self.colors.iter().all(|c| c.is_some())
    }

    /// Maximum assigned color. Defined only over assigned vertices.
    pub fn span(&self) -> Result<Color, EmbeddingError> {
        self.colors
            .iter()
            .flatten()
            .copied()
            .max()
            .ok_or(EmbeddingError::EmptyEmbedding)
    }

    /// Assigned colors as a slice of options, indexed by vertex.
    pub fn colors(&self) -> &[Option<Color>] {
        &self.colors
    }
}

/// Result of verifying a total embedding against an instance.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CheckResult {
    Valid,
    /// Every violating edge, as canonical `(u, v)` pairs.
    Violations(Vec<(VertexId, VertexId)>),
}

impl CheckResult {
    pub fn is_valid(&self) -> bool {
        matches!(self, CheckResult::Valid)
    }
}

/// Verifies a total embedding edge by edge.
///
/// For `Eq` an edge `(i, j)` is satisfied iff `|x(i) - x(j)| = d`, for `Geq`
/// iff `|x(i) - x(j)| >= d`. Runs in one pass over the edge list.
pub fn check_embedding(inst: &Instance, e: &Embedding) -> Result<CheckResult, CheckError> {
    check_embedding_instrumented(inst, e).map(|(r, _)| r)
}

/// Same as [`check_embedding`] but also reports how many edges were
/// examined (always exactly `|E|`; exposed so verification linearity is
/// testable).
pub fn check_embedding_instrumented(
    inst: &Instance,
    e: &Embedding,
) -> Result<(CheckResult, usize), CheckError> {
    let g = inst.graph();
    if e.len() != g.vertex_count() {
        return Err(CheckError::SizeMismatch {
            got: e.len(),
            expected: g.vertex_count(),
        });
    }
    if !e.is_total() {
        return Err(CheckError::PartialEmbedding);
    }
    let op = inst.op();
    let mut violations = Vec::new();
    let mut examined = 0usize;
    for edge in g.edges() {
        examined += 1;
        let xu = e.get(edge.u).expect("total");
        let xv = e.get(edge.v).expect("total");
        let gap = xu.abs_diff(xv);
        if !op.holds(gap, edge.d) {
            violations.push((edge.u, edge.v));
        }
    }
    let result = if violations.is_empty() {
        CheckResult::Valid
    } else {
        CheckResult::Violations(violations)
    };
    Ok((result, examined))
}
