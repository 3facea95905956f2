//! Simple undirected graphs with positive integer edge weights.
//!
//! Vertices are identified by `0..n`. Edges are stored canonically with
//! `u < v` and sorted lexicographically, so two structurally equal graphs
//! compare equal and serialize identically.

use thiserror::Error;

/// Vertex identifier (0-based everywhere inside the library; the text file
/// format is 1-based and translated at the I/O boundary).
pub type VertexId = usize;

/// Positive integer edge weight / distance.
pub type Weight = u64;

/// A color assigned to a vertex; always `>= 1`.
pub type Color = u64;

/// An undirected edge with its required distance.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Edge {
    pub u: VertexId,
    pub v: VertexId,
    pub d: Weight,
}

/// Errors raised while building a [`WeightedGraph`].
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GraphError {
    #[error("graph must have at least one vertex")]
    EmptyGraph,
    #[error("self-loop on vertex {v} (edge ({u}, {v}))")]
    SelfLoop { u: VertexId, v: VertexId },
    #[error("duplicate edge ({u}, {v})")]
    DuplicateEdge { u: VertexId, v: VertexId },
    #[error("edge ({u}, {v}) has zero weight")]
    ZeroWeight { u: VertexId, v: VertexId },
    #[error("edge ({u}, {v}) references a vertex outside 0..{n}")]
    VertexOutOfRange { u: VertexId, v: VertexId, n: usize },
}

/// Simple undirected graph with positive integer edge weights.
///
/// Immutable after construction; safe to share across threads.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WeightedGraph {
    n: usize,
    edges: Vec<Edge>,
    adjacency: Vec<Vec<(VertexId, Weight)>>,
}

impl WeightedGraph {
    /// Builds a validated graph from a vertex count and an edge list.
    ///
    /// Edges may be given in either endpoint order; they are normalized to
    /// `u < v` and sorted. Rejects self-loops, duplicate (parallel) edges,
    /// zero weights and out-of-range endpoints.
    pub fn build(n: usize, edge_list: &[(VertexId, VertexId, Weight)]) -> Result<Self, GraphError> {
        if n == 0 {
            return Err(GraphError::EmptyGraph);
        }
        let mut edges = Vec::with_capacity(edge_list.len());
        for &(a, b, d) in edge_list {
            if a >= n || b >= n {
                return Err(GraphError::VertexOutOfRange { u: a, v: b, n });
            }
            if a == b {
                return Err(GraphError::SelfLoop { u: a, v: b });
            }
            if d == 0 {
                return Err(GraphError::ZeroWeight { u: a, v: b });
            }
            let (u, v) = if a < b { (a, b) } else { (b, a) };
            edges.push(Edge { u, v, d });
        }
        edges.sort_unstable();
        for w in edges.windows(2) {
            if w[0].u == w[1].u && w[0].v == w[1].v {
                return Err(GraphError::DuplicateEdge {
                    u: w[0].u,
                    v: w[0].v,
                });
            }
        }
        let mut adjacency = vec![Vec::new(); n];
        for e in &edges {
            adjacency[e.u].push((e.v, e.d));
            adjacency[e.v].push((e.u, e.d));
        }
        for nbrs in &mut adjacency {
            nbrs.sort_unstable();
        }
        Ok(WeightedGraph {
            n,
            edges,
            adjacency,
        })
    }

    pub fn vertex_count(&self) -> usize {
        self.n
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    /// Edges in canonical order (`u < v`, sorted lexicographically).
    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    /// Neighbors of `v` with edge weights, in ascending vertex order.
    pub fn neighbors(&self, v: VertexId) -> &[(VertexId, Weight)] {
        &self.adjacency[v]
    }

    pub fn degree(&self, v: VertexId) -> usize {
        self.adjacency[v].len()
    }

    /// Weight of the edge `{u, v}`, if present.
    pub fn weight(&self, u: VertexId, v: VertexId) -> Option<Weight> {
        self.adjacency[u]
            .binary_search_by_key(&v, |&(w, _)| w)
            .ok()
            .map(|i| self.adjacency[u][i].1)
    }

    /// Sum of all edge weights. Bounds the color range any embedding built
    /// by chained exact offsets can reach.
    pub fn total_weight(&self) -> u64 {
        self.edges.iter().map(|e| e.d).sum()
    }

    /// True iff every vertex is reachable from vertex 0.
    pub fn is_connected(&self) -> bool {
        let mut seen = vec![false; self.n];
        let mut stack = vec![0];
        seen[0] = true;
        let mut count = 1;
        while let Some(v) = stack.pop() {
            for &(w, _) in self.neighbors(v) {
                if !seen[w] {
                    seen[w] = true;
                    count += 1;
                    stack.push(w);
                }
            }
        }
        count == self.n
    }

    /// Connected components as sorted vertex lists, ordered by smallest member.
    pub fn components(&self) -> Vec<Vec<VertexId>> {
        let mut seen = vec![false; self.n];
        let mut out = Vec::new();
        for s in 0..self.n {
            if seen[s] {
                continue;
            }
            let mut comp = vec![s];
            seen[s] = true;
            let mut stack = vec![s];
            while let Some(v) = stack.pop() {
                for &(w, _) in self.neighbors(v) {
                    if !seen[w] {
                        seen[w] = true;
                        comp.push(w);
                        stack.push(w);
                    }
                }
            }
            comp.sort_unstable();
            out.push(comp);
        }
        out
    }
}
