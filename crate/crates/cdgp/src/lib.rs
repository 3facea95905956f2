//! Exact solving, recognition and instance tooling for distance-constrained
//! graph coloring.
//!
//! Vertices of a weighted undirected graph receive positive integer colors;
//! each edge demands that the absolute difference of its endpoint colors
//! equal (or dominate) the edge weight. The crate provides:
//!
//! * the instance data model and a text file format ([`graph`], [`instance`],
//!   [`embedding`], [`io`]);
//! * linear-time feasibility recognizers and constructive embeddings for
//!   uniform distances and for trees ([`recognizers`]);
//! * a branch-prune-and-bound engine with three color-selection strategies,
//!   in decision and minimum-span modes ([`solver`]);
//! * the equal-sum partition construction mapping integer multisets onto
//!   weighted cycles ([`reductions`]);
//! * random instance generation by uniform spanning trees plus edge
//!   augmentation, with a structural census ([`gen`]);
//! * an exhaustive reference solver used as ground truth in tests
//!   ([`oracle`]).

pub mod embedding;
pub mod gen;
pub mod graph;
pub mod instance;
pub mod io;
pub mod oracle;
pub mod recognizers;
pub mod reductions;
pub mod solver;

pub use embedding::{check_embedding, CheckResult, Embedding};
pub use graph::{Color, VertexId, Weight, WeightedGraph};
pub use instance::{ConstraintOp, DistanceMode, Instance, Objective};
pub use solver::{solve, Budget, SearchStats, SolveOptions, SolveOutcome, Strategy};
