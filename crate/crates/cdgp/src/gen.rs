//! Random instance generation and structural census.
//!
//! Every generated graph starts as a uniform random spanning tree, drawn by
//! a random walk on the complete graph: whenever the walk first reaches a
//! vertex outside the tree, the traversed edge joins the tree. Extra edges
//! are then added uniformly from the absent pairs until the target edge
//! count is reached, and weights are assigned last, independently uniform
//! over the configured range (or one constant in uniform mode).
//!
//! The RNG is ChaCha8 seeded from a 64-bit value; output files record the
//! algorithm identifier and seed in a comment so instances can be
//! regenerated elsewhere.

use crate::graph::{VertexId, Weight, WeightedGraph};
use crate::instance::{ConstraintOp, DistanceMode, Instance};
use crate::recognizers::bipartite_check;
use rand::seq::SliceRandom;
use rand::{Rng, RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

/// Identifier of the pinned RNG algorithm, recorded in generated files.
pub const RNG_ALGORITHM: &str = "chacha8";

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GenError {
    #[error("vertex count must be at least 1")]
    ZeroVertices,
    #[error("edge count {m} outside [{lo}, {hi}] for {n} vertices")]
    BadEdgeCount {
        m: usize,
        lo: usize,
        hi: usize,
        n: usize,
    },
    #[error("weight range [{lo}, {hi}] is empty or starts at 0")]
    BadWeightRange { lo: Weight, hi: Weight },
    #[error("graph is disconnected")]
    Disconnected,
}

/// Configuration for [`generate`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GenConfig {
    pub n: usize,
    /// Exact edge count, or `None` to sample it uniformly from
    /// `[n - 1, n (n - 1) / 2]` (always connected, at most complete).
    pub m: Option<usize>,
    /// Inclusive weight range for per-edge mode.
    pub weight_range: (Weight, Weight),
    /// All weights equal this constant instead, when set.
    pub uniform_phi: Option<Weight>,
    pub rng_seed: u64,
}

impl GenConfig {
    pub fn new(n: usize, rng_seed: u64) -> Self {
        GenConfig {
            n,
            m: None,
            weight_range: (1, 30),
            uniform_phi: None,
            rng_seed,
        }
    }

    fn validate(&self) -> Result<(), GenError> {
        if self.n == 0 {
            return Err(GenError::ZeroVertices);
        }
        if let Some(m) = self.m {
            let lo = self.n - 1;
            let hi = max_edges(self.n);
            if m < lo || m > hi {
                return Err(GenError::BadEdgeCount {
                    m,
                    lo,
                    hi,
                    n: self.n,
                });
            }
        }
        let (lo, hi) = self.weight_range;
        if lo == 0 || lo > hi {
            return Err(GenError::BadWeightRange { lo, hi });
        }
        Ok(())
    }
}

pub fn max_edges(n: usize) -> usize {
    n * (n - 1) / 2
}

/// RNG stream for the given seed. Distinct stream indices give independent
/// sequences for parallel generation.
pub fn rng_stream(seed: u64, stream: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(stream);
    rng
}

/// Uniform random spanning tree of the complete graph on `n` vertices,
/// as an edge set.
///
/// Random walk: keep the set of vertices outside the tree; each step moves
/// to a uniformly random other vertex, and the first arrival at an outside
/// vertex adds the traversed edge. Every labeled tree is produced with
/// equal probability.
pub fn random_spanning_tree(n: usize, rng: &mut impl RngCore) -> Vec<(VertexId, VertexId)> {
    let mut edges = Vec::with_capacity(n.saturating_sub(1));
    if n <= 1 {
        return edges;
    }
    let mut outside = vec![true; n];
    let mut remaining = n - 1;
    let mut current = rng.gen_range(0..n);
    outside[current] = false;
    while remaining > 0 {
        // Uniform neighbor in the complete graph: any vertex but the current.
        let mut next = rng.gen_range(0..n - 1);
        if next >= current {
            next += 1;
        }
        if outside[next] {
            outside[next] = false;
            remaining -= 1;
            edges.push((current.min(next), current.max(next)));
        }
        current = next;
    }
    edges
}

/// Adds uniformly chosen absent edges until exactly `m` edges are present.
///
/// Rejection sampling while the graph is sparse; above 75% density the
/// complement is enumerated and shuffled instead.
pub fn augment_edges(
    tree_edges: &[(VertexId, VertexId)],
    n: usize,
    m: usize,
    rng: &mut impl RngCore,
) -> Result<Vec<(VertexId, VertexId)>, GenError> {
    let hi = max_edges(n);
    if m < tree_edges.len() || m > hi {
        return Err(GenError::BadEdgeCount {
            m,
            lo: tree_edges.len(),
            hi,
            n,
        });
    }
    let mut present = vec![false; hi];
    let mut edges: Vec<(VertexId, VertexId)> = tree_edges.to_vec();
    for &(u, v) in tree_edges {
        present[pair_index(u, v, n)] = true;
    }
    if (m as f64) < 0.75 * hi as f64 {
        while edges.len() < m {
            let u = rng.gen_range(0..n);
            let v = rng.gen_range(0..n);
            if u == v {
                continue;
            }
            let (a, b) = (u.min(v), u.max(v));
            let idx = pair_index(a, b, n);
            if !present[idx] {
                present[idx] = true;
                edges.push((a, b));
            }
        }
    } else {
        let mut absent: Vec<(VertexId, VertexId)> = Vec::with_capacity(hi - edges.len());
        for a in 0..n {
            for b in (a + 1)..n {
                if !present[pair_index(a, b, n)] {
                    absent.push((a, b));
                }
            }
        }
        absent.shuffle(rng);
        edges.extend(absent.into_iter().take(m - edges.len()));
    }
    Ok(edges)
}

fn pair_index(u: VertexId, v: VertexId, n: usize) -> usize {
    debug_assert!(u < v);
    u * n - u * (u + 1) / 2 + (v - u - 1)
}

/// Generates a connected instance per the configuration. Deterministic for
/// a given seed. The instance uses equality constraints; flip with
/// [`Instance::with_op`] when inequalities are wanted.
pub fn generate(cfg: &GenConfig) -> Result<Instance, GenError> {
    cfg.validate()?;
    let mut rng = rng_stream(cfg.rng_seed, 0);
    generate_with(cfg, &mut rng)
}

/// Like [`generate`] but drawing from a caller-provided RNG stream.
pub fn generate_with(cfg: &GenConfig, rng: &mut impl RngCore) -> Result<Instance, GenError> {
    cfg.validate()?;
    let n = cfg.n;
    let tree = random_spanning_tree(n, rng);
    let m = match cfg.m {
        Some(m) => m,
        None => rng.gen_range(n - 1..=max_edges(n)),
    };
    let mut edges = augment_edges(&tree, n, m, rng)?;
    // Canonical edge order before weight assignment, so identical seeds give
    // byte-identical serialized instances.
    edges.sort_unstable();
    let weighted: Vec<(VertexId, VertexId, Weight)> = match cfg.uniform_phi {
        Some(phi) => edges.into_iter().map(|(u, v)| (u, v, phi)).collect(),
        None => {
            let (lo, hi) = cfg.weight_range;
            edges
                .into_iter()
                .map(|(u, v)| (u, v, rng.gen_range(lo..=hi)))
                .collect()
        }
    };
    let graph = WeightedGraph::build(n, &weighted).expect("generator invariants");
    let mode = match cfg.uniform_phi {
        Some(phi) => DistanceMode::Uniform(phi),
        None => DistanceMode::PerEdge,
    };
    Ok(Instance::new(graph, ConstraintOp::Eq, mode).expect("uniform weights consistent"))
}

/// Structural class of a connected graph.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum GraphClass {
    Tree,
    EvenCyclesOnly,
    HasOddCycle,
}

impl GraphClass {
    pub fn name(self) -> &'static str {
        match self {
            GraphClass::Tree => "tree",
            GraphClass::EvenCyclesOnly => "evencycle",
            GraphClass::HasOddCycle => "oddcycle",
        }
    }
}

impl std::str::FromStr for GraphClass {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "tree" => Ok(GraphClass::Tree),
            "evencycle" => Ok(GraphClass::EvenCyclesOnly),
            "oddcycle" => Ok(GraphClass::HasOddCycle),
            other => Err(format!(
                "unknown class `{other}` (expected tree, evencycle or oddcycle)"
            )),
        }
    }
}

/// Classifies a connected graph as a tree, even-cycles-only, or containing
/// an odd cycle.
pub fn classify(g: &WeightedGraph) -> Result<GraphClass, GenError> {
    if !g.is_connected() {
        return Err(GenError::Disconnected);
    }
    if g.edge_count() == g.vertex_count() - 1 {
        return Ok(GraphClass::Tree);
    }
    if bipartite_check(g).is_bipartite() {
        Ok(GraphClass::EvenCyclesOnly)
    } else {
        Ok(GraphClass::HasOddCycle)
    }
}

/// Aggregate counts over one census run.
#[derive(Debug, Clone, PartialEq)]
pub struct CensusRow {
    pub n: usize,
    pub graphs_generated: u64,
    pub avg_edges: f64,
    pub avg_density: f64,
    pub odd_cycle_count: u64,
    pub even_cycle_count: u64,
    pub tree_count: u64,
    /// Derived: trees plus even-cycles-only graphs.
    pub bipartite_count: u64,
    pub cpu_seconds: f64,
}

/// Generates `count` random graphs of `n` vertices (edge count sampled
/// fresh per graph) and tallies their structural classes. Weights are
/// irrelevant for classification and skipped.
pub fn census(n: usize, count: u64, rng_seed: u64) -> Result<CensusRow, GenError> {
    if n == 0 {
        return Err(GenError::ZeroVertices);
    }
    let started = std::time::Instant::now();
    let mut rng = rng_stream(rng_seed, 0);
    let mut edges_total: u64 = 0;
    let (mut odd, mut even, mut trees) = (0u64, 0u64, 0u64);
    for _ in 0..count {
        let tree = random_spanning_tree(n, &mut rng);
        let m = rng.gen_range(n - 1..=max_edges(n));
        let edges = augment_edges(&tree, n, m, &mut rng)?;
        edges_total += edges.len() as u64;
        let weighted: Vec<_> = edges.into_iter().map(|(u, v)| (u, v, 1)).collect();
        let g = WeightedGraph::build(n, &weighted).expect("generator invariants");
        match classify(&g)? {
            GraphClass::Tree => trees += 1,
            GraphClass::EvenCyclesOnly => even += 1,
            GraphClass::HasOddCycle => odd += 1,
        }
    }
    let avg_edges = edges_total as f64 / count as f64;
    Ok(CensusRow {
        n,
        graphs_generated: count,
        avg_edges,
        avg_density: avg_edges / max_edges(n) as f64,
        odd_cycle_count: odd,
        even_cycle_count: even,
        tree_count: trees,
        bipartite_count: even + trees,
        cpu_seconds: started.elapsed().as_secs_f64(),
    })
}

/// CSV header matching [`census_csv_row`].
pub const CENSUS_CSV_HEADER: &str =
    "n,graphs,avg_edges,avg_density,odd_cycle_graphs,even_cycle_graphs,trees,bipartite_graphs,cpu_s";

pub fn census_csv_row(row: &CensusRow) -> String {
    format!(
        "{},{},{:.2},{:.4},{},{},{},{},{:.2}",
        row.n,
        row.graphs_generated,
        row.avg_edges,
        row.avg_density,
        row.odd_cycle_count,
        row.even_cycle_count,
        row.tree_count,
        row.bipartite_count,
        row.cpu_seconds,
    )
}

/// Generates instances until one classifies as the requested class, up to
/// `max_attempts`. The stream index advances per attempt so the sequence is
/// reproducible regardless of where a hit occurs.
pub fn generate_of_class(
    cfg: &GenConfig,
    class: GraphClass,
    max_attempts: u64,
) -> Result<Option<Instance>, GenError> {
    cfg.validate()?;
    for attempt in 0..max_attempts {
        let mut rng = rng_stream(cfg.rng_seed, attempt);
        let inst = generate_with(cfg, &mut rng)?;
        if classify(inst.graph())? == class {
            return Ok(Some(inst));
        }
    }
    Ok(None)
}
