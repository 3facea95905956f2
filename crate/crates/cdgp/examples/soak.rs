use cdgp::graph::WeightedGraph;
use cdgp::instance::{ConstraintOp, Instance, Objective};
use cdgp::oracle::{definitive_span_cap, oracle_solve};
use cdgp::solver::{solve, SolveOptions, Strategy};

fn main() {
    let g = WeightedGraph::build(
        6,
        &[(0, 4, 7), (0, 5, 8), (1, 2, 10), (1, 3, 26), (2, 4, 12), (3, 5, 25)],
    )
    .unwrap();
    let inst = Instance::per_edge(g, ConstraintOp::Eq);
    let oracle = oracle_solve(&inst, definitive_span_cap(&inst)).unwrap();
    println!("oracle: span={:?} explored={}", oracle.span(), oracle.explored);
    if let cdgp::oracle::OracleOutcome::Feasible { witness, .. } = &oracle.outcome {
        println!("witness: {:?}", witness.colors().iter().map(|c| c.unwrap()).collect::<Vec<_>>());
    }
    for s in Strategy::ALL {
        for obj in [Objective::Decision, Objective::MinimizeSpan] {
            let (out, st) = solve(&inst, &SolveOptions::new(s, obj)).unwrap();
            println!("{} {:?}: {:?} (nodes {})", s.name(), obj, out.span(), st.nodes);
        }
    }
}
