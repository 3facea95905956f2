//! Validates the oracle against a second, fully naive reference: iterative
//! deepening over the span, enumerating every assignment `V -> [1, s]`.
//! Only viable for tiny instances, which is exactly why the production
//! oracle enumerates smarter; the two must agree wherever both can run.

use cdgp::embedding::{check_embedding, CheckResult, Embedding};
use cdgp::gen::{self, GenConfig};
use cdgp::instance::{ConstraintOp, Instance};
use cdgp::oracle::{definitive_span_cap, oracle_solve};
use rand::Rng;

/// Literal reference: smallest span s <= cap admitting a valid total
/// assignment, by enumerating all s^n colorings per s.
fn naive_minimum_span(inst: &Instance, cap: u64) -> Option<u64> {
    let n = inst.graph().vertex_count();
    let op = inst.op();
    let edges = inst.graph().edges();
    for s in 1..=cap {
        let mut colors = vec![1u64; n];
        'assignments: loop {
            let valid = edges.iter().all(|e| op.holds(colors[e.u].abs_diff(colors[e.v]), e.d));
            if valid {
                return Some(s);
            }
            // Odometer increment in base s.
            let mut i = 0;
            loop {
                if i == n {
                    break 'assignments;
                }
                colors[i] += 1;
                if colors[i] <= s {
                    break;
                }
                colors[i] = 1;
                i += 1;
            }
        }
    }
    None
}

#[test]
fn oracle_agrees_with_naive_iterative_deepening() {
    let mut rng = gen::rng_stream(500, 0);
    let mut feasible_seen = 0;
    let mut infeasible_seen = 0;
    for round in 0..120 {
        let n = rng.gen_range(2..=5);
        let cfg = GenConfig { n, m: None, weight_range: (1, 3), uniform_phi: None, rng_seed: 0 };
        let mut inst = gen::generate_with(&cfg, &mut rng).unwrap();
        if round % 2 == 0 {
            inst = inst.with_op(ConstraintOp::Geq);
        }
        let cap = definitive_span_cap(&inst).min(12);
        let expected = naive_minimum_span(&inst, cap);
        let got = oracle_solve(&inst, cap).unwrap();
        assert_eq!(got.span(), expected, "round {round}: {:?}", inst.graph().edges());
        match expected {
            Some(_) => feasible_seen += 1,
            None => infeasible_seen += 1,
        }
    }
    // The sample must exercise both verdicts.
    assert!(feasible_seen >= 30, "only {feasible_seen} feasible samples");
    assert!(infeasible_seen >= 10, "only {infeasible_seen} infeasible samples");
}

#[test]
fn oracle_witness_attains_the_naive_minimum() {
    let mut rng = gen::rng_stream(501, 0);
    for _ in 0..40 {
        let n = rng.gen_range(2..=5);
        let cfg = GenConfig { n, m: Some(n - 1), weight_range: (1, 4), uniform_phi: None, rng_seed: 0 };
        let inst = gen::generate_with(&cfg, &mut rng).unwrap();
        let cap = definitive_span_cap(&inst);
        let result = oracle_solve(&inst, cap).unwrap();
        let span = result.span().expect("trees are feasible for equalities");
        assert_eq!(naive_minimum_span(&inst, cap), Some(span));
        let cdgp::oracle::OracleOutcome::Feasible { witness, .. } = result.outcome else {
            unreachable!()
        };
        assert_eq!(witness.span().unwrap(), span);
        assert_eq!(check_embedding(&inst, &witness).unwrap(), CheckResult::Valid);
    }
}

#[test]
fn shifting_any_naive_witness_preserves_validity() {
    // Spot check of translation invariance on enumerated witnesses: find a
    // valid coloring naively, shift it, and re-verify.
    let mut rng = gen::rng_stream(502, 0);
    for _ in 0..20 {
        let n = rng.gen_range(2..=4);
        let cfg = GenConfig { n, m: Some(n - 1), weight_range: (1, 3), uniform_phi: None, rng_seed: 0 };
        let inst = gen::generate_with(&cfg, &mut rng).unwrap();
        let span = naive_minimum_span(&inst, 10).unwrap();
        // Recover one witness at that span by enumeration.
        let mut colors = vec![1u64; n];
        let witness = 'outer: loop {
            let e = Embedding::total(&colors).unwrap();
            if check_embedding(&inst, &e).unwrap() == CheckResult::Valid {
                break 'outer e;
            }
            let mut i = 0;
            loop {
                assert!(i < n, "a witness must exist at the minimum span");
                colors[i] += 1;
                if colors[i] <= span {
                    break;
                }
                colors[i] = 1;
                i += 1;
            }
        };
        let shifted: Vec<u64> = witness.colors().iter().map(|c| c.unwrap() + 3).collect();
        let shifted = Embedding::total(&shifted).unwrap();
        assert_eq!(check_embedding(&inst, &shifted).unwrap(), CheckResult::Valid);
    }
}
