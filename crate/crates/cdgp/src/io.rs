//! Text format for instances and CSV emission of benchmark statistics.
//!
//! Instance grammar (one item per line, `#` starts a comment to end of line):
//!
//! ```text
//! p cdgp <n> <m> <op> <mode>
//! e <u> <v> <d>
//! ```
//!
//! where `op` is `eq` or `geq` and `mode` is `peredge` or `uniform <phi>`.
//! Vertices are 1-indexed in files and translated to 0-indexed internally.
//! Serialization is canonical: edges normalized `u < v`, sorted
//! lexicographically, single spaces, trailing newline. The objective
//! (decision vs minimum span) is not stored; it is a solver parameter.

use crate::graph::{GraphError, Weight, WeightedGraph};
use crate::instance::{ConstraintOp, DistanceMode, Instance};
use crate::solver::{SearchStats, SolveOutcome};
use std::fmt::Write as _;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ParseError {
    #[error("line {line}: syntax error: {msg}")]
    Syntax { line: usize, msg: String },
    #[error("line {line}: edge weight {d} differs from uniform distance {phi}")]
    InconsistentUniformWeight { line: usize, d: Weight, phi: Weight },
    #[error("line {line}: {source}")]
    Graph { line: usize, source: GraphError },
    #[error("expected {expected} edge lines, found {found}")]
    EdgeCountMismatch { expected: usize, found: usize },
    #[error("missing header line")]
    MissingHeader,
}

fn syntax(line: usize, msg: impl Into<String>) -> ParseError {
    ParseError::Syntax {
        line,
        msg: msg.into(),
    }
}

/// Parses an instance from its text representation.
pub fn parse_instance(text: &str) -> Result<Instance, ParseError> {
    let mut header: Option<(usize, usize, ConstraintOp, DistanceMode, usize)> = None;
    let mut edges: Vec<(usize, usize, Weight)> = Vec::new();

    for (idx, raw) in text.lines().enumerate() {
        let lineno = idx + 1;
        let content = match raw.find('#') {
            Some(pos) => &raw[..pos],
            None => raw,
        };
        let mut tokens = content.split_ascii_whitespace();
        let Some(first) = tokens.next() else { continue };
        match first {
            "p" => {
                if header.is_some() {
                    return Err(syntax(lineno, "duplicate header"));
                }
                if tokens.next() != Some("cdgp") {
                    return Err(syntax(lineno, "expected `p cdgp ...`"));
                }
                let n: usize = next_number(&mut tokens, lineno, "vertex count")?;
                let m: usize = next_number(&mut tokens, lineno, "edge count")?;
                let op = match tokens.next() {
                    Some("eq") => ConstraintOp::Eq,
                    Some("geq") => ConstraintOp::Geq,
                    other => {
                        return Err(syntax(lineno, format!("expected op eq|geq, got {other:?}")))
                    }
                };
                let mode = match tokens.next() {
                    Some("peredge") => DistanceMode::PerEdge,
                    Some("uniform") => {
                        let phi: Weight = next_number(&mut tokens, lineno, "uniform distance")?;
                        DistanceMode::Uniform(phi)
                    }
                    other => {
                        return Err(syntax(
                            lineno,
                            format!("expected mode peredge|uniform <phi>, got {other:?}"),
                        ))
                    }
                };
                if tokens.next().is_some() {
                    return Err(syntax(lineno, "trailing tokens after header"));
                }
                header = Some((n, m, op, mode, lineno));
            }
            "e" => {
                let Some((n, _, _, mode, _)) = header else {
                    return Err(syntax(lineno, "edge line before header"));
                };
                let u: usize = next_number(&mut tokens, lineno, "edge endpoint")?;
                let v: usize = next_number(&mut tokens, lineno, "edge endpoint")?;
                let d: Weight = next_number(&mut tokens, lineno, "edge weight")?;
                if tokens.next().is_some() {
                    return Err(syntax(lineno, "trailing tokens after edge"));
                }
                if u == 0 || v == 0 || u > n || v > n {
                    return Err(syntax(lineno, format!("vertex ids must be in 1..={n}")));
                }
                if let DistanceMode::Uniform(phi) = mode {
                    if d != phi {
                        return Err(ParseError::InconsistentUniformWeight {
                            line: lineno,
                            d,
                            phi,
                        });
                    }
                }
                edges.push((u - 1, v - 1, d));
            }
            _ => return Err(syntax(lineno, format!("unrecognized line kind `{first}`"))),
        }
    }

    let Some((n, m, op, mode, header_line)) = header else {
        return Err(ParseError::MissingHeader);
    };
    if edges.len() != m {
        return Err(ParseError::EdgeCountMismatch {
            expected: m,
            found: edges.len(),
        });
    }
    let graph = WeightedGraph::build(n, &edges).map_err(|source| ParseError::Graph {
        line: header_line,
        source,
    })?;
    // Uniform consistency was enforced per edge line; construction cannot fail.
    Ok(Instance::new(graph, op, mode).expect("uniform weights validated per line"))
}

fn next_number<T: std::str::FromStr>(
    tokens: &mut std::str::SplitAsciiWhitespace<'_>,
    lineno: usize,
    what: &str,
) -> Result<T, ParseError> {
    let tok = tokens
        .next()
        .ok_or_else(|| syntax(lineno, format!("missing {what}")))?;
    tok.parse()
        .map_err(|_| syntax(lineno, format!("invalid {what} `{tok}`")))
}

/// Serializes an instance in canonical form.
///
/// Canonical means: header first, edges sorted lexicographically with
/// `u < v`, exactly one space between tokens, trailing newline, no comments.
/// Structurally equal instances serialize to identical bytes.
pub fn serialize_instance(inst: &Instance) -> String {
    let g = inst.graph();
    let op = match inst.op() {
        ConstraintOp::Eq => "eq",
        ConstraintOp::Geq => "geq",
    };
    let mut out = String::new();
    match inst.distance_mode() {
        DistanceMode::PerEdge => {
            let _ = writeln!(
                out,
                "p cdgp {} {} {} peredge",
                g.vertex_count(),
                g.edge_count(),
                op
            );
        }
        DistanceMode::Uniform(phi) => {
            let _ = writeln!(
                out,
                "p cdgp {} {} {} uniform {}",
                g.vertex_count(),
                g.edge_count(),
                op,
                phi
            );
        }
    }
    for e in g.edges() {
        let _ = writeln!(out, "e {} {} {}", e.u + 1, e.v + 1, e.d);
    }
    out
}

/// Header of the benchmark statistics CSV.
pub const STATS_CSV_HEADER: &str =
    "instance,strategy,span,bounds,prunes,solutions,nodes,time_first_s,time_total_s";

/// Span column rendering for an outcome: a number for feasible runs,
/// `infeasible` when the search space is exhausted, `timeout` (with the
/// best-so-far span appended as `timeout:<span>` when one exists) on budget
/// exhaustion.
pub fn span_cell(outcome: &SolveOutcome) -> String {
    match outcome {
        SolveOutcome::Feasible { span, .. } => span.to_string(),
        SolveOutcome::Infeasible => "infeasible".to_string(),
        SolveOutcome::TimedOut { best: None } => "timeout".to_string(),
        SolveOutcome::TimedOut { best: Some(e) } => {
            format!("timeout:{}", e.span().expect("incumbent is total"))
        }
    }
}

/// One CSV row (no trailing newline) for a solve run.
pub fn stats_csv_row(
    instance: &str,
    strategy: &str,
    outcome: &SolveOutcome,
    stats: &SearchStats,
) -> String {
    let time_first = match stats.time_to_first {
        Some(t) => format!("{:.3}", t.as_secs_f64()),
        None => String::new(),
    };
    format!(
        "{},{},{},{},{},{},{},{},{:.3}",
        instance,
        strategy,
        span_cell(outcome),
        stats.bounds,
        stats.prunes,
        stats.solutions,
        stats.nodes,
        time_first,
        stats.time_total.as_secs_f64(),
    )
}

/// Emits benchmark rows as CSV, one row per (instance, strategy) run.
pub fn emit_stats_csv(rows: &[(String, String, SolveOutcome, SearchStats)]) -> String {
    let mut out = String::from(STATS_CSV_HEADER);
    out.push('\n');
    for (instance, strategy, outcome, stats) in rows {
        let _ = writeln!(out, "{}", stats_csv_row(instance, strategy, outcome, stats));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::embedding::Embedding;
    use std::time::Duration;

    #[test]
    fn smallest_nontrivial_file() {
        let inst = parse_instance("p cdgp 2 1 eq peredge\ne 1 2 3\n").unwrap();
        assert_eq!(inst.graph().vertex_count(), 2);
        assert_eq!(inst.op(), ConstraintOp::Eq);
        assert_eq!(inst.graph().weight(0, 1), Some(3));
    }

    #[test]
    fn uniform_triangle_parses() {
        let text = "p cdgp 3 3 eq uniform 5\ne 1 2 5\ne 2 3 5\ne 1 3 5\n";
        let inst = parse_instance(text).unwrap();
        assert_eq!(inst.distance_mode(), DistanceMode::Uniform(5));
        assert_eq!(inst.graph().edge_count(), 3);
        // Round trip back to the exact canonical text.
        assert_eq!(
            serialize_instance(&inst),
            "p cdgp 3 3 eq uniform 5\ne 1 2 5\ne 1 3 5\ne 2 3 5\n"
        );
    }

    #[test]
    fn inconsistent_uniform_weight_reports_line() {
        let text = "p cdgp 3 3 eq uniform 5\ne 1 2 4\ne 2 3 5\ne 1 3 5\n";
        let err = parse_instance(text).unwrap_err();
        assert_eq!(
            err,
            ParseError::InconsistentUniformWeight {
                line: 2,
                d: 4,
                phi: 5
            }
        );
    }

    #[test]
    fn comments_and_blank_lines_are_ignored() {
        let text = "# generated instance\n\np cdgp 2 1 geq peredge # header\ne 1 2 9\n";
        let inst = parse_instance(text).unwrap();
        assert_eq!(inst.op(), ConstraintOp::Geq);
        assert_eq!(inst.graph().weight(0, 1), Some(9));
    }

    #[test]
    fn bad_lines_report_line_numbers() {
        let err = parse_instance("p cdgp 2 1 eq peredge\nx 1 2 3\n").unwrap_err();
        assert!(matches!(err, ParseError::Syntax { line: 2, .. }));

        let err = parse_instance("p cdgp 2 1 eq peredge\ne 0 2 3\n").unwrap_err();
        assert!(matches!(err, ParseError::Syntax { line: 2, .. }));

        let err = parse_instance("p cdgp 2 2 eq peredge\ne 1 2 3\n").unwrap_err();
        assert_eq!(
            err,
            ParseError::EdgeCountMismatch {
                expected: 2,
                found: 1
            }
        );
    }

    #[test]
    fn graph_errors_are_forwarded() {
        let err = parse_instance("p cdgp 3 2 eq peredge\ne 1 2 3\ne 2 1 4\n").unwrap_err();
        assert!(matches!(
            err,
            ParseError::Graph {
                source: GraphError::DuplicateEdge { u: 0, v: 1 },
                ..
            }
        ));
    }

    #[test]
    fn degenerate_single_vertex_serialization() {
        let g = WeightedGraph::build(1, &[]).unwrap();
        let inst = Instance::per_edge(g, ConstraintOp::Eq);
        assert_eq!(serialize_instance(&inst), "p cdgp 1 0 eq peredge\n");
    }

    #[test]
    fn canonical_edge_ordering() {
        // A 4-cycle given in rotation order serializes sorted.
        let g = WeightedGraph::build(4, &[(0, 1, 7), (1, 2, 5), (2, 3, 7), (3, 0, 5)]).unwrap();
        let inst = Instance::per_edge(g, ConstraintOp::Eq);
        assert_eq!(
            serialize_instance(&inst),
            "p cdgp 4 4 eq peredge\ne 1 2 7\ne 1 4 5\ne 2 3 5\ne 3 4 7\n"
        );
    }

    #[test]
    fn stats_csv_sentinels() {
        let stats = SearchStats {
            nodes: 10,
            prunes: 2,
            bounds: 1,
            solutions: 0,
            time_to_first: None,
            time_total: Duration::from_millis(1500),
        };
        let rows = vec![
            (
                "a".to_string(),
                "prev".to_string(),
                SolveOutcome::Infeasible,
                stats.clone(),
            ),
            (
                "b".to_string(),
                "select".to_string(),
                SolveOutcome::Feasible {
                    embedding: Embedding::total(&[1, 20]).unwrap(),
                    span: 19,
                },
                SearchStats {
                    solutions: 1,
                    time_to_first: Some(Duration::from_millis(250)),
                    ..stats.clone()
                },
            ),
        ];
        let csv = emit_stats_csv(&rows);
        let lines: Vec<&str> = csv.lines().collect();
        assert_eq!(lines[0], STATS_CSV_HEADER);
        assert_eq!(lines[1], "a,prev,infeasible,1,2,0,10,,1.500");
        assert_eq!(lines[2], "b,select,19,1,2,1,10,0.250,1.500");
    }

    #[test]
    fn stats_csv_empty_is_header_only() {
        assert_eq!(emit_stats_csv(&[]), format!("{STATS_CSV_HEADER}\n"));
    }
}
