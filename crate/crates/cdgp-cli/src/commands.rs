use anyhow::{bail, Context, Result};
use cdgp::gen::{self, GenConfig, GraphClass};
use cdgp::instance::Objective;
use cdgp::io;
use cdgp::oracle::{self, OracleOutcome};
use cdgp::recognizers::{bipartite_check, is_tree, BipartiteResult};
use cdgp::reductions::{partition_to_cdgp, PartitionInstance};
use cdgp::{Budget, ConstraintOp, Embedding, Instance, SolveOptions, SolveOutcome, Strategy};
use clap::{Args, Parser, Subcommand, ValueEnum};
use std::fs;
use std::io::Write as _;
use std::path::{Path, PathBuf};
use std::time::Duration;

#[derive(Parser)]
#[command(
    name = "cdgp",
    about = "Distance-constrained graph coloring: exact solvers, recognizers, generators",
    version
)]
pub struct Cli {
    #[command(subcommand)]
    command: Command,

    /// Seed for anything random (generation, census).
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,

    /// Time limit in seconds for solver runs (env: CDGP_TIME_LIMIT).
    #[arg(long, global = true)]
    time_limit: Option<f64>,

    /// Output file (default: stdout). `gen --count` and `reduce --input`
    /// treat this as a directory.
    #[arg(long, global = true)]
    output: Option<PathBuf>,

    /// Report format for solve/oracle/census.
    #[arg(long, global = true, value_enum, default_value_t = Format::Human)]
    format: Format,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Human,
    Csv,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Mode {
    Decision,
    Optimize,
}

impl Mode {
    fn objective(self) -> Objective {
        match self {
            Mode::Decision => Objective::Decision,
            Mode::Optimize => Objective::MinimizeSpan,
        }
    }
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Op {
    Eq,
    Geq,
}

impl Op {
    fn constraint(self) -> ConstraintOp {
        match self {
            Op::Eq => ConstraintOp::Eq,
            Op::Geq => ConstraintOp::Geq,
        }
    }
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum StrategyArg {
    Prev,
    #[value(name = "prev-feascheckfull", alias = "feascheckfull")]
    PrevFeasCheckFull,
    Select,
}

impl StrategyArg {
    fn strategy(self) -> Strategy {
        match self {
            StrategyArg::Prev => Strategy::Prev,
            StrategyArg::PrevFeasCheckFull => Strategy::PrevFeasCheckFull,
            StrategyArg::Select => Strategy::Select,
        }
    }
}

#[derive(Args)]
struct SolveArgs {
    /// Instance file.
    instance: PathBuf,
    #[arg(long, value_enum, default_value_t = StrategyArg::Prev)]
    strategy: StrategyArg,
    #[arg(long, value_enum, default_value_t = Mode::Decision)]
    mode: Mode,
    /// Fix the start vertex (1-indexed) instead of sweeping all starts.
    #[arg(long)]
    start_vertex: Option<usize>,
    /// Override the initial upper bound on the span.
    #[arg(long)]
    ub: Option<u64>,
    /// Abort after this many search nodes.
    #[arg(long)]
    node_limit: Option<u64>,
}

#[derive(Subcommand)]
enum Command {
    /// Run the branch-prune-and-bound solver on an instance file.
    Solve(SolveArgs),
    /// Run the exhaustive reference solver on a small instance.
    Oracle {
        instance: PathBuf,
        /// Span cap for a definitive verdict (default: 1 + total weight).
        #[arg(long)]
        span_cap: Option<u64>,
        /// Vertex-count guard against exponential blowups.
        #[arg(long, default_value_t = oracle::DEFAULT_MAX_N)]
        max_n: usize,
    },
    /// Generate random connected instances.
    Gen {
        #[arg(long)]
        n: usize,
        /// Edge count (default: sampled uniformly per instance).
        #[arg(long)]
        m: Option<usize>,
        /// Weight range lower bound.
        #[arg(long, default_value_t = 1)]
        w_lo: u64,
        /// Weight range upper bound.
        #[arg(long, default_value_t = 30)]
        w_hi: u64,
        /// Uniform distance; overrides the weight range.
        #[arg(long)]
        phi: Option<u64>,
        #[arg(long, value_enum, default_value_t = Op::Eq)]
        op: Op,
        /// Keep generating until the graph classifies as this.
        #[arg(long = "type", value_enum)]
        class: Option<ClassArg>,
        /// Number of instances (requires --output directory when > 1).
        #[arg(long, default_value_t = 1)]
        count: usize,
        /// Give up on --type filtering after this many attempts.
        #[arg(long, default_value_t = 100_000)]
        max_attempts: u64,
    },
    /// Generate many graphs and tally their structural classes.
    Census {
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 10_000)]
        count: u64,
    },
    /// Classify an instance graph and print certificates.
    Classify { instance: PathBuf },
    /// Build cycle instances from integer multisets (equal-sum splitting).
    Reduce {
        /// Whitespace-separated integers, e.g. "1 4 5 6 7 9".
        values: Option<String>,
        /// File with one integer list per line.
        #[arg(long)]
        input: Option<PathBuf>,
    },
    /// Run (instances x strategies) and emit a CSV of solve statistics.
    Bench {
        instances: Vec<PathBuf>,
        /// Comma-separated strategies.
        #[arg(long, value_enum, value_delimiter = ',', default_values_t = [StrategyArg::Prev, StrategyArg::PrevFeasCheckFull, StrategyArg::Select])]
        strategies: Vec<StrategyArg>,
        #[arg(long, value_enum, default_value_t = Mode::Decision)]
        mode: Mode,
        #[arg(long)]
        node_limit: Option<u64>,
    },
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum ClassArg {
    Tree,
    Evencycle,
    Oddcycle,
}

impl ClassArg {
    fn class(self) -> GraphClass {
        match self {
            ClassArg::Tree => GraphClass::Tree,
            ClassArg::Evencycle => GraphClass::EvenCyclesOnly,
            ClassArg::Oddcycle => GraphClass::HasOddCycle,
        }
    }
}

pub fn run(cli: Cli) -> Result<i32> {
    let time_limit = effective_time_limit(cli.time_limit)?;
    match cli.command {
        Command::Solve(args) => cmd_solve(args, time_limit, cli.output, cli.format),
        Command::Oracle {
            instance,
            span_cap,
            max_n,
        } => cmd_oracle(&instance, span_cap, max_n, cli.output, cli.format),
        Command::Gen {
            n,
            m,
            w_lo,
            w_hi,
            phi,
            op,
            class,
            count,
            max_attempts,
        } => cmd_gen(
            GenArgs {
                n,
                m,
                w_lo,
                w_hi,
                phi,
                op,
                class,
                count,
                max_attempts,
                seed: cli.seed,
            },
            cli.output,
        ),
        Command::Census { n, count } => cmd_census(n, count, cli.seed, cli.output, cli.format),
        Command::Classify { instance } => cmd_classify(&instance, cli.output),
        Command::Reduce { values, input } => cmd_reduce(values, input, cli.output),
        Command::Bench {
            instances,
            strategies,
            mode,
            node_limit,
        } => cmd_bench(
            instances, strategies, mode, node_limit, time_limit, cli.output,
        ),
    }
}

fn effective_time_limit(flag: Option<f64>) -> Result<Option<Duration>> {
    let secs = match flag {
        Some(s) => Some(s),
        None => match std::env::var("CDGP_TIME_LIMIT") {
            Ok(v) => Some(
                v.parse::<f64>()
                    .context("CDGP_TIME_LIMIT must be seconds")?,
            ),
            Err(_) => None,
        },
    };
    match secs {
        Some(s) if s < 0.0 => bail!("time limit must be non-negative"),
        Some(s) => Ok(Some(Duration::from_secs_f64(s))),
        None => Ok(None),
    }
}

fn load_instance(path: &Path) -> Result<Instance> {
    let text = fs::read_to_string(path)
        .with_context(|| format!("cannot read instance file {}", path.display()))?;
    let inst =
        io::parse_instance(&text).with_context(|| format!("cannot parse {}", path.display()))?;
    if !inst.graph().is_connected() {
        eprintln!(
            "warning: {} is disconnected; the solver explores only the start component",
            path.display()
        );
    }
    Ok(inst)
}

fn write_output(output: Option<&Path>, content: &str) -> Result<()> {
    match output {
        Some(path) => {
            fs::write(path, content).with_context(|| format!("cannot write {}", path.display()))?
        }
        None => print!("{content}"),
    }
    Ok(())
}

fn instance_stem(path: &Path) -> String {
    path.file_stem()
        .map(|s| s.to_string_lossy().into_owned())
        .unwrap_or_else(|| "instance".into())
}

fn outcome_exit_code(outcome: &SolveOutcome) -> i32 {
    match outcome {
        SolveOutcome::Feasible { .. } => 0,
        SolveOutcome::Infeasible => 1,
        SolveOutcome::TimedOut { .. } => 2,
    }
}

fn render_embedding(e: &Embedding) -> String {
    e.colors()
        .iter()
        .map(|c| c.map(|c| c.to_string()).unwrap_or_else(|| "-".into()))
        .collect::<Vec<_>>()
        .join(" ")
}

fn cmd_solve(
    args: SolveArgs,
    time_limit: Option<Duration>,
    output: Option<PathBuf>,
    format: Format,
) -> Result<i32> {
    let inst = load_instance(&args.instance)?;
    let start_vertex = match args.start_vertex {
        Some(0) => bail!("--start-vertex is 1-indexed"),
        Some(v) => Some(v - 1),
        None => None,
    };
    let opts = SolveOptions {
        strategy: args.strategy.strategy(),
        objective: args.mode.objective(),
        budget: Budget {
            time_limit,
            node_limit: args.node_limit,
        },
        start_vertex,
        initial_ub: args.ub,
    };
    let (outcome, stats) = cdgp::solve(&inst, &opts)?;

    let report = match format {
        Format::Csv => format!(
            "{}\n{}\n",
            io::STATS_CSV_HEADER,
            io::stats_csv_row(
                &instance_stem(&args.instance),
                opts.strategy.name(),
                &outcome,
                &stats
            )
        ),
        Format::Human => {
            let mut s = String::new();
            match &outcome {
                SolveOutcome::Feasible { embedding, span } => {
                    s.push_str("outcome: feasible\n");
                    s.push_str(&format!("span: {span}\n"));
                    s.push_str(&format!("colors: {}\n", render_embedding(embedding)));
                }
                SolveOutcome::Infeasible => s.push_str("outcome: infeasible\n"),
                SolveOutcome::TimedOut { best } => {
                    s.push_str("outcome: timeout\n");
                    if let Some(e) = best {
                        s.push_str(&format!("best span: {}\n", e.span().unwrap()));
                        s.push_str(&format!("colors: {}\n", render_embedding(e)));
                    }
                }
            }
            s.push_str(&format!(
                "nodes: {}\nprunes: {}\nbounds: {}\nsolutions: {}\n",
                stats.nodes, stats.prunes, stats.bounds, stats.solutions
            ));
            if let Some(t) = stats.time_to_first {
                s.push_str(&format!("time_first_s: {:.3}\n", t.as_secs_f64()));
            }
            s.push_str(&format!(
                "time_total_s: {:.3}\n",
                stats.time_total.as_secs_f64()
            ));
            s
        }
    };
    write_output(output.as_deref(), &report)?;
    Ok(outcome_exit_code(&outcome))
}

fn cmd_oracle(
    instance: &Path,
    span_cap: Option<u64>,
    max_n: usize,
    output: Option<PathBuf>,
    format: Format,
) -> Result<i32> {
    let inst = load_instance(instance)?;
    let cap = span_cap.unwrap_or_else(|| oracle::definitive_span_cap(&inst));
    let result = oracle::oracle_solve_with_limit(&inst, cap, max_n)?;
    let (report, code) = match &result.outcome {
        OracleOutcome::Feasible { span, witness } => {
            let report = match format {
                Format::Human => format!(
                    "outcome: feasible\nspan: {span}\ncolors: {}\nexplored: {}\n",
                    render_embedding(witness),
                    result.explored
                ),
                Format::Csv => format!(
                    "instance,span,explored\n{},{span},{}\n",
                    instance_stem(instance),
                    result.explored
                ),
            };
            (report, 0)
        }
        OracleOutcome::Infeasible => {
            let report = match format {
                Format::Human => format!(
                    "outcome: no embedding with span <= {cap}\nexplored: {}\n",
                    result.explored
                ),
                Format::Csv => format!(
                    "instance,span,explored\n{},infeasible,{}\n",
                    instance_stem(instance),
                    result.explored
                ),
            };
            (report, 1)
        }
    };
    write_output(output.as_deref(), &report)?;
    Ok(code)
}

struct GenArgs {
    n: usize,
    m: Option<usize>,
    w_lo: u64,
    w_hi: u64,
    phi: Option<u64>,
    op: Op,
    class: Option<ClassArg>,
    count: usize,
    max_attempts: u64,
    seed: u64,
}

fn cmd_gen(args: GenArgs, output: Option<PathBuf>) -> Result<i32> {
    if args.count == 0 {
        bail!("--count must be at least 1");
    }
    if args.count > 1 {
        let Some(dir) = output.as_deref() else {
            bail!("--count > 1 requires --output <dir>");
        };
        fs::create_dir_all(dir)?;
    }
    for index in 0..args.count {
        // Separate stream per instance index; class filtering advances the
        // stream further, so each emitted file names its own seed/stream.
        let seed = args.seed.wrapping_add(index as u64);
        let cfg = GenConfig {
            n: args.n,
            m: args.m,
            weight_range: (args.w_lo, args.w_hi),
            uniform_phi: args.phi,
            rng_seed: seed,
        };
        let inst = match args.class {
            None => gen::generate(&cfg)?,
            Some(class) => gen::generate_of_class(&cfg, class.class(), args.max_attempts)?
                .with_context(|| {
                    format!(
                        "no {} graph with n = {} found within {} attempts",
                        class.class().name(),
                        args.n,
                        args.max_attempts
                    )
                })?,
        };
        let inst = inst.with_op(args.op.constraint());
        let class_name = args.class.map(|c| c.class().name()).unwrap_or("rand");
        let mut text = format!(
            "# generator: rng={} seed={} n={} class={}\n",
            gen::RNG_ALGORITHM,
            seed,
            args.n,
            class_name
        );
        text.push_str(&io::serialize_instance(&inst));
        if args.count == 1 {
            write_output(output.as_deref(), &text)?;
        } else {
            let dir = output.as_deref().expect("checked above");
            let name = format!("{class_name}{}_{}.cdgp", args.n, index + 1);
            fs::write(dir.join(&name), &text)?;
        }
    }
    Ok(0)
}

fn cmd_census(
    n: usize,
    count: u64,
    seed: u64,
    output: Option<PathBuf>,
    format: Format,
) -> Result<i32> {
    let row = gen::census(n, count, seed)?;
    let report = match format {
        Format::Csv | Format::Human => {
            format!(
                "{}\n{}\n",
                gen::CENSUS_CSV_HEADER,
                gen::census_csv_row(&row)
            )
        }
    };
    write_output(output.as_deref(), &report)?;
    Ok(0)
}

fn cmd_classify(instance: &Path, output: Option<PathBuf>) -> Result<i32> {
    let text = fs::read_to_string(instance)
        .with_context(|| format!("cannot read instance file {}", instance.display()))?;
    let inst = io::parse_instance(&text)?;
    let g = inst.graph();
    let mut report = String::new();
    report.push_str(&format!("connected: {}\n", g.is_connected()));
    report.push_str(&format!("tree: {}\n", is_tree(g)));
    if g.is_connected() {
        report.push_str(&format!("class: {}\n", gen::classify(g)?.name()));
    }
    match bipartite_check(g) {
        BipartiteResult::Bipartite { sides } => {
            report.push_str("bipartite: true\n");
            let side_str: Vec<String> = sides.iter().map(|s| s.to_string()).collect();
            report.push_str(&format!("sides: {}\n", side_str.join(" ")));
        }
        BipartiteResult::OddCycle { walk } => {
            report.push_str("bipartite: false\n");
            let walk_str: Vec<String> = walk.iter().map(|v| (v + 1).to_string()).collect();
            report.push_str(&format!("odd cycle: {}\n", walk_str.join(" ")));
        }
    }
    write_output(output.as_deref(), &report)?;
    Ok(0)
}

fn parse_values(line: &str) -> Result<Vec<u64>> {
    line.split_whitespace()
        .map(|t| {
            t.parse::<u64>()
                .with_context(|| format!("invalid integer `{t}`"))
        })
        .collect()
}

fn cmd_reduce(
    values: Option<String>,
    input: Option<PathBuf>,
    output: Option<PathBuf>,
) -> Result<i32> {
    match (values, input) {
        (Some(list), None) => {
            let values = parse_values(&list)?;
            let p = PartitionInstance::new(values)?;
            let inst = partition_to_cdgp(&p)?;
            write_output(output.as_deref(), &io::serialize_instance(&inst))?;
            Ok(0)
        }
        (None, Some(path)) => {
            let Some(dir) = output.as_deref() else {
                bail!("reduce --input requires --output <dir>");
            };
            fs::create_dir_all(dir)?;
            let text = fs::read_to_string(&path)
                .with_context(|| format!("cannot read {}", path.display()))?;
            for (i, line) in text.lines().enumerate() {
                if line.trim().is_empty() {
                    continue;
                }
                let values = parse_values(line)?;
                let r = values.len();
                let p = PartitionInstance::new(values)?;
                let inst = partition_to_cdgp(&p)?;
                let name = format!("partition{}_{}.cdgp", r, i + 1);
                fs::write(dir.join(&name), io::serialize_instance(&inst))?;
            }
            Ok(0)
        }
        (Some(_), Some(_)) => bail!("pass either an inline list or --input, not both"),
        (None, None) => bail!("pass an integer list or --input <file>"),
    }
}

fn cmd_bench(
    instances: Vec<PathBuf>,
    strategies: Vec<StrategyArg>,
    mode: Mode,
    node_limit: Option<u64>,
    time_limit: Option<Duration>,
    output: Option<PathBuf>,
) -> Result<i32> {
    if instances.is_empty() {
        bail!("bench needs at least one instance file");
    }
    if strategies.is_empty() {
        bail!("bench needs at least one strategy");
    }
    let mut sink: Box<dyn std::io::Write> = match output.as_deref() {
        Some(path) => Box::new(fs::File::create(path)?),
        None => Box::new(std::io::stdout()),
    };
    writeln!(sink, "{}", io::STATS_CSV_HEADER)?;
    sink.flush()?;
    for path in &instances {
        let inst = load_instance(path)?;
        let stem = instance_stem(path);
        for strategy in &strategies {
            let opts = SolveOptions {
                strategy: strategy.strategy(),
                objective: mode.objective(),
                budget: Budget {
                    time_limit,
                    node_limit,
                },
                start_vertex: None,
                initial_ub: None,
            };
            let (outcome, stats) = cdgp::solve(&inst, &opts)?;
            // Flush per row so partial results survive interruption.
            writeln!(
                sink,
                "{}",
                io::stats_csv_row(&stem, opts.strategy.name(), &outcome, &stats)
            )?;
            sink.flush()?;
        }
    }
    Ok(0)
}
