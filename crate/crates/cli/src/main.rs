//! `vcgraph run | verify | bench`: audited vertex-centric runs, oracle
//! verification and size sweeps.

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use vcgraph::algorithms::AlgoConfig;
use vcgraph::cost::{CostParams, DEFAULT_BPPA_C};
use vcgraph::engine::EngineConfig;
use vcgraph::graph::{generate, load_edge_list, Graph, LoadOptions, VertexId};
use vcgraph::harness::{self, Algorithm, GenTemplate, GraphSummary, Report};

#[derive(Parser)]
#[command(
    name = "vcgraph",
    version,
    about = "Vertex-centric graph algorithms on a simulated BSP machine"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run an algorithm and write its audited report.
    Run(RunArgs),
    /// Run an algorithm and its sequential oracle and compare the outputs.
    Verify(RunArgs),
    /// Sweep graph sizes and fit growth exponents.
    Bench(BenchArgs),
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Json,
    Csv,
}

#[derive(Args)]
struct InputArgs {
    #[arg(long)]
    algo: String,
    #[arg(long)]
    directed: bool,
    #[arg(long)]
    weighted: bool,
    /// Edge-list lines carry an edge label as their last token (data and query).
    #[arg(long)]
    edge_labels: bool,
    /// Query graph edge list (simulation).
    #[arg(long)]
    query: Option<PathBuf>,
    /// Node labels of the query graph; defaults to `<query>.labels`.
    #[arg(long)]
    query_labels: Option<PathBuf>,
}

#[derive(Args)]
struct EngineArgs {
    #[arg(long, default_value_t = 1)]
    workers: usize,
    /// Per-message cost, a unitless ratio to one local operation.
    #[arg(long, default_value_t = 1.0)]
    g: f64,
    /// Synchronization periodicity.
    #[arg(long = "L", default_value_t = 1.0)]
    l: f64,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Superstep cap; for pagerank, the number of rank updates.
    #[arg(long)]
    max_supersteps: Option<usize>,
    #[arg(long, default_value_t = DEFAULT_BPPA_C)]
    bppa_c: f64,
}

#[derive(Args)]
struct AlgoArgs {
    #[arg(long, default_value_t = 0.85)]
    alpha: f64,
    #[arg(long, default_value_t = 0.0)]
    tol: f64,
    /// Original id of the source vertex.
    #[arg(long)]
    source: Option<u64>,
    /// Original id of the root (or list head).
    #[arg(long)]
    root: Option<u64>,
    /// Root for the oracle side of `verify` only (negative control).
    #[arg(long)]
    oracle_root: Option<u64>,
    /// Keep the full distance matrix in diameter output.
    #[arg(long)]
    apsp: bool,
}

#[derive(Args)]
struct RunArgs {
    #[command(flatten)]
    input: InputArgs,
    #[arg(long, required_unless_present = "gen", conflicts_with = "gen")]
    graph: Option<PathBuf>,
    /// Generator spec, `family:key=value,...`.
    #[arg(long)]
    gen: Option<String>,
    /// Node labels of the data graph.
    #[arg(long)]
    labels: Option<PathBuf>,
    #[command(flatten)]
    engine: EngineArgs,
    #[command(flatten)]
    algo: AlgoArgs,
    /// Report path; standard output when absent.
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long, value_enum, default_value = "json")]
    format: Format,
}

#[derive(Args)]
struct BenchArgs {
    #[command(flatten)]
    input: InputArgs,
    /// Generator family, optionally with parameters (`gnp:deg=3,seed=1`).
    #[arg(long)]
    gen: String,
    /// `2^a..2^b` or a comma list; at least four sizes.
    #[arg(long)]
    sizes: String,
    #[command(flatten)]
    engine: EngineArgs,
    #[command(flatten)]
    algo: AlgoArgs,
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long, value_enum, default_value = "csv")]
    format: Format,
}

enum Failure {
    Usage(String),
    Mismatch,
}

impl From<vcgraph::Error> for Failure {
    fn from(e: vcgraph::Error) -> Self {
        Failure::Usage(e.to_string())
    }
}

type Outcome<T> = std::result::Result<T, Failure>;

fn usage<T>(msg: impl Into<String>) -> Outcome<T> {
    Err(Failure::Usage(msg.into()))
}

fn write_out(out: Option<&Path>, text: &str) -> Outcome<()> {
    match out {
        Some(p) => fs::write(p, text)
            .map_err(|e| Failure::Usage(format!("cannot write {}: {e}", p.display()))),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn resolve(g: &Graph, id: u64, flag: &str) -> Outcome<VertexId> {
    match g.id_map().binary_search(&id) {
        Ok(v) => Ok(v as VertexId),
        Err(_) => usage(format!("--{flag} {id} is not a vertex of the graph")),
    }
}

fn load_query(input: &InputArgs) -> Outcome<Option<Graph>> {
    let Some(path) = &input.query else {
        return Ok(None);
    };
    let labels = input.query_labels.clone().unwrap_or_else(|| {
        let mut p = path.clone().into_os_string();
        p.push(".labels");
        PathBuf::from(p)
    });
    let opts = LoadOptions {
        directed: true,
        weighted: false,
        labeled: input.edge_labels,
        labels_path: Some(labels),
    };
    Ok(Some(load_edge_list(path, &opts)?))
}

fn check_flags(alg: Algorithm, input: &InputArgs, algo: &AlgoArgs) -> Outcome<()> {
    if alg.needs_root() && algo.root.is_none() {
        return usage(format!("{alg} requires --root"));
    }
    if alg.needs_source() && algo.source.is_none() {
        return usage(format!("{alg} requires --source"));
    }
    if alg.needs_query() && input.query.is_none() {
        return usage(format!("{alg} requires --query"));
    }
    Ok(())
}

fn configs(
    alg: Algorithm,
    engine: &EngineArgs,
    algo: &AlgoArgs,
) -> Outcome<(AlgoConfig, EngineConfig)> {
    if engine.workers == 0 {
        return usage("--workers must be at least 1");
    }
    let mut cfg = AlgoConfig {
        alpha: algo.alpha,
        tol: algo.tol,
        apsp: algo.apsp,
        ..AlgoConfig::default()
    };
    let mut ec = EngineConfig::default()
        .with_workers(engine.workers)
        .with_seed(engine.seed);
    ec.cost = CostParams::new(engine.g, engine.l, engine.workers)?;
    if let Some(k) = engine.max_supersteps {
        if alg == Algorithm::PageRank {
            cfg.iterations = k;
        } else {
            ec = ec.with_max_supersteps(k);
        }
    }
    cfg.validate()?;
    if !(engine.bppa_c > 0.0) {
        return usage("--bppa-c must be positive");
    }
    Ok((cfg, ec))
}

struct Prepared {
    alg: Algorithm,
    g: Graph,
    query: Option<Graph>,
    summary: GraphSummary,
    cfg: AlgoConfig,
    engine: EngineConfig,
}

fn prepare(args: &RunArgs) -> Outcome<Prepared> {
    let alg: Algorithm = args.input.algo.parse()?;
    check_flags(alg, &args.input, &args.algo)?;
    let (g, summary) = match (&args.graph, &args.gen) {
        (Some(path), _) => {
            let opts = LoadOptions {
                directed: args.input.directed,
                weighted: args.input.weighted,
                labeled: args.input.edge_labels,
                labels_path: args.labels.clone(),
            };
            let g = load_edge_list(path, &opts)?;
            let summary = GraphSummary::new(&g, path.display().to_string(), None);
            (g, summary)
        }
        (None, Some(text)) => {
            if args.labels.is_some() {
                return usage("--labels applies to --graph; use labels=K in the generator spec");
            }
            let spec = GenTemplate::parse(text)?.spec(args.input.directed, args.input.weighted)?;
            let g = generate(&spec)?;
            let summary = GraphSummary::new(&g, text.clone(), Some(spec.seed));
            (g, summary)
        }
        (None, None) => return usage("one of --graph or --gen is required"),
    };
    let (mut cfg, engine) = configs(alg, &args.engine, &args.algo)?;
    if let Some(id) = args.algo.source {
        cfg.source = Some(resolve(&g, id, "source")?);
    }
    if let Some(id) = args.algo.root {
        cfg.root = Some(resolve(&g, id, "root")?);
    }
    let query = load_query(&args.input)?;
    Ok(Prepared {
        alg,
        g,
        query,
        summary,
        cfg,
        engine,
    })
}

fn report_text(r: &Report, format: Format) -> String {
    match format {
        Format::Json => serde_json::to_string_pretty(r).expect("reports serialize") + "\n",
        Format::Csv => {
            let mut s = String::from("superstep,w,h,cost,messages\n");
            for c in &r.cost.supersteps {
                s.push_str(&format!(
                    "{},{},{},{},{}\n",
                    c.superstep, c.w, c.h, c.cost, c.messages
                ));
            }
            s
        }
    }
}

fn summary_line(r: &Report) -> String {
    format!(
        "{}: n={} m={} supersteps={} T={} PT={} BPPA {} digest {}",
        r.algorithm,
        r.graph.n,
        r.graph.m,
        r.supersteps,
        r.cost.total_time,
        r.cost.processor_time,
        if r.bppa.verdict { "PASS" } else { "FAIL" },
        r.digest
    )
}

fn cmd_run(args: &RunArgs) -> Outcome<()> {
    let p = prepare(args)?;
    let exec = harness::execute(p.alg, &p.g, p.query.as_ref(), &p.cfg, &p.engine)?;
    let oracle = harness::run_oracle(p.alg, &p.g, p.query.as_ref(), &p.cfg)?;
    let report = harness::build_report(
        p.alg,
        &p.g,
        p.summary,
        &p.cfg,
        &p.engine,
        args.engine.bppa_c,
        &exec,
        Some(oracle.ops),
    )?;
    write_out(args.out.as_deref(), &report_text(&report, args.format))?;
    if args.out.is_some() {
        println!("{}", summary_line(&report));
    }
    Ok(())
}

fn cmd_verify(args: &RunArgs) -> Outcome<()> {
    let p = prepare(args)?;
    let mut oracle_cfg = p.cfg.clone();
    if let Some(id) = args.algo.oracle_root {
        oracle_cfg.root = Some(resolve(&p.g, id, "oracle-root")?);
    }
    let v = harness::verify_with(
        p.alg,
        &p.g,
        p.query.as_ref(),
        &p.cfg,
        &oracle_cfg,
        &p.engine,
    )?;
    if let Some(out) = &args.out {
        let report = harness::build_report(
            p.alg,
            &p.g,
            p.summary,
            &p.cfg,
            &p.engine,
            args.engine.bppa_c,
            &v.vc,
            Some(v.oracle.ops),
        )?;
        write_out(Some(out), &report_text(&report, args.format))?;
    }
    if v.pass {
        println!(
            "PASS {} matches {} (digest {})",
            p.alg, v.oracle.name, v.vc.digest
        );
        Ok(())
    } else {
        println!("FAIL {} differs from {}", p.alg, v.oracle.name);
        for d in &v.diffs {
            println!("  {d}");
        }
        Err(Failure::Mismatch)
    }
}

fn cmd_bench(args: &BenchArgs) -> Outcome<()> {
    let alg: Algorithm = args.input.algo.parse()?;
    if alg.needs_query() && args.input.query.is_none() {
        return usage(format!("{alg} requires --query"));
    }
    let template = GenTemplate::parse(&args.gen)?;
    let sizes = harness::parse_sizes(&args.sizes)?;
    let (mut cfg, engine) = configs(alg, &args.engine, &args.algo)?;
    // Generated graphs use dense ids, so the flags are taken as-is.
    cfg.source = args.algo.source.map(|v| v as VertexId);
    cfg.root = args.algo.root.map(|v| v as VertexId);
    let query = load_query(&args.input)?;
    let r = harness::bench(
        alg,
        &template,
        &sizes,
        args.input.directed,
        args.input.weighted,
        query.as_ref(),
        &cfg,
        &engine,
        args.engine.bppa_c,
    )?;
    let text = match args.format {
        Format::Csv => r.csv(),
        Format::Json => serde_json::to_string_pretty(&r).expect("reports serialize") + "\n",
    };
    write_out(args.out.as_deref(), &text)?;
    let say = |s: String| {
        if args.out.is_some() {
            println!("{s}")
        } else {
            eprintln!("{s}")
        }
    };
    say(format!(
        "fits: supersteps {:.3} ({:?}), messages {:.3} ({:?}), work ratio {:.3} ({:?})",
        r.superstep_fit.exponent,
        r.superstep_fit.class,
        r.message_fit.exponent,
        r.message_fit.class,
        r.ratio_fit.exponent,
        r.ratio_fit.class
    ));
    say(r.verdict_line());
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match &cli.command {
        Command::Run(a) => cmd_run(a),
        Command::Verify(a) => cmd_verify(a),
        Command::Bench(a) => cmd_bench(a),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Mismatch) => ExitCode::from(1),
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}
