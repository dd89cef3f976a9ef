use std::fs::File;
use std::io::{self, BufReader, BufWriter, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Instant;

use clap::{Args, Parser, Subcommand};

use temporal_betweenness::bench::bench_sources;
use temporal_betweenness::driver::{node_betweenness_sorted, Config};
use temporal_betweenness::generator::{random_temporal_graph, GeneratorParams};
use temporal_betweenness::graph::underlying_graph;
use temporal_betweenness::metrics::{kendall_tau, top_k_intersection, weighted_kendall_tau, Metric};
use temporal_betweenness::oracle::{brandes_static, oracle_betweenness, OracleOptions};
use temporal_betweenness::scores::{read_csv, write_csv};
use temporal_betweenness::{
    parse_edge_list, Beta, CriterionKind, EngineKind, Error, Mode, NodeId, ParseOptions, Scores,
    SortedRepresentation, TemporalGraph,
};

#[derive(Parser)]
#[command(name = "tbc", version, about = "Temporal betweenness centrality")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Node betweenness of every node.
    Compute(RunArgs),
    /// Same CSV as compute, by exhaustive walk enumeration (small inputs only).
    Oracle(RunArgs),
    /// Static betweenness of the underlying directed graph.
    Static(StaticArgs),
    /// Correlation of two score files.
    Compare(CompareArgs),
    /// Per-source timing.
    Bench(BenchArgs),
}

#[derive(Args)]
struct InputArgs {
    /// Edge list: `tail head dep [travel]` per line
    #[arg(long)]
    input: PathBuf,
    /// Add the reverse of every edge
    #[arg(long)]
    undirected: bool,
}

#[derive(Args)]
struct RunArgs {
    #[command(flatten)]
    input: InputArgs,
    /// CSV destination; standard output when omitted
    #[arg(long)]
    output: Option<PathBuf>,
    /// sh, sfo, fa, fo, sfa, la or sla
    #[arg(long, default_value = "sh")]
    criterion: String,
    /// Maximum waiting time, or `inf`
    #[arg(long, default_value = "inf", allow_hyphen_values = true)]
    beta: String,
    /// exact or fast
    #[arg(long, default_value = "exact")]
    mode: String,
    /// Worker threads, 0 for one per core
    #[arg(long, default_value_t = 0)]
    workers: usize,
    /// Comma-separated source labels; all nodes when omitted
    #[arg(long)]
    sources: Option<String>,
}

#[derive(Args)]
struct StaticArgs {
    #[command(flatten)]
    input: InputArgs,
    #[arg(long)]
    output: Option<PathBuf>,
    #[arg(long, default_value = "exact")]
    mode: String,
}

#[derive(Args)]
struct CompareArgs {
    file_a: PathBuf,
    file_b: PathBuf,
    /// kendall, wkendall or topk
    #[arg(long, default_value = "kendall")]
    metric: String,
    /// Size of the top set for topk
    #[arg(long)]
    k: Option<usize>,
}

#[derive(Args)]
struct BenchArgs {
    /// Edge list, or `gen:NODES:EDGES:HORIZON` for a seeded random graph
    #[arg(long)]
    input: String,
    #[arg(long)]
    undirected: bool,
    #[arg(long, default_value = "sh")]
    criterion: String,
    #[arg(long, default_value = "inf", allow_hyphen_values = true)]
    beta: String,
    #[arg(long, default_value = "exact")]
    mode: String,
    /// Comma-separated source labels; the first ten nodes when omitted
    #[arg(long)]
    sources: Option<String>,
    #[arg(long, default_value_t = 5)]
    reps: usize,
    /// Generator seed for `gen:` inputs
    #[arg(long, default_value_t = 0)]
    seed: u64,
}

#[derive(Debug)]
enum Failure {
    Lib(Error),
    Io(String),
    Compare(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Lib(e)
    }
}

impl Failure {
    fn code(&self) -> u8 {
        match self {
            Failure::Lib(Error::Parse { .. }) => 2,
            Failure::Lib(Error::Config(_)) => 3,
            Failure::Lib(Error::Overflow(_)) => 4,
            Failure::Lib(Error::WalkCapExceeded { .. }) => 5,
            Failure::Compare(_) => 6,
            Failure::Lib(_) | Failure::Io(_) => 1,
        }
    }
}

impl std::fmt::Display for Failure {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Failure::Lib(e) => write!(f, "{e}"),
            Failure::Io(m) | Failure::Compare(m) => f.write_str(m),
        }
    }
}

type Outcome = Result<(), Failure>;

fn main() -> ExitCode {
    // usage errors are configuration errors; clap's own code 2 means a bad input file here
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) if !e.use_stderr() => e.exit(),
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(3);
        }
    };
    let result = match cli.command {
        Command::Compute(a) => compute(a, false),
        Command::Oracle(a) => compute(a, true),
        Command::Static(a) => static_cmd(a),
        Command::Compare(a) => compare(a),
        Command::Bench(a) => bench(a),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.code())
        }
    }
}

fn read_graph(path: &Path, undirected: bool) -> Result<TemporalGraph, Failure> {
    let file = File::open(path).map_err(|e| Failure::Io(format!("{}: {e}", path.display())))?;
    let options = ParseOptions {
        undirected,
        ..ParseOptions::default()
    };
    Ok(parse_edge_list(BufReader::new(file), options)?)
}

fn resolve_sources(graph: &TemporalGraph, list: Option<&str>) -> Result<Option<Vec<NodeId>>, Failure> {
    let Some(list) = list else {
        return Ok(None);
    };
    list.split(',')
        .filter(|s| !s.is_empty())
        .map(|label| {
            graph
                .labels()
                .id(label)
                .ok_or_else(|| Error::Config(format!("unknown source node {label:?}")).into())
        })
        .collect::<Result<Vec<_>, _>>()
        .map(Some)
}

fn write_scores(output: Option<&Path>, graph: &TemporalGraph, scores: &Scores) -> Outcome {
    match output {
        Some(path) => {
            let file = File::create(path).map_err(|e| Failure::Io(format!("{}: {e}", path.display())))?;
            write_csv(BufWriter::new(file), graph.labels(), scores)?;
        }
        None => write_csv(io::stdout().lock(), graph.labels(), scores)?,
    }
    Ok(())
}

fn compute(a: RunArgs, oracle: bool) -> Outcome {
    let criterion: CriterionKind = a.criterion.parse()?;
    let beta: Beta = a.beta.parse()?;
    let mode: Mode = a.mode.parse()?;
    let graph = read_graph(&a.input.input, a.input.undirected)?;
    let sources = resolve_sources(&graph, a.sources.as_deref())?;
    let start = Instant::now();
    let scores = if oracle {
        if mode == Mode::Fast {
            return Err(Error::Config("the oracle is exact only".into()).into());
        }
        let options = OracleOptions {
            sources,
            ..OracleOptions::default()
        };
        Scores::Exact(oracle_betweenness(&graph, criterion, beta, &options)?.node_betweenness)
    } else {
        let mut config = Config::new(criterion, beta).with_mode(mode).with_workers(a.workers);
        config.sources = sources;
        let rep = SortedRepresentation::build(&graph);
        node_betweenness_sorted(&rep, &config)?.scores
    };
    let elapsed = start.elapsed();
    write_scores(a.output.as_deref(), &graph, &scores)?;
    eprintln!(
        "n={} M={} T={} criterion={} beta={} mode={} time={:.3}s",
        graph.num_nodes(),
        graph.num_edges(),
        graph.distinct_times(),
        criterion,
        beta,
        mode,
        elapsed.as_secs_f64()
    );
    Ok(())
}

fn static_cmd(a: StaticArgs) -> Outcome {
    let mode: Mode = a.mode.parse()?;
    let graph = read_graph(&a.input.input, a.input.undirected)?;
    let start = Instant::now();
    let static_graph = underlying_graph(&graph);
    let exact = brandes_static(&static_graph);
    let scores = match mode {
        Mode::Exact => Scores::Exact(exact),
        Mode::Fast => Scores::Fast(Scores::Exact(exact).to_f64()),
    };
    write_scores(a.output.as_deref(), &graph, &scores)?;
    eprintln!(
        "n={} m={} time={:.3}s",
        static_graph.num_nodes(),
        static_graph.num_edges(),
        start.elapsed().as_secs_f64()
    );
    Ok(())
}

fn compare(a: CompareArgs) -> Outcome {
    let metric: Metric = a.metric.parse()?;
    let load = |p: &Path| -> Result<_, Failure> {
        let file = File::open(p).map_err(|e| Failure::Io(format!("{}: {e}", p.display())))?;
        read_csv(BufReader::new(file)).map_err(|e| match e {
            Error::Parse { .. } => Failure::Lib(e),
            other => Failure::Compare(other.to_string()),
        })
    };
    let ra = load(&a.file_a)?;
    let rb = load(&a.file_b)?;
    let cmp = |e: Error| Failure::Compare(e.to_string());
    let value = match metric {
        Metric::Kendall => kendall_tau(&ra, &rb).map_err(cmp)?,
        Metric::Weighted => weighted_kendall_tau(&ra, &rb).map_err(cmp)?,
        Metric::TopK => {
            let k = a.k.ok_or_else(|| Error::Config("topk needs --k".into()))?;
            top_k_intersection(&ra, &rb, k).map_err(cmp)? as f64
        }
    };
    println!("{value:.6}");
    Ok(())
}

fn bench(a: BenchArgs) -> Outcome {
    let criterion: CriterionKind = a.criterion.parse()?;
    let beta: Beta = a.beta.parse()?;
    let mode: Mode = a.mode.parse()?;
    let graph = match a.input.strip_prefix("gen:") {
        Some(params) => {
            let parts: Vec<&str> = params.split(':').collect();
            let nums: Option<Vec<i64>> = parts.iter().map(|p| p.parse().ok()).collect();
            match nums.as_deref() {
                Some(&[n, m, h]) if n >= 0 && m >= 0 => random_temporal_graph(&GeneratorParams::new(
                    n as usize,
                    m as usize,
                    h,
                    a.seed,
                ))?,
                _ => {
                    return Err(Error::Config(format!(
                        "generated input must be gen:NODES:EDGES:HORIZON, got {:?}",
                        a.input
                    ))
                    .into())
                }
            }
        }
        None => read_graph(Path::new(&a.input), a.undirected)?,
    };
    let sources = match resolve_sources(&graph, a.sources.as_deref())? {
        Some(s) => s,
        None => (0..graph.num_nodes().min(10) as NodeId).collect(),
    };
    let engine = EngineKind::Auto.resolve(criterion, beta)?;
    let rep = SortedRepresentation::build(&graph);
    let report = bench_sources(&rep, criterion, beta, mode, engine, &sources, a.reps)?;
    let mut out = io::stdout().lock();
    let line = |out: &mut io::StdoutLock, s: String| writeln!(out, "{s}").map_err(|e| Failure::Io(e.to_string()));
    line(
        &mut out,
        format!(
            "n={} M={} criterion={criterion} beta={beta} mode={mode} engine={engine} sources={} reps={}",
            graph.num_nodes(),
            graph.num_edges(),
            report.sources,
            a.reps
        ),
    )?;
    for s in &report.samples {
        line(&mut out, format!("sample_ns={}", s.as_nanos()))?;
    }
    line(&mut out, format!("median_ns={}", report.median.as_nanos()))?;
    line(&mut out, format!("per_source_ns={}", report.per_source.as_nanos()))?;
    Ok(())
}
