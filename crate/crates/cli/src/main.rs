use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use centrank::centrality::Method;
use centrank::centrality::{
    degree_centrality, eigenvector_centrality, pagerank, CentralityError, CentralityScores,
    DegreeMode, SolverConfig,
};
use centrank::experiments::{
    compare_graph, run_bench, run_suite, run_suite_with_threads, write_report, ExperimentError,
    Format, GraphComparison, PageRankLinks, Report, ReportError, Representation, Solvers,
    SuiteConfig, TrialFailure,
};
use centrank::graph::{load_adjacency_matrix, load_edge_list, Graph, DEFAULT_DENSITY};
use centrank::rankstats::{CompareOptions, SpearmanMode};

const THREADS_ENV: &str = "CENTRANK_THREADS";

/// PageRank and eigenvector centrality on directed graphs.
///
/// Exit codes: 0 success, 1 input error, 2 numeric failure, 3 usage error.
#[derive(Debug, Parser)]
#[command(name = "centrank", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Score every node of one graph with one method.
    Centrality(CentralityArgs),
    /// Rank a graph by PageRank and eigenvector centrality and compare.
    Compare(CompareArgs),
    /// Run repeated comparisons on seeded random graphs.
    Suite(SuiteArgs),
    /// Time list- and matrix-based solvers on growing random graphs.
    Bench(BenchArgs),
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum InputFormat {
    /// `source target [weight]` per line, `#` comments, optional `# nodes=N`.
    EdgeList,
    /// Whitespace-separated square adjacency matrix, row = source.
    Matrix,
}

#[derive(Debug, clap::Args)]
struct InputArgs {
    /// Graph file.
    #[arg(long)]
    input: PathBuf,
    #[arg(long, value_enum, default_value = "edge-list")]
    input_format: InputFormat,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum MethodArg {
    Pagerank,
    Eigenvector,
    DegreeIn,
    DegreeOut,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum DataFormat {
    Csv,
    Json,
}

impl From<DataFormat> for Format {
    fn from(f: DataFormat) -> Self {
        match f {
            DataFormat::Csv => Format::Csv,
            DataFormat::Json => Format::Json,
        }
    }
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum TableFormat {
    Table,
    Csv,
    Json,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum TieMode {
    /// Spearman on average ranks (Pearson of ranks).
    Default,
    /// `1 - 6 sum d^2 / (n (n^2 - 1))` on competition ranks, ties included.
    #[value(name = "paper-compat", alias = "classic")]
    Classic,
}

impl From<TieMode> for SpearmanMode {
    fn from(t: TieMode) -> Self {
        match t {
            TieMode::Default => SpearmanMode::Standard,
            TieMode::Classic => SpearmanMode::Classic,
        }
    }
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum Links {
    /// PageRank over out-links, the same matrix rows eigenvector centrality reads.
    Outgoing,
    /// PageRank over in-links.
    Incoming,
}

impl From<Links> for PageRankLinks {
    fn from(l: Links) -> Self {
        match l {
            Links::Outgoing => PageRankLinks::Outgoing,
            Links::Incoming => PageRankLinks::Incoming,
        }
    }
}

#[derive(Debug, clap::Args)]
struct CentralityArgs {
    #[command(flatten)]
    input: InputArgs,
    #[arg(long, value_enum, default_value = "pagerank")]
    method: MethodArg,
    /// PageRank damping factor.
    #[arg(long, default_value_t = SolverConfig::DEFAULT_DAMPING)]
    damping: f64,
    /// Convergence tolerance on the max-norm change [default: 1e-8 for
    /// pagerank, 1e-10 for eigenvector].
    #[arg(long)]
    tol: Option<f64>,
    /// Iteration budget [default: 200 for pagerank, 1000 for eigenvector].
    #[arg(long)]
    max_iter: Option<usize>,
    /// Score the reversed graph (PageRank over out-links).
    #[arg(long)]
    reverse: bool,
    #[arg(long, value_enum, default_value = "csv")]
    format: DataFormat,
    /// Output file [default: stdout].
    #[arg(long)]
    output: Option<PathBuf>,
}

#[derive(Debug, clap::Args)]
struct CompareArgs {
    #[command(flatten)]
    input: InputArgs,
    #[arg(long, default_value_t = 5)]
    top_k: usize,
    #[arg(long, value_enum, default_value = "default")]
    tie_mode: TieMode,
    /// Round scores to this many decimals before ranking [default: full precision].
    #[arg(long)]
    decimals: Option<u32>,
    #[arg(long, value_enum, default_value = "outgoing")]
    links: Links,
    #[arg(long, value_enum, default_value = "table")]
    format: TableFormat,
    /// Output file [default: stdout].
    #[arg(long)]
    output: Option<PathBuf>,
}

#[derive(Debug, clap::Args)]
struct SuiteArgs {
    /// Comma-separated graph sizes.
    #[arg(long, value_delimiter = ',', default_value = "21,50,100")]
    sizes: Vec<usize>,
    /// Trials per size.
    #[arg(long, default_value_t = 30)]
    trials: usize,
    /// Edge probability.
    #[arg(long, default_value_t = DEFAULT_DENSITY)]
    density: f64,
    #[arg(long, default_value_t = 42)]
    seed: u64,
    #[arg(long, default_value_t = 5)]
    top_k: usize,
    #[arg(long, value_enum, default_value = "default")]
    tie_mode: TieMode,
    #[arg(long, value_enum, default_value = "outgoing")]
    links: Links,
    #[arg(long, value_enum, default_value = "json")]
    format: DataFormat,
    /// Output file [default: stdout].
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Debug, clap::Args)]
struct BenchArgs {
    /// Comma-separated, strictly increasing graph sizes.
    #[arg(long, value_delimiter = ',', default_value = "50,100,200,400")]
    sizes: Vec<usize>,
    #[arg(long, default_value_t = DEFAULT_DENSITY)]
    density: f64,
    #[arg(long, default_value_t = 42)]
    seed: u64,
    /// Timed repetitions per series, at least 3.
    #[arg(long, default_value_t = 5)]
    reps: usize,
    #[arg(long, value_enum, default_value = "csv")]
    format: DataFormat,
    /// Output file [default: stdout].
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Debug)]
enum Failure {
    Input(String),
    Numeric(String),
    Usage(String),
}

impl Failure {
    fn code(&self) -> u8 {
        match self {
            Failure::Input(_) => 1,
            Failure::Numeric(_) => 2,
            Failure::Usage(_) => 3,
        }
    }

    fn message(&self) -> &str {
        match self {
            Failure::Input(m) | Failure::Numeric(m) | Failure::Usage(m) => m,
        }
    }
}

impl From<CentralityError> for Failure {
    fn from(e: CentralityError) -> Self {
        match e {
            CentralityError::InvalidConfig(m) => Failure::Usage(m),
            other => Failure::Numeric(other.to_string()),
        }
    }
}

impl From<ExperimentError> for Failure {
    fn from(e: ExperimentError) -> Self {
        match e {
            ExperimentError::Centrality(c) => c.into(),
            other => Failure::Usage(other.to_string()),
        }
    }
}

impl From<ReportError> for Failure {
    fn from(e: ReportError) -> Self {
        Failure::Input(format!("writing output: {e}"))
    }
}

impl From<io::Error> for Failure {
    fn from(e: io::Error) -> Self {
        Failure::Input(format!("writing output: {e}"))
    }
}

fn load_graph(args: &InputArgs) -> Result<Graph, Failure> {
    let path = args.input.display();
    let text =
        std::fs::read_to_string(&args.input).map_err(|e| Failure::Input(format!("{path}: {e}")))?;
    let loaded = match args.input_format {
        InputFormat::EdgeList => load_edge_list(&text),
        InputFormat::Matrix => load_adjacency_matrix(&text),
    };
    loaded.map_err(|e| match e.line() {
        Some(line) => Failure::Input(format!("{path}:{line}: {e}")),
        None => Failure::Input(format!("{path}: {e}")),
    })
}

fn open_output(path: Option<&Path>) -> Result<Box<dyn Write>, Failure> {
    Ok(match path {
        Some(p) => Box::new(BufWriter::new(
            File::create(p).map_err(|e| Failure::Input(format!("{}: {e}", p.display())))?,
        )),
        None => Box::new(BufWriter::new(io::stdout().lock())),
    })
}

fn emit<R: Report>(report: &R, format: Format, path: Option<&Path>) -> Result<(), Failure> {
    let mut out = open_output(path)?;
    write_report(report, format, &mut out)?;
    out.flush()?;
    Ok(())
}

fn cmd_centrality(args: CentralityArgs) -> Result<(), Failure> {
    let mut graph = load_graph(&args.input)?;
    if args.reverse {
        graph = graph.reversed();
    }
    let configure = |base: SolverConfig| {
        let mut cfg = base.with_damping(args.damping);
        if let Some(tol) = args.tol {
            cfg = cfg.with_tolerance(tol);
        }
        if let Some(max) = args.max_iter {
            cfg = cfg.with_max_iterations(max);
        }
        cfg.validate().map(|()| cfg)
    };
    let scores: CentralityScores = match args.method {
        MethodArg::Pagerank => pagerank(&graph, &configure(SolverConfig::pagerank())?)?,
        MethodArg::Eigenvector => {
            eigenvector_centrality(&graph, &configure(SolverConfig::eigenvector())?)?
        }
        MethodArg::DegreeIn => degree_centrality(&graph, DegreeMode::In),
        MethodArg::DegreeOut => degree_centrality(&graph, DegreeMode::Out),
    };
    emit(&scores, args.format.into(), args.output.as_deref())
}

fn write_table(cmp: &GraphComparison, out: &mut dyn Write) -> io::Result<()> {
    writeln!(
        out,
        "{:<8}{:>12}{:>9}{:>14}{:>9}",
        "vertex", "pagerank", "pr_rank", "eigenvector", "ev_rank"
    )?;
    for row in &cmp.rows {
        writeln!(
            out,
            "{:<8}{:>12.4}{:>9}{:>14.4}{:>9}",
            format!("v{}", row.vertex + 1),
            row.pagerank,
            row.pr_rank,
            row.eigenvector,
            row.ev_rank
        )?;
    }
    let Some(report) = &cmp.report else {
        return Ok(());
    };
    writeln!(out)?;
    if let Some(lambda) = cmp.eigenvector.as_ref().and_then(|e| e.dominant_eigenvalue) {
        writeln!(out, "dominant eigenvalue: {lambda:.4}")?;
    }
    writeln!(out, "spearman rho: {:.9}", report.spearman_rho)?;
    writeln!(out, "pearson r: {:.9}", report.pearson_r)?;
    writeln!(
        out,
        "top-{} overlap: {}",
        report.top_k, report.top_k_overlap
    )?;
    match (report.critical_value, report.significant) {
        (Some(c), Some(sig)) => writeln!(
            out,
            "critical value: {c:.4}{}, {}",
            if report.critical_value_approximate {
                " (approximate)"
            } else {
                ""
            },
            if sig {
                "significant"
            } else {
                "not significant"
            }
        ),
        _ => writeln!(out, "critical value: none for n = {}", report.n),
    }
}

fn cmd_compare(args: CompareArgs) -> Result<(), Failure> {
    if args.top_k == 0 {
        return Err(Failure::Usage("--top-k must be at least 1".into()));
    }
    let graph = load_graph(&args.input)?;
    let solvers = Solvers {
        pagerank_links: args.links.into(),
        ..Solvers::default()
    };
    let opts = CompareOptions {
        top_k: args.top_k,
        mode: args.tie_mode.into(),
        decimals: args.decimals,
    };
    let cmp = compare_graph(&graph, &solvers, &opts)?;
    match &cmp.failure {
        None => {}
        Some(TrialFailure::DegenerateRanking) => {
            return Err(Failure::Numeric(
                "degenerate ranking: every node has the same score, rank correlation is undefined"
                    .into(),
            ))
        }
        Some(TrialFailure::NonConvergence {
            method,
            iterations,
            residual,
        }) => {
            return Err(Failure::Numeric(format!(
                "{method} did not converge after {iterations} iterations (residual {residual:e})"
            )))
        }
        Some(TrialFailure::ZeroMatrix) => {
            return Err(Failure::Numeric(CentralityError::ZeroMatrix.to_string()))
        }
        Some(TrialFailure::Statistics { message }) => {
            return Err(Failure::Numeric(message.clone()))
        }
    }
    match args.format {
        TableFormat::Table => {
            let mut out = open_output(args.output.as_deref())?;
            write_table(&cmp, &mut out)?;
            out.flush()?;
            Ok(())
        }
        TableFormat::Csv => emit(&cmp, Format::Csv, args.output.as_deref()),
        TableFormat::Json => emit(&cmp, Format::Json, args.output.as_deref()),
    }
}

fn threads_from_env() -> Result<Option<usize>, Failure> {
    match std::env::var(THREADS_ENV) {
        Err(std::env::VarError::NotPresent) => Ok(None),
        Ok(v) => match v.trim().parse::<usize>() {
            Ok(n) if n >= 1 => Ok(Some(n)),
            _ => Err(Failure::Usage(format!(
                "{THREADS_ENV} must be an integer >= 1, got {v:?}"
            ))),
        },
        Err(e) => Err(Failure::Usage(format!("{THREADS_ENV}: {e}"))),
    }
}

fn cmd_suite(args: SuiteArgs) -> Result<(), Failure> {
    let threads = threads_from_env()?;
    let cfg = SuiteConfig {
        sizes: args.sizes,
        trials_per_size: args.trials,
        density: args.density,
        base_seed: args.seed,
        solvers: Solvers {
            pagerank_links: args.links.into(),
            ..Solvers::default()
        },
        top_k: args.top_k,
        spearman_mode: args.tie_mode.into(),
        record_timing: false,
    };
    cfg.validate()?;
    let report = match threads {
        Some(t) => run_suite_with_threads(&cfg, t)?,
        None => run_suite(&cfg)?,
    };
    for agg in &report.aggregates {
        let show = |x: Option<f64>| x.map_or("n/a".to_string(), |v| format!("{v:.4}"));
        eprintln!(
            "size {:>4}: mean rho {} (min {}, max {}), significant {}, top-{} overlap {}, failures {}/{}",
            agg.size,
            show(agg.mean_rho),
            show(agg.min_rho),
            show(agg.max_rho),
            show(agg.significance_rate),
            cfg.top_k,
            show(agg.mean_top_k_overlap),
            agg.failures,
            agg.trials
        );
    }
    emit(&report, args.format.into(), args.out.as_deref())
}

fn cmd_bench(args: BenchArgs) -> Result<(), Failure> {
    if args.reps < 3 {
        return Err(Failure::Usage("--reps must be at least 3".into()));
    }
    if !(0.0..=1.0).contains(&args.density) {
        return Err(Failure::Usage(format!(
            "--density {} must lie in [0, 1]",
            args.density
        )));
    }
    let report = run_bench(&args.sizes, args.density, args.seed, args.reps)?;
    for method in [Method::PageRank, Method::Eigenvector] {
        for repr in [Representation::List, Representation::Matrix] {
            if let Some(s) = report.series(method, repr) {
                let show = |x: Option<f64>| x.map_or("n/a".to_string(), |v| format!("{v:.3}"));
                eprintln!(
                    "{method:<12} {:<7} log-log slope {} (per iteration {})",
                    repr.as_str(),
                    show(s.slope),
                    show(s.per_iteration_slope)
                );
            }
        }
    }
    emit(&report, args.format.into(), args.out.as_deref())
}

fn run(cli: Cli) -> Result<(), Failure> {
    match cli.command {
        Command::Centrality(a) => cmd_centrality(a),
        Command::Compare(a) => cmd_compare(a),
        Command::Suite(a) => cmd_suite(a),
        Command::Bench(a) => cmd_bench(a),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            let _ = e.print();
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => ExitCode::SUCCESS,
                _ => ExitCode::from(3),
            };
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            eprintln!("centrank: {}", f.message());
            ExitCode::from(f.code())
        }
    }
}
