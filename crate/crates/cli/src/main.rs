use std::fs;
use std::io::{self, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_bigint::BigUint;
use rtgraph::formula::{self, structure_expr};
use rtgraph::verify::{self, Claim, Status, VerificationReport, VerifyOptions};
use rtgraph::{build_distance_graph, ChromaticResult, DistanceSet, Error, Graph, GraphExpr, Limits, SpaceSpec};

/// Distance graphs of finite spaces under the Rosenbloom-Tsfasman metric.
#[derive(Parser)]
#[command(name = "rtgraph", version, about)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Build G(X, D) by brute force and write it as JSON, DOT or an expression.
    Build(BuildArgs),
    /// Print the structure expression of G(X, D) with its counts.
    Formula(InstanceArgs),
    /// Check claims on concrete instances and stream JSON-line reports.
    Verify(VerifyArgs),
    /// Compare the closed-form chromatic number with the exact solver.
    Chromatic(ChromaticArgs),
    /// Recover D from the degree of a distance graph.
    Recover(RecoverArgs),
    /// Convert a graph file or an expression to another format.
    Export(ExportArgs),
}

#[derive(Args)]
struct InstanceArgs {
    /// Space, e.g. "zq:q=3,n=4", "sn:n=5" or "product:sizes=2,3,2".
    #[arg(long)]
    space: String,
    /// Distance set, comma separated and strictly increasing, e.g. "1,3".
    #[arg(long)]
    distances: String,
}

#[derive(Args)]
struct LimitArgs {
    /// Largest space that will be enumerated (overrides RTDG_MAX_POINTS).
    #[arg(long)]
    max_points: Option<usize>,
    /// Largest component handed to the exact coloring solver.
    #[arg(long)]
    max_component: Option<usize>,
    /// Search nodes the coloring solver may visit per component.
    #[arg(long)]
    budget: Option<u64>,
}

impl LimitArgs {
    fn resolve(&self) -> Limits {
        let mut limits = Limits::from_env();
        if let Some(v) = self.max_points {
            limits.max_points = v;
        }
        if let Some(v) = self.max_component {
            limits.max_coloring_component = v;
        }
        if let Some(v) = self.budget {
            limits.coloring_node_budget = v;
        }
        limits
    }
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    /// Graph JSON, readable by `export --input` and `chromatic --input`.
    Json,
    Dot,
    /// Structure expression text.
    Expr,
    /// Structure expression embedded as {"expr": "..."}.
    ExprJson,
}

#[derive(Args)]
struct BuildArgs {
    #[command(flatten)]
    instance: InstanceArgs,
    /// Artifact format. Without --format or --out only the summary is printed.
    #[arg(long, value_enum)]
    format: Option<Format>,
    /// Write the artifact here (JSON unless --format says otherwise).
    #[arg(long)]
    out: Option<PathBuf>,
    #[command(flatten)]
    limits: LimitArgs,
}

#[derive(Args)]
struct VerifyArgs {
    #[arg(long)]
    space: String,
    /// Check a single distance set.
    #[arg(long, conflicts_with = "all_distance_sets")]
    distances: Option<String>,
    /// Check every nonempty distance set of the space.
    #[arg(long)]
    all_distance_sets: bool,
    /// Refuse --all-distance-sets when the space has more sets than this.
    #[arg(long, default_value_t = 1024)]
    max_sets: usize,
    /// Comma-separated claims: structure, degree, connectivity, chromatic,
    /// chromatic-by-size, component-uniqueness, recovery, metric-axioms, embedding.
    #[arg(long, value_delimiter = ',', default_value = "structure")]
    claims: Vec<String>,
    #[arg(long, default_value_t = verify::DEFAULT_SEED)]
    seed: u64,
    /// Random triples for the metric check when exhaustion is too large.
    #[arg(long, default_value_t = verify::DEFAULT_SAMPLE_TRIPLES)]
    samples: usize,
    /// Worker threads (defaults to one per core).
    #[arg(long)]
    jobs: Option<usize>,
    /// Record wall time per report (makes output nondeterministic).
    #[arg(long)]
    timings: bool,
    /// Write the reports here instead of standard output.
    #[arg(long)]
    out: Option<PathBuf>,
    #[command(flatten)]
    limits: LimitArgs,
}

#[derive(Args)]
struct ChromaticArgs {
    #[arg(long, required_unless_present = "input", requires = "distances")]
    space: Option<String>,
    #[arg(long, requires = "space")]
    distances: Option<String>,
    /// Graph JSON or expression JSON instead of --space/--distances.
    #[arg(long, conflicts_with = "space")]
    input: Option<PathBuf>,
    /// Write the coloring witness as JSON.
    #[arg(long)]
    out: Option<PathBuf>,
    #[command(flatten)]
    limits: LimitArgs,
}

#[derive(Clone, Copy, ValueEnum)]
enum Family {
    Zq,
    Sn,
}

#[derive(Args)]
struct RecoverArgs {
    #[arg(long, value_enum)]
    family: Family,
    /// Alphabet size, required for zq.
    #[arg(long, required_if_eq("family", "zq"))]
    q: Option<u32>,
    /// Regular degree of the graph (arbitrary precision).
    #[arg(long)]
    degree: String,
}

#[derive(Args)]
struct ExportArgs {
    /// Graph JSON or expression JSON.
    #[arg(long, required_unless_present_any = ["expr", "space"], conflicts_with_all = ["expr", "space"])]
    input: Option<PathBuf>,
    /// Expression text, e.g. "2*[K_2(1)]^2".
    #[arg(long, conflicts_with = "space")]
    expr: Option<String>,
    #[arg(long, requires = "distances")]
    space: Option<String>,
    #[arg(long, requires = "space")]
    distances: Option<String>,
    #[arg(long, value_enum, default_value = "json")]
    format: Format,
    #[arg(long)]
    out: Option<PathBuf>,
    #[command(flatten)]
    limits: LimitArgs,
}

/// Exit codes: 1 for a failed check, 2 for bad input, 3 for a size limit.
enum Failure {
    Checks,
    Input(String),
    Limit(String),
}

impl Failure {
    fn field(name: &str) -> impl FnOnce(Error) -> Failure + '_ {
        move |e| match e {
            Error::SizeLimit { .. } => Failure::Limit(e.to_string()),
            e => Failure::Input(format!("{name}: {e}")),
        }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::SizeLimit { .. } => Failure::Limit(e.to_string()),
            e => Failure::Input(e.to_string()),
        }
    }
}

fn io_failure(path: &Path) -> impl FnOnce(io::Error) -> Failure + '_ {
    move |e| Failure::Input(format!("{}: {e}", path.display()))
}

type Outcome = Result<(), Failure>;

fn main() -> ExitCode {
    let cli = Cli::parse();
    let outcome = match cli.command {
        Command::Build(args) => build(args),
        Command::Formula(args) => formula(args),
        Command::Verify(args) => verify(args),
        Command::Chromatic(args) => chromatic(args),
        Command::Recover(args) => recover(args),
        Command::Export(args) => export(args),
    };
    match outcome {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Checks) => ExitCode::from(1),
        Err(Failure::Input(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(Failure::Limit(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(3)
        }
    }
}

fn parse_space(text: &str) -> Result<SpaceSpec, Failure> {
    text.parse().map_err(Failure::field("--space"))
}

fn parse_instance(space: &str, distances: &str) -> Result<(SpaceSpec, DistanceSet), Failure> {
    let space = parse_space(space)?;
    let distances: DistanceSet = distances.parse().map_err(Failure::field("--distances"))?;
    distances.check_for(&space).map_err(Failure::field("--distances"))?;
    Ok((space, distances))
}

fn write_file(path: &Path, text: &str) -> Outcome {
    fs::write(path, text).map_err(io_failure(path))
}

/// Artifact to `out` if given, otherwise to standard output.
fn emit(out: Option<&Path>, text: &str) -> Outcome {
    match out {
        Some(path) => write_file(path, text),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

/// Human summary: standard output when the artifact went to a file,
/// standard error when it went to standard output.
fn summarize(artifact_on_stdout: bool, text: &str) {
    if artifact_on_stdout {
        eprint!("{text}");
    } else {
        print!("{text}");
    }
}

fn render_expr(expr: &GraphExpr, format: Format) -> Option<String> {
    match format {
        Format::Expr => Some(format!("{expr}\n")),
        Format::ExprJson => Some(expr.to_json() + "\n"),
        Format::Json | Format::Dot => None,
    }
}

fn render_graph(graph: &Graph, format: Format) -> Result<String, Failure> {
    match format {
        Format::Json => Ok(graph.to_json() + "\n"),
        Format::Dot => Ok(graph.to_dot()),
        Format::Expr | Format::ExprJson => {
            let (Some(space), Some(distances)) = (graph.space(), graph.distances()) else {
                return Err(Failure::Input(
                    "--format: expression output needs a graph that records its space and distances".into(),
                ));
            };
            let expr = structure_expr(space, distances)?;
            Ok(render_expr(&expr, format).expect("expression format"))
        }
    }
}

fn build(args: BuildArgs) -> Outcome {
    let (space, distances) = parse_instance(&args.instance.space, &args.instance.distances)?;
    let graph = build_distance_graph(&space, &distances, &args.limits.resolve())?;
    let degree = graph
        .is_regular()
        .map_or_else(|| "irregular".to_string(), |k| k.to_string());
    let summary = format!(
        "space: {}\ndistances: {}\nvertices: {}\nedges: {}\ncomponents: {}\ndegree: {}\n",
        space.math_name(),
        distances,
        graph.vertex_count(),
        graph.edge_count(),
        graph.connected_components().component_count(),
        degree,
    );
    let format = match (args.format, &args.out) {
        (Some(f), _) => f,
        (None, Some(_)) => Format::Json,
        (None, None) => {
            print!("{summary}");
            return Ok(());
        }
    };
    emit(args.out.as_deref(), &render_graph(&graph, format)?)?;
    summarize(args.out.is_none(), &summary);
    Ok(())
}

fn formula(args: InstanceArgs) -> Outcome {
    let (space, distances) = parse_instance(&args.space, &args.distances)?;
    let expr = structure_expr(&space, &distances)?;
    println!("{expr}");
    println!("vertices: {}", expr.vertex_count());
    println!("edges: {}", expr.edge_count());
    println!("degree: {}", expr.degree());
    println!("components: {}", expr.component_count());
    println!("chromatic: {}", expr.chromatic_number());
    Ok(())
}

fn verify(args: VerifyArgs) -> Outcome {
    let space = parse_space(&args.space)?;
    let claims = args
        .claims
        .iter()
        .map(|c| c.parse::<Claim>().map_err(Failure::field("--claims")))
        .collect::<Result<Vec<_>, _>>()?;
    let sets = if args.all_distance_sets {
        let available = space.distance_values().len();
        if available >= usize::BITS as usize || (1usize << available) - 1 > args.max_sets {
            return Err(Failure::Input(format!(
                "--max-sets: {} has 2^{available}-1 distance sets, more than the cap of {}",
                space.math_name(),
                args.max_sets
            )));
        }
        DistanceSet::all_nonempty_for(&space)
    } else if let Some(text) = &args.distances {
        vec![parse_instance(&args.space, text)?.1]
    } else if claims.iter().all(|&c| c == Claim::MetricAxioms) {
        Vec::new()
    } else {
        return Err(Failure::Input(
            "--distances: required unless --all-distance-sets is given or only metric-axioms is checked".into(),
        ));
    };
    let options = VerifyOptions {
        limits: args.limits.resolve(),
        seed: args.seed,
        sample_triples: args.samples,
        record_timing: args.timings,
    };
    let run = || verify::verify_space(&space, &sets, &claims, &options);
    let reports = match args.jobs {
        Some(jobs) => rayon::ThreadPoolBuilder::new()
            .num_threads(jobs)
            .build()
            .map_err(|e| Failure::Input(format!("--jobs: {e}")))?
            .install(run)?,
        None => run()?,
    };
    write_reports(args.out.as_deref(), &reports)?;

    let count = |s: Status| reports.iter().filter(|r| r.status == s).count();
    summarize(
        args.out.is_none(),
        &format!(
            "{} reports: {} verified, {} refuted, {} inconclusive\n",
            reports.len(),
            count(Status::Verified),
            count(Status::Refuted),
            count(Status::Inconclusive),
        ),
    );
    if reports.iter().all(VerificationReport::is_verified) {
        Ok(())
    } else {
        Err(Failure::Checks)
    }
}

fn write_reports(out: Option<&Path>, reports: &[VerificationReport]) -> Outcome {
    match out {
        Some(path) => write_file(path, &verify::to_json_lines(reports)),
        None => {
            let mut stdout = io::stdout().lock();
            for r in reports {
                writeln!(stdout, "{}", r.to_json_line()).map_err(|e| Failure::Input(format!("stdout: {e}")))?;
            }
            Ok(())
        }
    }
}

/// A graph read from a file: either a concrete graph or an expression.
enum Source {
    Graph(Graph),
    Expr(GraphExpr),
}

fn read_source(path: &Path) -> Result<Source, Failure> {
    let text = fs::read_to_string(path).map_err(io_failure(path))?;
    let name = path.display().to_string();
    let value: serde_json::Value =
        serde_json::from_str(&text).map_err(|e| Failure::Input(format!("{name}: not JSON: {e}")))?;
    if value.get("expr").is_some() {
        Ok(Source::Expr(GraphExpr::from_json(&text).map_err(Failure::field(&name))?))
    } else {
        Ok(Source::Graph(Graph::from_json(&text).map_err(Failure::field(&name))?))
    }
}

fn evaluate(expr: &GraphExpr, limits: &Limits) -> Result<Graph, Failure> {
    Ok(expr.evaluate(limits.max_points, limits.max_edges)?)
}

fn chromatic(args: ChromaticArgs) -> Outcome {
    let limits = args.limits.resolve();
    let (graph, predicted) = match (&args.input, &args.space, &args.distances) {
        (Some(path), _, _) => match read_source(path)? {
            Source::Graph(g) => {
                let predicted = match (g.space(), g.distances()) {
                    (Some(space), Some(d)) => Some(formula::chromatic_number(space, d)?),
                    _ => None,
                };
                (g, predicted)
            }
            Source::Expr(e) => (evaluate(&e, &limits)?, Some(e.chromatic_number())),
        },
        (None, Some(space), Some(distances)) => {
            let (space, distances) = parse_instance(space, distances)?;
            let predicted = formula::chromatic_number(&space, &distances)?;
            (build_distance_graph(&space, &distances, &limits)?, Some(predicted))
        }
        _ => unreachable!("clap requires --input or --space with --distances"),
    };
    let result = chromatic_number_or_limit(&graph, &limits)?;

    match &predicted {
        Some(p) => println!("formula: {p}"),
        None => println!("formula: unknown"),
    }
    let agrees = match &result {
        ChromaticResult::Exact { chromatic_number, .. } => {
            println!("exact: {chromatic_number}");
            predicted.as_ref().map(|p| *p == BigUint::from(*chromatic_number))
        }
        ChromaticResult::Inconclusive { lower, upper, .. } => {
            println!("exact: inconclusive ({lower} <= chi <= {upper})");
            None
        }
    };
    println!(
        "agree: {}",
        match agrees {
            Some(true) => "yes",
            Some(false) => "no",
            None => "unknown",
        }
    );
    if let Some(path) = &args.out {
        let witness = serde_json::json!({ "colors": result.witness().colors });
        write_file(path, &format!("{witness}\n"))?;
    }
    match (agrees, &result) {
        (Some(true), _) => Ok(()),
        (None, ChromaticResult::Exact { .. }) if predicted.is_none() => Ok(()),
        _ => Err(Failure::Checks),
    }
}

fn chromatic_number_or_limit(graph: &Graph, limits: &Limits) -> Result<ChromaticResult, Failure> {
    rtgraph::chromatic_number(graph, limits).map_err(|e| match e {
        Error::SizeLimit { .. } => Failure::Limit(format!("{e} (raise with --max-component)")),
        e => Failure::from(e),
    })
}

fn recover(args: RecoverArgs) -> Outcome {
    let degree: BigUint = args
        .degree
        .trim()
        .parse()
        .map_err(|_| Failure::Input(format!("--degree: {:?} is not a nonnegative integer", args.degree)))?;
    let recovered = match args.family {
        Family::Zq => verify::recover_distance_set_zq(args.q.expect("clap requires --q for zq"), &degree),
        Family::Sn => verify::recover_distance_set_sn(&degree),
    };
    match recovered {
        Ok(d) => {
            println!("{d}");
            Ok(())
        }
        Err(Error::NoPreimage(reason)) => {
            println!("no preimage");
            eprintln!("{reason}");
            Err(Failure::Checks)
        }
        Err(e) => Err(Failure::field("--q")(e)),
    }
}

fn export(args: ExportArgs) -> Outcome {
    let limits = args.limits.resolve();
    let source = match (&args.input, &args.expr, &args.space, &args.distances) {
        (Some(path), _, _, _) => read_source(path)?,
        (None, Some(text), _, _) => Source::Expr(text.parse().map_err(Failure::field("--expr"))?),
        (None, None, Some(space), Some(distances)) => {
            let (space, distances) = parse_instance(space, distances)?;
            Source::Graph(build_distance_graph(&space, &distances, &limits)?)
        }
        _ => unreachable!("clap requires one input"),
    };
    let text = match &source {
        Source::Graph(g) => render_graph(g, args.format)?,
        Source::Expr(e) => match render_expr(e, args.format) {
            Some(text) => text,
            None => render_graph(&evaluate(e, &limits)?, args.format)?,
        },
    };
    emit(args.out.as_deref(), &text)
}
