//! `bolt`: command line front end for betweenness estimation experiments.
//!
//! Every randomized subcommand takes `--seed`; when omitted a seed is
//! drawn from entropy and printed, so any run can be reproduced. With the
//! default single worker thread, identical invocations produce
//! byte-identical output files.

use std::fmt::Write as _;
use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use bolt_core::analysis::{empirical_levels, predict_levels};
use bolt_core::error::Error;
use bolt_core::estimator::estimate_with_model;
use bolt_core::generators::{generate_ba, generate_er};
use bolt_core::graph::{Graph, NodeId};
use bolt_core::metrics::{evaluate, EvaluationConfig, EvaluationReport};
use bolt_core::ordering::{betweenness_ordering, k_betweenness_ordering, OrderingResult, Verdict};
use bolt_core::rng::{derive_seed, seeded_rng};
use bolt_core::sampling::{build_distribution, ModelKind};
use bolt_core::shortest_paths::{bfs, exact_betweenness};

/// Seed lane for graph construction, so the same `--gen` spec and
/// `--seed` build the same graph under every subcommand.
const GRAPH_LANE: u64 = 4;
/// Seed lane for picking random query nodes (`korder --random-k`).
const PICK_LANE: u64 = 5;

const EXIT_PARSE: u8 = 2;
const EXIT_CONFIG: u8 = 3;
const EXIT_EMPTY_GRAPH: u8 = 4;
const EXIT_UNDEFINED_METRIC: u8 = 5;

#[derive(Parser)]
#[command(
    name = "bolt",
    version,
    about = "Betweenness ordering via non-uniform pivot sampling",
    after_help = "exit codes:\n  \
        0  success\n  \
        2  edge list parse error\n  \
        3  invalid configuration (bad flags, missing file, unknown node)\n  \
        4  empty graph\n  \
        5  undefined metric for this input"
)]
struct Cli {
    /// Worker threads (default: $BOLT_THREADS or 1; 1 is deterministic)
    #[arg(long, global = true, value_name = "N")]
    threads: Option<usize>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Generate a random graph and write its edge list
    Generate {
        /// Generator spec: er:<n>:<p>, ba:<n>:<k>, or er-x:<n>:<x>
        #[arg(long, value_name = "SPEC")]
        gen: String,
        #[arg(long)]
        seed: Option<u64>,
        /// Output path (default: stdout)
        #[arg(long, value_name = "PATH")]
        out: Option<PathBuf>,
    },
    /// Exact betweenness of every node, as CSV
    Exact {
        #[command(flatten)]
        input: GraphInput,
        #[arg(long)]
        seed: Option<u64>,
        #[arg(long, value_name = "PATH")]
        out: Option<PathBuf>,
    },
    /// Pivot sampling probabilities for one target node, as CSV
    Probs {
        #[command(flatten)]
        input: GraphInput,
        /// Target node label
        #[arg(long, value_name = "LABEL")]
        node: String,
        #[arg(long, default_value = "eddbm", value_parser = parse_model)]
        model: ModelKind,
        #[arg(long)]
        seed: Option<u64>,
        #[arg(long, value_name = "PATH")]
        out: Option<PathBuf>,
    },
    /// Estimate one node's betweenness, as JSON
    Estimate {
        #[command(flatten)]
        input: GraphInput,
        /// Target node label
        #[arg(long, value_name = "LABEL")]
        node: String,
        #[arg(long, default_value = "eddbm", value_parser = parse_model)]
        model: ModelKind,
        /// Sampled pivots per estimate
        #[arg(short = 'T', long = "samples", default_value_t = 25)]
        samples: usize,
        #[arg(long)]
        seed: Option<u64>,
        #[arg(long, value_name = "PATH")]
        out: Option<PathBuf>,
    },
    /// Order two nodes by estimated betweenness, as JSON with a verdict
    Order {
        #[command(flatten)]
        input: GraphInput,
        /// Exactly two comma-separated node labels
        #[arg(long, value_name = "A,B")]
        nodes: String,
        #[arg(short = 'T', long = "samples", default_value_t = 25)]
        samples: usize,
        #[arg(long)]
        seed: Option<u64>,
        #[arg(long, value_name = "PATH")]
        out: Option<PathBuf>,
    },
    /// Rank several nodes by estimated betweenness, as JSON
    Korder {
        #[command(flatten)]
        input: GraphInput,
        /// Comma-separated node labels (at least two)
        #[arg(long, value_name = "A,B,...", conflicts_with = "random_k")]
        nodes: Option<String>,
        /// Rank this many distinct nodes picked at random instead
        #[arg(long, value_name = "K")]
        random_k: Option<usize>,
        #[arg(short = 'T', long = "samples", default_value_t = 25)]
        samples: usize,
        #[arg(long)]
        seed: Option<u64>,
        #[arg(long, value_name = "PATH")]
        out: Option<PathBuf>,
    },
    /// Full accuracy/ordering evaluation against exact scores
    Evaluate {
        #[command(flatten)]
        input: GraphInput,
        #[arg(long, default_value = "eddbm", value_parser = parse_model)]
        model: ModelKind,
        #[arg(short = 'T', long = "samples", default_value_t = 25)]
        samples: usize,
        /// Estimate repetitions averaged into the error metric
        #[arg(long, default_value_t = 5)]
        reps: usize,
        /// Node pairs to sample for ordering metrics (default: all pairs
        /// for small graphs, one million otherwise)
        #[arg(long, value_name = "N")]
        pair_budget: Option<usize>,
        /// Relaxation thresholds for the rank-filtered efficiency columns
        #[arg(long, value_delimiter = ',', default_values_t = vec![2usize, 3, 5, 10])]
        relax: Vec<usize>,
        #[arg(long, value_enum, default_value_t = OutFormat::Csv)]
        format: OutFormat,
        #[arg(long)]
        seed: Option<u64>,
        #[arg(long, value_name = "PATH")]
        out: Option<PathBuf>,
    },
    /// Predicted and observed BFS level sizes for sparse random graphs
    AnalyzeLevels {
        #[arg(long)]
        n: u64,
        #[arg(long)]
        p: f64,
        /// Cap on predicted levels
        #[arg(long, default_value_t = 32)]
        levels: usize,
        /// Graphs to sample for the empirical columns (0 = predictions only)
        #[arg(long, default_value_t = 0)]
        graphs: usize,
        /// BFS sources per sampled graph
        #[arg(long, default_value_t = 10)]
        sources: usize,
        #[arg(long)]
        seed: Option<u64>,
        #[arg(long, value_name = "PATH")]
        out: Option<PathBuf>,
    },
}

#[derive(Args)]
struct GraphInput {
    /// Generator spec: er:<n>:<p>, ba:<n>:<k>, or er-x:<n>:<x>
    #[arg(long, value_name = "SPEC", conflicts_with = "file")]
    gen: Option<String>,
    /// Edge list file: one "u v" pair per line, # comments allowed
    #[arg(long, value_name = "PATH")]
    file: Option<PathBuf>,
    /// Write the label -> internal index mapping as CSV
    #[arg(long, value_name = "PATH")]
    mapping_out: Option<PathBuf>,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum OutFormat {
    Csv,
    Json,
}

fn parse_model(s: &str) -> Result<ModelKind, String> {
    s.parse().map_err(|e: Error| e.to_string())
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            // Help and version are successes; everything else is a
            // configuration problem, not clap's default exit 2.
            let code = match e.kind() {
                clap::error::ErrorKind::DisplayHelp | clap::error::ErrorKind::DisplayVersion => 0,
                _ => EXIT_CONFIG,
            };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };

    match setup_threads(cli.threads).and_then(|_| dispatch(cli.command)) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(exit_code(&e))
        }
    }
}

fn exit_code(e: &Error) -> u8 {
    match e {
        Error::Parse { .. } => EXIT_PARSE,
        Error::EmptyGraph => EXIT_EMPTY_GRAPH,
        Error::UndefinedMetric(_) => EXIT_UNDEFINED_METRIC,
        _ => EXIT_CONFIG,
    }
}

fn setup_threads(flag: Option<usize>) -> Result<(), Error> {
    let threads = match flag {
        Some(t) => t,
        None => match std::env::var("BOLT_THREADS") {
            Ok(raw) => raw
                .parse()
                .map_err(|_| Error::InvalidArgument(format!("BOLT_THREADS={raw} is not a number")))?,
            Err(_) => 1,
        },
    };
    if threads == 0 {
        return Err(Error::InvalidArgument("--threads must be at least 1".into()));
    }
    rayon::ThreadPoolBuilder::new()
        .num_threads(threads)
        .build_global()
        .map_err(|e| Error::InvalidArgument(format!("thread pool: {e}")))
}

fn resolve_seed(seed: Option<u64>) -> u64 {
    seed.unwrap_or_else(rand::random)
}

enum GenSpec {
    Er { n: u64, p: f64 },
    Ba { n: u64, k: u64 },
}

fn parse_gen_spec(spec: &str) -> Result<GenSpec, Error> {
    let bad = |why: &str| Error::InvalidArgument(format!("generator spec {spec:?}: {why}"));
    let parts: Vec<&str> = spec.split(':').collect();
    if parts.len() != 3 {
        return Err(bad("expected er:<n>:<p>, ba:<n>:<k>, or er-x:<n>:<x>"));
    }
    let n: u64 = parts[1].parse().map_err(|_| bad("n must be an integer"))?;
    match parts[0] {
        "er" => {
            let p: f64 = parts[2].parse().map_err(|_| bad("p must be a number"))?;
            Ok(GenSpec::Er { n, p })
        }
        "ba" => {
            let k: u64 = parts[2].parse().map_err(|_| bad("k must be an integer"))?;
            Ok(GenSpec::Ba { n, k })
        }
        "er-x" => {
            // Density sugar: p = n^(1/x) / n, so x = 2 is about sqrt(n)
            // neighbors per node and larger x is sparser.
            let x: f64 = parts[2].parse().map_err(|_| bad("x must be a number"))?;
            if !(x > 0.0) {
                return Err(bad("x must be positive"));
            }
            let p = (n as f64).powf(1.0 / x) / n as f64;
            Ok(GenSpec::Er { n, p })
        }
        _ => Err(bad("unknown generator, expected er, ba, or er-x")),
    }
}

fn build_from_spec(spec: &str, seed: u64) -> Result<Graph, Error> {
    match parse_gen_spec(spec)? {
        GenSpec::Er { n, p } => generate_er(n, p, seed),
        GenSpec::Ba { n, k } => generate_ba(n, k, seed),
    }
}

/// Load the graph named by `--gen`/`--file` and return it with a short
/// instance id for reports. Generator input uses the graph seed lane, so
/// every subcommand sees the same graph for the same spec and seed.
fn load_graph(input: &GraphInput, seed: u64) -> Result<(Graph, String), Error> {
    let (g, id) = match (&input.gen, &input.file) {
        (Some(spec), None) => {
            let g = build_from_spec(spec, derive_seed(seed, GRAPH_LANE))?;
            (g, spec.clone())
        }
        (None, Some(path)) => {
            let text = fs::read_to_string(path).map_err(|e| {
                Error::InvalidArgument(format!("cannot read {}: {e}", path.display()))
            })?;
            let g = bolt_core::build_graph(&bolt_core::parse_edge_list(&text)?)?;
            let id = path
                .file_name()
                .map(|s| s.to_string_lossy().into_owned())
                .unwrap_or_else(|| path.display().to_string());
            (g, id)
        }
        _ => {
            return Err(Error::InvalidArgument(
                "exactly one of --gen or --file is required".into(),
            ))
        }
    };
    if let Some(path) = &input.mapping_out {
        let mut text = String::from("original_label,internal_index\n");
        for v in g.nodes() {
            let _ = writeln!(text, "{},{v}", csv_field(g.label(v)));
        }
        fs::write(path, text).map_err(|e| {
            Error::InvalidArgument(format!("cannot write {}: {e}", path.display()))
        })?;
    }
    Ok((g, id))
}

fn write_output(out: Option<&PathBuf>, text: &str) -> Result<(), Error> {
    match out {
        Some(path) => fs::write(path, text).map_err(|e| {
            Error::InvalidArgument(format!("cannot write {}: {e}", path.display()))
        }),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

/// Quote a CSV field only when it needs it.
fn csv_field(raw: &str) -> String {
    if raw.contains(',') || raw.contains('"') || raw.contains('\n') {
        format!("\"{}\"", raw.replace('"', "\"\""))
    } else {
        raw.to_string()
    }
}

fn parse_labels(g: &Graph, raw: &str) -> Result<Vec<NodeId>, Error> {
    raw.split(',')
        .map(|s| g.require(s.trim()))
        .collect::<Result<Vec<_>, _>>()
}

#[derive(serde::Serialize)]
struct EstimateOut<'a> {
    node: &'a str,
    estimate: f64,
    samples: usize,
    model: ModelKind,
    seed: u64,
}

#[derive(serde::Serialize)]
struct RankedOut<'a> {
    label: &'a str,
    estimate: f64,
}

#[derive(serde::Serialize)]
struct OrderOut<'a> {
    ranking: Vec<RankedOut<'a>>,
    verdict: Option<Verdict>,
    samples: usize,
    seed: u64,
}

fn order_json(g: &Graph, r: &OrderingResult) -> String {
    let out = OrderOut {
        ranking: r
            .ranking
            .iter()
            .map(|e| RankedOut { label: g.label(e.node), estimate: e.estimate })
            .collect(),
        verdict: r.verdict,
        samples: r.samples,
        seed: r.seed,
    };
    let mut s = serde_json::to_string_pretty(&out).expect("serializable");
    s.push('\n');
    s
}

fn evaluate_csv(report: &EvaluationReport) -> String {
    let mut header = String::from("instance,model,T,avg_error,efficiency");
    let mut row = format!(
        "{},{},{},{:.6},{:.6}",
        csv_field(&report.graph_id),
        report.model,
        report.samples,
        report.avg_error_pct,
        report.efficiency_pct
    );
    for (t, pct) in &report.relaxed_pct {
        let _ = write!(header, ",relaxed_t{t}");
        let _ = write!(row, ",{pct:.6}");
    }
    header.push_str(",spearman\n");
    let _ = writeln!(row, ",{:.6}", report.spearman);
    header + &row
}

fn dispatch(cmd: Command) -> Result<(), Error> {
    match cmd {
        Command::Generate { gen, seed, out } => {
            let seed = resolve_seed(seed);
            let g = build_from_spec(&gen, derive_seed(seed, GRAPH_LANE))?;
            let mut text = String::new();
            for (u, v) in g.edges() {
                let _ = writeln!(text, "{} {}", g.label(u), g.label(v));
            }
            write_output(out.as_ref(), &text)?;
            eprintln!(
                "generated {gen}: {} nodes, {} edges (seed {seed})",
                g.node_count(),
                g.edge_count()
            );
            Ok(())
        }
        Command::Exact { input, seed, out } => {
            let seed = resolve_seed(seed);
            let (g, id) = load_graph(&input, seed)?;
            let scores = exact_betweenness(&g);
            let mut text = String::from("node_label,betweenness\n");
            for v in g.nodes() {
                let _ = writeln!(text, "{},{}", csv_field(g.label(v)), scores[v as usize]);
            }
            write_output(out.as_ref(), &text)?;
            eprintln!(
                "exact betweenness of {id}: {} nodes, {} edges (seed {seed})",
                g.node_count(),
                g.edge_count()
            );
            Ok(())
        }
        Command::Probs { input, node, model, seed, out } => {
            let seed = resolve_seed(seed);
            let (g, id) = load_graph(&input, seed)?;
            let target = g.require(&node)?;
            let dist = build_distribution(&g, model, target)?;
            let reach = bfs(&g, target);
            let mut text = String::from("node_label,distance,probability,model\n");
            for v in g.nodes() {
                let d = match reach.distance(v) {
                    Some(d) => d.to_string(),
                    None => String::new(),
                };
                let _ = writeln!(
                    text,
                    "{},{},{:e},{model}",
                    csv_field(g.label(v)),
                    d,
                    dist.probability(v)
                );
            }
            write_output(out.as_ref(), &text)?;
            eprintln!(
                "{model} pivot distribution for node {node} of {id}: {} support nodes (seed {seed})",
                dist.support().len()
            );
            Ok(())
        }
        Command::Estimate { input, node, model, samples, seed, out } => {
            let seed = resolve_seed(seed);
            let (g, id) = load_graph(&input, seed)?;
            let target = g.require(&node)?;
            let r = estimate_with_model(&g, model, target, samples, seed)?;
            let payload = EstimateOut {
                node: &node,
                estimate: r.estimate,
                samples: r.samples,
                model: r.model,
                seed: r.seed,
            };
            let mut text = serde_json::to_string_pretty(&payload).expect("serializable");
            text.push('\n');
            write_output(out.as_ref(), &text)?;
            eprintln!(
                "estimated node {node} of {id}: {} with T={samples} {model} (seed {seed})",
                r.estimate
            );
            Ok(())
        }
        Command::Order { input, nodes, samples, seed, out } => {
            let seed = resolve_seed(seed);
            let (g, id) = load_graph(&input, seed)?;
            let picked = parse_labels(&g, &nodes)?;
            if picked.len() != 2 {
                return Err(Error::InvalidArgument(
                    "order compares exactly two nodes; use korder for more".into(),
                ));
            }
            let r = betweenness_ordering(&g, picked[0], picked[1], samples, seed)?;
            write_output(out.as_ref(), &order_json(&g, &r))?;
            eprintln!(
                "ordered {nodes} of {id}: {:?} with T={samples} (seed {seed})",
                r.verdict.expect("two-node query")
            );
            Ok(())
        }
        Command::Korder { input, nodes, random_k, samples, seed, out } => {
            let seed = resolve_seed(seed);
            let (g, id) = load_graph(&input, seed)?;
            let picked = match (nodes, random_k) {
                (Some(raw), None) => parse_labels(&g, &raw)?,
                (None, Some(k)) => {
                    if k > g.node_count() {
                        return Err(Error::InvalidArgument(format!(
                            "--random-k {k} exceeds the {} available nodes",
                            g.node_count()
                        )));
                    }
                    let mut rng = seeded_rng(derive_seed(seed, PICK_LANE));
                    rand::seq::index::sample(&mut rng, g.node_count(), k)
                        .iter()
                        .map(|i| i as NodeId)
                        .collect()
                }
                _ => {
                    return Err(Error::InvalidArgument(
                        "korder needs --nodes or --random-k".into(),
                    ))
                }
            };
            let r = k_betweenness_ordering(&g, &picked, samples, seed)?;
            write_output(out.as_ref(), &order_json(&g, &r))?;
            eprintln!(
                "ranked {} nodes of {id} with T={samples} (seed {seed})",
                picked.len()
            );
            Ok(())
        }
        Command::Evaluate {
            input,
            model,
            samples,
            reps,
            pair_budget,
            relax,
            format,
            seed,
            out,
        } => {
            let seed = resolve_seed(seed);
            let (g, id) = load_graph(&input, seed)?;
            let cfg = EvaluationConfig {
                model,
                samples,
                reps,
                pair_budget,
                relax_thresholds: relax,
                seed,
            };
            let report = evaluate(&g, &id, &cfg)?;
            let text = match format {
                OutFormat::Csv => evaluate_csv(&report),
                OutFormat::Json => {
                    let mut s = serde_json::to_string_pretty(&report).expect("serializable");
                    s.push('\n');
                    s
                }
            };
            write_output(out.as_ref(), &text)?;
            eprintln!(
                "evaluated {id}: {model} T={samples} reps={reps}, {} pairs{} (seed {seed})",
                report.pairs_evaluated,
                if report.exhaustive_pairs { " (all)" } else { "" }
            );
            Ok(())
        }
        Command::AnalyzeLevels { n, p, levels, graphs, sources, seed, out } => {
            let seed = resolve_seed(seed);
            let profile = predict_levels(n, p, levels)?;
            let observed = if graphs > 0 {
                Some(empirical_levels(n, p, graphs, sources, seed)?)
            } else {
                None
            };
            let rows = profile
                .alpha
                .len()
                .max(profile.alpha_exact.len())
                .max(observed.as_ref().map_or(0, |e| e.mean.len()));
            let mut text =
                String::from("level,alpha_predicted,alpha_exact_form,alpha_empirical_mean,alpha_empirical_std\n");
            for level in 0..rows {
                let cell = |xs: &[f64]| {
                    xs.get(level).map(|x| format!("{x:.6}")).unwrap_or_default()
                };
                let (emp_mean, emp_std) = match &observed {
                    Some(e) => (cell(&e.mean), cell(&e.std)),
                    None => (String::new(), String::new()),
                };
                let _ = writeln!(
                    text,
                    "{level},{},{},{emp_mean},{emp_std}",
                    cell(&profile.alpha),
                    cell(&profile.alpha_exact)
                );
            }
            write_output(out.as_ref(), &text)?;
            eprintln!(
                "predicted {} levels for n={n} p={p} (lambda {:.3}{}, seed {seed})",
                profile.alpha.len(),
                profile.lambda,
                match &observed {
                    Some(e) => format!(", {} BFS samples", e.samples),
                    None => String::new(),
                }
            );
            Ok(())
        }
    }
}
