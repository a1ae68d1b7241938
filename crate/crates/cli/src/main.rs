use std::fs::{self, File};
use std::io::{self, BufWriter, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use wstream::graph::{build_adjacency, load_edge_list};
use wstream::harness::{
    dataset_name, emit_csv, fetch_datasets, parse_manifest, read_csv, result_row, run_plan,
    sort_rows, ExperimentPlan, HttpDownloader, RunSpec,
};
use wstream::metrics::{partition, QualityReport};
use wstream::{Error, PartitionState};

#[derive(Parser, Debug)]
#[command(
    name = "wstream",
    version,
    about = "Streaming graph partitioning experiments"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Partition one graph with one configuration.
    Partition(PartitionArgs),
    /// Run a parameter sweep and write one CSV row per run.
    Sweep(SweepArgs),
    /// Download and verify the datasets listed in a manifest.
    Fetch(FetchArgs),
    /// Recompute quality metrics from a graph and a metadata file.
    Metrics(MetricsArgs),
}

#[derive(Args, Debug)]
struct PartitionArgs {
    #[arg(long)]
    input: PathBuf,
    #[arg(long, default_value = "wstream")]
    algo: String,
    #[arg(long, default_value_t = 2)]
    k: usize,
    #[arg(long, default_value_t = 100)]
    window: usize,
    #[arg(long, default_value_t = 100)]
    slack: u64,
    #[arg(long, default_value_t = 0.0)]
    epsilon: f64,
    #[arg(long, default_value_t = 1)]
    seed: u64,
    /// `random` or `as-read`.
    #[arg(long, default_value = "random")]
    order: String,
    #[arg(long)]
    co_assign: bool,
    /// `splitmix64` or `identity`.
    #[arg(long, default_value = "splitmix64")]
    hash_mix: String,
    /// Write the vertex-to-partition metadata file here.
    #[arg(long)]
    meta_out: Option<PathBuf>,
    /// Write the result row here instead of stdout.
    #[arg(long)]
    csv_out: Option<PathBuf>,
}

#[derive(Args, Debug)]
struct SweepArgs {
    /// Plan file of `key=value` lines; flags below override its values.
    #[arg(long)]
    plan: Option<PathBuf>,
    #[arg(long = "input")]
    inputs: Vec<PathBuf>,
    /// Comma-separated algorithm list.
    #[arg(long)]
    algo: Option<String>,
    #[arg(long)]
    k: Option<String>,
    #[arg(long)]
    window: Option<String>,
    #[arg(long)]
    slack: Option<String>,
    #[arg(long)]
    epsilon: Option<String>,
    #[arg(long)]
    seeds: Option<String>,
    #[arg(long)]
    order: Option<String>,
    #[arg(long)]
    co_assign: bool,
    #[arg(long)]
    jobs: Option<usize>,
    /// Externally produced result CSVs (same columns) to merge in.
    #[arg(long = "merge")]
    merge: Vec<PathBuf>,
    #[arg(long)]
    csv_out: Option<PathBuf>,
}

#[derive(Args, Debug)]
struct FetchArgs {
    #[arg(long, default_value = "datasets.manifest")]
    manifest: PathBuf,
    #[arg(long, default_value = "data")]
    cache_dir: PathBuf,
    /// Use cached files only.
    #[arg(long)]
    offline: bool,
}

#[derive(Args, Debug)]
struct MetricsArgs {
    #[arg(long)]
    input: PathBuf,
    #[arg(long)]
    meta: PathBuf,
}

enum Failure {
    Usage(String),
    Data(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        if e.is_data_error() {
            Failure::Data(e.to_string())
        } else {
            Failure::Usage(e.to_string())
        }
    }
}

impl From<io::Error> for Failure {
    fn from(e: io::Error) -> Self {
        Failure::Data(e.to_string())
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() {
                ExitCode::from(1)
            } else {
                ExitCode::SUCCESS
            };
        }
    };
    let result = match cli.command {
        Command::Partition(args) => partition_cmd(args),
        Command::Sweep(args) => sweep_cmd(args),
        Command::Fetch(args) => fetch_cmd(args),
        Command::Metrics(args) => metrics_cmd(args),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
        Err(Failure::Data(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}

fn sink(path: Option<&Path>) -> io::Result<Box<dyn Write>> {
    Ok(match path {
        Some(p) => Box::new(BufWriter::new(File::create(p)?)),
        None => Box::new(BufWriter::new(io::stdout().lock())),
    })
}

fn partition_cmd(args: PartitionArgs) -> Result<(), Failure> {
    let mut plan = ExperimentPlan {
        datasets: vec![args.input.clone()],
        ..Default::default()
    };
    for (key, value) in [
        ("algorithm", args.algo.clone()),
        ("k", args.k.to_string()),
        ("window", args.window.to_string()),
        ("slack", args.slack.to_string()),
        ("epsilon", args.epsilon.to_string()),
        ("seed", args.seed.to_string()),
        ("order", args.order.clone()),
        ("co_assign", args.co_assign.to_string()),
        ("hash_mix", args.hash_mix.clone()),
    ] {
        plan.set(key, &value)?;
    }
    if plan.algorithms.len() != 1 {
        return Err(Failure::Usage("partition takes exactly one --algo".into()));
    }
    plan.validate()?;
    let spec: RunSpec = plan.runs().remove(0);

    let graph = build_adjacency(&load_edge_list(&args.input)?);
    let (state, elapsed) = partition(&graph, &spec.algorithm())?;
    let report = QualityReport::from_state(&graph, &state, elapsed)?;

    if let Some(path) = &args.meta_out {
        state.write_metadata(BufWriter::new(File::create(path)?))?;
    }
    let row = result_row(&dataset_name(&args.input), &graph, &spec, &report);
    emit_csv(&[row], sink(args.csv_out.as_deref())?)?;
    Ok(())
}

fn sweep_cmd(args: SweepArgs) -> Result<(), Failure> {
    let mut plan = match &args.plan {
        Some(path) => {
            let text = fs::read_to_string(path)
                .map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))?;
            ExperimentPlan::parse(&text)?
        }
        None => ExperimentPlan::default(),
    };
    plan.datasets.extend(args.inputs.iter().cloned());
    for (key, value) in [
        ("algorithm", &args.algo),
        ("k", &args.k),
        ("window", &args.window),
        ("slack", &args.slack),
        ("epsilon", &args.epsilon),
        ("seed", &args.seeds),
        ("order", &args.order),
    ] {
        if let Some(v) = value {
            plan.set(key, v)?;
        }
    }
    if args.co_assign {
        plan.co_assign = true;
    }
    if args.jobs.is_some() {
        plan.jobs = args.jobs;
    }
    if plan.datasets.is_empty() {
        return Err(Failure::Usage(
            "no datasets: pass --input or a plan with dataset=".into(),
        ));
    }

    let mut outcome = run_plan(&plan)?;
    for path in &args.merge {
        let file =
            File::open(path).map_err(|e| Failure::Data(format!("{}: {e}", path.display())))?;
        let mut extra =
            read_csv(file).map_err(|e| Failure::Data(format!("{}: {e}", path.display())))?;
        outcome.rows.append(&mut extra);
    }
    sort_rows(&mut outcome.rows);
    emit_csv(&outcome.rows, sink(args.csv_out.as_deref())?)?;

    for d in &outcome.diagnostics {
        eprintln!("error,{},{}", d.dataset, d.error);
    }
    if outcome.diagnostics.is_empty() {
        Ok(())
    } else {
        Err(Failure::Data(format!(
            "{} dataset(s) or run(s) failed",
            outcome.diagnostics.len()
        )))
    }
}

fn fetch_cmd(args: FetchArgs) -> Result<(), Failure> {
    let text = fs::read_to_string(&args.manifest)
        .map_err(|e| Failure::Usage(format!("{}: {e}", args.manifest.display())))?;
    let manifest = parse_manifest(&text)?;
    let mut failed = 0;
    for (entry, result) in manifest.iter().zip(fetch_datasets(
        &manifest,
        &args.cache_dir,
        args.offline,
        &HttpDownloader,
    )) {
        match result {
            Ok(got) => {
                let source = if got.downloaded {
                    "downloaded"
                } else {
                    "cached"
                };
                println!(
                    "{}\t{}\t{}\tn={} m={}\tsha256={}",
                    got.name,
                    source,
                    got.path.display(),
                    got.n,
                    got.m,
                    got.sha256
                );
                if !got.matches_expected() {
                    eprintln!(
                        "warning: {} has n={} m={}, manifest expects n={} m={}",
                        got.name, got.n, got.m, got.expected_n, got.expected_m
                    );
                }
            }
            Err(e) => {
                failed += 1;
                eprintln!("error: {}: {e}", entry.name);
            }
        }
    }
    if failed > 0 {
        Err(Failure::Data(format!("{failed} dataset(s) unavailable")))
    } else {
        Ok(())
    }
}

fn metrics_cmd(args: MetricsArgs) -> Result<(), Failure> {
    let graph = build_adjacency(&load_edge_list(&args.input)?);
    let file = File::open(&args.meta)
        .map_err(|e| Failure::Data(format!("{}: {e}", args.meta.display())))?;
    let state = PartitionState::read_metadata(io::BufReader::new(file))?;
    let report = QualityReport::from_state(&graph, &state, Default::default())?;
    let loads: Vec<String> = report.loads.iter().map(u64::to_string).collect();
    let mut out = io::stdout().lock();
    writeln!(out, "n\t{}", graph.n())?;
    writeln!(out, "m\t{}", graph.m())?;
    writeln!(out, "k\t{}", state.k())?;
    writeln!(out, "cut_edges\t{}", report.cut_edges)?;
    writeln!(out, "edge_cut_ratio\t{:.6}", report.edge_cut_ratio)?;
    writeln!(out, "load_imbalance\t{:.6}", report.load_imbalance)?;
    writeln!(out, "loads\t{}", loads.join(","))?;
    Ok(())
}
