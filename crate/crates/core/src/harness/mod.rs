//! Experiment plans, sweep execution and result tables.

mod fetch;
mod plan;
mod results;

use std::path::Path;

use rayon::prelude::*;

pub use fetch::{
    fetch_datasets, fetch_one, parse_manifest, sha256_hex, DatasetEntry, Downloader,
    FetchedDataset, HttpDownloader,
};
pub use plan::{
    AlgorithmKind, ExperimentPlan, OrderKind, RunSpec, DEFAULT_SEEDS, PAPER_KS, PAPER_SLACKS,
    PAPER_WINDOWS,
};
pub use results::{emit_csv, read_csv, sort_rows, ResultRow, COLUMNS};

use crate::error::{Error, Result};
use crate::graph::{build_adjacency, load_edge_list, AdjacencyGraph};
use crate::metrics::{measure_run, QualityReport};

/// A dataset or run that could not be completed.
#[derive(Debug)]
pub struct Diagnostic {
    pub dataset: String,
    pub error: Error,
}

#[derive(Debug, Default)]
pub struct PlanOutcome {
    pub rows: Vec<ResultRow>,
    pub diagnostics: Vec<Diagnostic>,
}

/// Display name for a dataset file: the file name without `.gz`/`.txt`.
pub fn dataset_name(path: &Path) -> String {
    let name = path
        .file_name()
        .map(|s| s.to_string_lossy().into_owned())
        .unwrap_or_else(|| path.display().to_string());
    let name = name.strip_suffix(".gz").unwrap_or(&name);
    let name = name
        .strip_suffix(".txt")
        .or_else(|| name.strip_suffix(".edges"))
        .unwrap_or(name);
    name.to_string()
}

pub fn result_row(
    dataset: &str,
    graph: &AdjacencyGraph,
    spec: &RunSpec,
    report: &QualityReport,
) -> ResultRow {
    ResultRow {
        dataset: dataset.to_string(),
        algorithm: spec.algorithm.name().to_string(),
        k: spec.k,
        window: spec.window,
        slack: spec.slack,
        epsilon: spec.epsilon,
        seed: spec.seed,
        order: spec.order.label().to_string(),
        n: graph.n(),
        m: graph.m(),
        cut_edges: report.cut_edges,
        edge_cut_ratio: report.edge_cut_ratio,
        load_imbalance: report.load_imbalance,
        elapsed_seconds: report.elapsed.as_secs_f64(),
    }
}

/// Runs every configuration in the plan over in-memory graphs.
pub fn run_plan_on(plan: &ExperimentPlan, graphs: &[(String, AdjacencyGraph)]) -> PlanOutcome {
    let specs: Vec<RunSpec> = plan
        .runs()
        .into_iter()
        .filter(|s| s.dataset < graphs.len())
        .collect();
    let execute = || -> Vec<Result<ResultRow>> {
        specs
            .par_iter()
            .map(|spec| {
                let (name, graph) = &graphs[spec.dataset];
                let report = measure_run(graph, &spec.algorithm())?;
                Ok(result_row(name, graph, spec, &report))
            })
            .collect()
    };
    let results = match plan
        .jobs
        .map(|n| rayon::ThreadPoolBuilder::new().num_threads(n).build())
    {
        Some(Ok(pool)) => pool.install(execute),
        _ => execute(),
    };

    let mut outcome = PlanOutcome::default();
    for (spec, result) in specs.iter().zip(results) {
        match result {
            Ok(row) => outcome.rows.push(row),
            Err(error) => outcome.diagnostics.push(Diagnostic {
                dataset: graphs[spec.dataset].0.clone(),
                error,
            }),
        }
    }
    sort_rows(&mut outcome.rows);
    outcome
}

/// Loads every dataset in the plan and runs it. Unreadable datasets become
/// diagnostics; the remaining datasets still run.
pub fn run_plan(plan: &ExperimentPlan) -> Result<PlanOutcome> {
    plan.validate()?;
    let loaded: Vec<_> = plan
        .datasets
        .par_iter()
        .map(|path| {
            (
                dataset_name(path),
                load_edge_list(path).map(|e| build_adjacency(&e)),
            )
        })
        .collect();

    let mut diagnostics = Vec::new();
    let mut graphs = Vec::new();
    let mut kept = ExperimentPlan {
        datasets: Vec::new(),
        ..plan.clone()
    };
    for (path, (name, graph)) in plan.datasets.iter().zip(loaded) {
        match graph {
            Ok(g) => {
                kept.datasets.push(path.clone());
                graphs.push((name, g));
            }
            Err(error) => diagnostics.push(Diagnostic {
                dataset: name,
                error,
            }),
        }
    }
    let mut outcome = run_plan_on(&kept, &graphs);
    diagnostics.append(&mut outcome.diagnostics);
    outcome.diagnostics = diagnostics;
    Ok(outcome)
}
