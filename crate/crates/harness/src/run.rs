//! The `run` command: seeded hybrid runs over a set of benchmark functions.

use std::collections::BTreeMap;
use std::fs;
use std::path::{Path, PathBuf};

use anyhow::{bail, Context, Result};
use lsgo_core::benchmark::make_instance;
use lsgo_core::hybrid;
use lsgo_core::stats::{ResultRow, ResultTable};
use lsgo_core::{FunctionId, Instance, Summary};
use rayon::prelude::*;

use crate::cli::RunArgs;
use crate::experiment::Experiment;
use crate::{fmt_f64, with_pool};

/// Name used for this optimizer in the wide metrics table.
pub const ALGORITHM_NAME: &str = "IMHS+MDE";

const SUMMARY_METRICS: [&str; 5] = ["Best", "Median", "Worst", "Mean", "Stddev"];

/// One seeded run of one function.
#[derive(Debug, Clone, PartialEq)]
pub struct RunRecord {
    pub function: FunctionId,
    pub dim: usize,
    pub seed: u64,
    /// Best fitness at each checkpoint, ascending FE.
    pub checkpoints: Vec<f64>,
    pub final_best: f64,
    pub wall_ms: u128,
}

#[derive(Debug, Clone)]
pub struct RunReport {
    pub experiment: Experiment,
    pub records: Vec<RunRecord>,
    pub summaries: Vec<(FunctionId, Summary)>,
    pub out_dir: PathBuf,
}

/// Executes every (function, seed) pair; records come back sorted by
/// function, then seed.
pub fn execute(exp: &Experiment) -> Result<Vec<RunRecord>> {
    let instances: Vec<Instance> = exp
        .functions
        .iter()
        .map(|&id| make_instance(id, exp.dim, exp.seed))
        .collect::<lsgo_core::Result<_>>()?;
    let jobs: Vec<(usize, u64)> = (0..exp.functions.len())
        .flat_map(|f| (0..exp.runs as u64).map(move |i| (f, exp.seed + i)))
        .collect();
    let fes = exp.checkpoint_fes();
    jobs.into_par_iter()
        .map(|(f, seed)| {
            let cfg = exp.configs[f].clone().with_seed(seed);
            let res = hybrid::run(&instances[f], &cfg)?;
            Ok(RunRecord {
                function: exp.functions[f],
                dim: exp.dim,
                seed,
                checkpoints: fes.iter().map(|fe| res.best_at_checkpoint[fe]).collect(),
                final_best: res.final_best.fitness,
                wall_ms: res.wall_time.as_millis(),
            })
        })
        .collect()
}

pub fn summarize(exp: &Experiment, records: &[RunRecord]) -> Result<Vec<(FunctionId, Summary)>> {
    exp.functions
        .iter()
        .map(|&id| {
            let values: Vec<f64> = records
                .iter()
                .filter(|r| r.function == id)
                .map(|r| r.final_best)
                .collect();
            Ok((id, Summary::from_values(&values)?))
        })
        .collect()
}

pub fn results_header(exp: &Experiment) -> Vec<String> {
    let mut h: Vec<String> = ["function_id", "dim", "seed"].map(String::from).to_vec();
    h.extend(
        exp.checkpoint_fes()
            .iter()
            .map(|&fe| exp.checkpoint_column(fe)),
    );
    h.extend(["final_best", "wall_ms", "config_hash"].map(String::from));
    h
}

fn write_results(path: &Path, exp: &Experiment, records: &[RunRecord]) -> Result<()> {
    let mut w = csv::Writer::from_path(path)?;
    w.write_record(results_header(exp))?;
    for r in records {
        let mut rec = vec![
            r.function.to_string(),
            r.dim.to_string(),
            r.seed.to_string(),
        ];
        rec.extend(r.checkpoints.iter().map(|&v| fmt_f64(v)));
        rec.push(fmt_f64(r.final_best));
        rec.push(r.wall_ms.to_string());
        rec.push(exp.config_hash.clone());
        w.write_record(&rec)?;
    }
    w.flush()?;
    Ok(())
}

fn summary_values(s: &Summary) -> [f64; 5] {
    [s.best, s.median, s.worst, s.mean, s.stddev]
}

fn write_summary(path: &Path, exp: &Experiment, summaries: &[(FunctionId, Summary)]) -> Result<()> {
    let mut w = csv::Writer::from_path(path)?;
    w.write_record([
        "function_id",
        "dim",
        "runs",
        "best",
        "median",
        "worst",
        "mean",
        "stddev",
        "config_hash",
    ])?;
    for (id, s) in summaries {
        let mut rec = vec![id.to_string(), exp.dim.to_string(), s.n.to_string()];
        rec.extend(summary_values(s).map(fmt_f64));
        rec.push(exp.config_hash.clone());
        w.write_record(&rec)?;
    }
    w.flush()?;
    Ok(())
}

/// Wide `algorithm,metric,F..` table accepted by `stats --input`.
pub fn metrics_table(summaries: &[(FunctionId, Summary)]) -> ResultTable {
    let functions = summaries.iter().map(|(id, _)| id.to_string()).collect();
    let rows = SUMMARY_METRICS
        .iter()
        .enumerate()
        .map(|(k, metric)| ResultRow {
            algorithm: ALGORITHM_NAME.to_string(),
            metric: metric.to_string(),
            values: summaries
                .iter()
                .map(|(_, s)| summary_values(s)[k])
                .collect(),
        })
        .collect();
    ResultTable { functions, rows }
}

/// Recomputes each summary row from `results.csv` and compares it with
/// `summary.csv`.
pub fn audit(dir: &Path) -> Result<usize> {
    let mut by_function: BTreeMap<String, Vec<f64>> = BTreeMap::new();
    let mut rdr = csv::Reader::from_path(dir.join("results.csv"))?;
    let header = rdr.headers()?.clone();
    let col = header
        .iter()
        .position(|h| h == "final_best")
        .context("results.csv has no final_best column")?;
    for (line, rec) in rdr.records().enumerate() {
        let rec = rec?;
        let v: f64 = rec[col]
            .parse()
            .with_context(|| format!("results.csv row {}: bad final_best", line + 2))?;
        by_function.entry(rec[0].to_string()).or_default().push(v);
    }
    let mut rdr = csv::Reader::from_path(dir.join("summary.csv"))?;
    let mut checked = 0;
    for rec in rdr.records() {
        let rec = rec?;
        let id = &rec[0];
        let values = by_function
            .remove(id)
            .with_context(|| format!("{id} has a summary but no runs"))?;
        let expect = Summary::from_values(&values)?;
        if rec[2].parse::<usize>()? != expect.n {
            bail!(
                "{id}: summary counts {} runs, results.csv has {}",
                &rec[2],
                expect.n
            );
        }
        for (k, want) in summary_values(&expect).into_iter().enumerate() {
            let got: f64 = rec[3 + k].parse()?;
            if (got - want).abs() > 1e-9 * want.abs().max(got.abs()).max(f64::MIN_POSITIVE) {
                bail!(
                    "{id}: summary {} is {got}, recomputed {want}",
                    SUMMARY_METRICS[k]
                );
            }
        }
        checked += 1;
    }
    if let Some(id) = by_function.keys().next() {
        bail!("{id} has runs but no summary row");
    }
    Ok(checked)
}

pub fn cmd_run(args: &RunArgs) -> Result<RunReport> {
    let experiment = Experiment::from_args(args)?;
    let records = with_pool(args.parallel, || execute(&experiment))??;
    let summaries = summarize(&experiment, &records)?;

    let dir = &args.out.out;
    fs::create_dir_all(dir).with_context(|| format!("creating {}", dir.display()))?;
    write_results(&dir.join("results.csv"), &experiment, &records)?;
    write_summary(&dir.join("summary.csv"), &experiment, &summaries)?;
    metrics_table(&summaries).write_csv(fs::File::create(dir.join("metrics.csv"))?)?;
    fs::write(
        dir.join("config.json"),
        format!("{}\n", experiment.config_json),
    )?;
    if args.audit {
        audit(dir)?;
    }
    Ok(RunReport {
        experiment,
        records,
        summaries,
        out_dir: dir.clone(),
    })
}
