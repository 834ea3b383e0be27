//! The `tune` command: per-function GA tuning of `(PAR, CR, F)`.

use std::fs;
use std::path::PathBuf;

use anyhow::{Context, Result};
use lsgo_core::benchmark::make_instance;
use lsgo_core::params::ParamFile;
use lsgo_core::tuner::{tune, TunerConfig};
use lsgo_core::Instance;

use crate::cli::TuneArgs;
use crate::with_pool;

pub fn tuner_config(args: &TuneArgs) -> TunerConfig {
    TunerConfig {
        ga_population: args.ga_population,
        ga_generations: args.generations,
        inner_budget: args.budget,
        probes_per_eval: args.probes,
        population_size: args.population_size,
        seed: args.seed,
    }
}

/// Tunes every requested function and returns the key-value parameter
/// file, loadable with `run --params tuned:FILE`.
pub fn tune_functions(args: &TuneArgs) -> Result<ParamFile> {
    let cfg = tuner_config(args);
    cfg.validate()?;
    let mut file = ParamFile::default();
    file.globals
        .insert("population_size".into(), args.population_size as f64);
    file.globals.insert("dim".into(), args.dim as f64);
    file.globals.insert("seed".into(), args.seed as f64);
    for &id in &args.functions.0 {
        let inst: Instance = make_instance(id, args.dim, args.seed)?;
        let out = with_pool(args.parallel, || tune(&inst, &cfg))??;
        file.globals.insert(format!("fitness_{id}"), out.fitness);
        file.globals
            .insert(format!("evaluations_{id}"), out.evaluations as f64);
        file.functions.insert(id, out.best);
    }
    Ok(file)
}

pub fn cmd_tune(args: &TuneArgs) -> Result<PathBuf> {
    let file = tune_functions(args)?;
    let dir = &args.out.out;
    fs::create_dir_all(dir).with_context(|| format!("creating {}", dir.display()))?;
    let path = dir.join("tuned_params.txt");
    fs::write(&path, file.render())?;
    Ok(path)
}
