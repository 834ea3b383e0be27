//! The `bench-info` command: JSON descriptors of benchmark instances.

use std::fs;
use std::path::{Path, PathBuf};

use anyhow::{Context, Result};
use lsgo_core::benchmark::{make_instance, InstanceDescriptor};
use lsgo_core::Instance;

use crate::cli::BenchInfoArgs;

/// Reads a descriptor written by `bench-info` and rebuilds the instance.
pub fn load_descriptor(path: &Path) -> Result<Instance> {
    let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    Ok(InstanceDescriptor::from_json(&text)?.to_instance()?)
}

pub fn cmd_bench_info(args: &BenchInfoArgs) -> Result<Vec<PathBuf>> {
    let dir = &args.out.out;
    fs::create_dir_all(dir).with_context(|| format!("creating {}", dir.display()))?;
    args.functions
        .0
        .iter()
        .map(|&id| {
            let inst: Instance = make_instance(id, args.dim, args.seed)?;
            let path = dir.join(format!("{id}_D{}_seed{}.json", args.dim, args.seed));
            fs::write(
                &path,
                InstanceDescriptor::from_instance(&inst).to_json()? + "\n",
            )?;
            Ok(path)
        })
        .collect()
}
