//! Library side of the `lsgo` binary. Each subcommand is a plain function
//! so it can be driven from tests without spawning a process.

pub mod bench_info;
pub mod cli;
pub mod experiment;
pub mod run;
pub mod stats;
pub mod tune;

use anyhow::Result;

use crate::cli::{Cli, Command};

/// Float format used in every CSV the harness writes.
pub fn fmt_f64(v: f64) -> String {
    format!("{v:.11e}")
}

/// Runs `f` on a dedicated pool of `threads` workers, or on the global pool.
pub fn with_pool<R: Send>(threads: Option<usize>, f: impl FnOnce() -> R + Send) -> Result<R> {
    match threads {
        None => Ok(f()),
        Some(0) => anyhow::bail!("--parallel must be at least 1"),
        Some(n) => Ok(rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build()?
            .install(f)),
    }
}

pub fn execute(cli: Cli) -> Result<()> {
    match cli.command {
        Command::Run(args) => {
            let report = run::cmd_run(&args)?;
            for (id, s) in &report.summaries {
                println!(
                    "{id}: best {} median {} worst {} over {} runs",
                    fmt_f64(s.best),
                    fmt_f64(s.median),
                    fmt_f64(s.worst),
                    s.n
                );
            }
            println!("wrote {}", report.out_dir.display());
        }
        Command::Stats(args) => print!("{}", stats::cmd_stats(&args)?.text),
        Command::Tune(args) => {
            let path = tune::cmd_tune(&args)?;
            println!("wrote {}", path.display());
        }
        Command::BenchInfo(args) => {
            for path in bench_info::cmd_bench_info(&args)? {
                println!("wrote {}", path.display());
            }
        }
    }
    Ok(())
}
