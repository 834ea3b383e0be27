//! Parsing of list-valued flags and resolution of an experiment into
//! per-function hybrid configurations.

use std::collections::BTreeSet;
use std::fmt;
use std::path::PathBuf;
use std::str::FromStr;

use anyhow::{bail, Context, Result};
use lsgo_core::hybrid::HybridConfig;
use lsgo_core::imhs::ImhsParams;
use lsgo_core::mde::MdeParams;
use lsgo_core::params::{load_specialist_params, ParamFile};
use lsgo_core::{FunctionId, ParamVector};
use serde::Serialize;
use sha2::{Digest, Sha256};

use crate::cli::RunArgs;

/// Ordered, duplicate-free list of function ids.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FunctionList(pub Vec<FunctionId>);

impl FromStr for FunctionList {
    type Err = anyhow::Error;

    fn from_str(s: &str) -> Result<Self> {
        let mut ids = BTreeSet::new();
        for part in s.split(',').map(str::trim).filter(|p| !p.is_empty()) {
            if part.eq_ignore_ascii_case("all") {
                ids.extend(FunctionId::all());
            } else if let Some((a, b)) = part.split_once("..") {
                let (a, b): (FunctionId, FunctionId) = (a.parse()?, b.parse()?);
                if a > b {
                    bail!("empty function range {part}");
                }
                ids.extend(FunctionId::all().filter(|f| *f >= a && *f <= b));
            } else {
                ids.insert(part.parse::<FunctionId>()?);
            }
        }
        if ids.is_empty() {
            bail!("no functions selected");
        }
        Ok(Self(ids.into_iter().collect()))
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum ParamSource {
    Table2b,
    Tuned(PathBuf),
    Explicit(ParamVector),
}

impl FromStr for ParamSource {
    type Err = anyhow::Error;

    fn from_str(s: &str) -> Result<Self> {
        if s == "table2b" {
            return Ok(Self::Table2b);
        }
        if let Some(path) = s.strip_prefix("tuned:") {
            return Ok(Self::Tuned(PathBuf::from(path)));
        }
        if let Some(list) = s.strip_prefix("explicit:") {
            let v: Vec<f64> = list
                .split(',')
                .map(|x| x.trim().parse::<f64>())
                .collect::<std::result::Result<_, _>>()
                .with_context(|| format!("bad number in {s:?}"))?;
            let [par, cr, f] = v[..] else {
                bail!("explicit parameters need PAR,CR,F");
            };
            return Ok(Self::Explicit(ParamVector::new(par, cr, f)?));
        }
        bail!("unknown parameter source {s:?}; use table2b, tuned:FILE or explicit:PAR,CR,F")
    }
}

impl fmt::Display for ParamSource {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::Table2b => write!(f, "table2b"),
            Self::Tuned(p) => write!(f, "tuned:{}", p.display()),
            Self::Explicit(p) => write!(f, "explicit:{},{},{}", p.par, p.cr, p.f),
        }
    }
}

impl ParamSource {
    pub fn resolve(&self, ids: &[FunctionId]) -> Result<Vec<ParamVector>> {
        match self {
            Self::Table2b => ids
                .iter()
                .map(|&id| Ok(load_specialist_params(id)?))
                .collect(),
            Self::Explicit(p) => Ok(vec![*p; ids.len()]),
            Self::Tuned(path) => {
                let text = std::fs::read_to_string(path)
                    .with_context(|| format!("reading parameter file {}", path.display()))?;
                let file = ParamFile::parse(&text)?;
                ids.iter().map(|&id| Ok(file.get(id)?)).collect()
            }
        }
    }
}

/// `max(1, round(base * scale))`
pub fn scaled_iterations(base: usize, scale: f64) -> usize {
    ((base as f64 * scale).round() as usize).max(1)
}

#[derive(Debug, Clone, Serialize)]
struct FunctionFingerprint {
    function_id: FunctionId,
    par: f64,
    cr: f64,
    f: f64,
}

/// Everything that determines a run except the seed.
#[derive(Debug, Clone, Serialize)]
struct Fingerprint<'a> {
    dim: usize,
    runs: usize,
    budget_scale: f64,
    population_size: usize,
    outer_iterations: usize,
    imhs_iterations: usize,
    mde_iterations: usize,
    hmcr: [f64; 2],
    bandwidth_fraction: f64,
    checkpoints: &'a [usize],
    functions: Vec<FunctionFingerprint>,
}

/// A validated `run` invocation.
#[derive(Debug, Clone)]
pub struct Experiment {
    pub functions: Vec<FunctionId>,
    pub dim: usize,
    pub runs: usize,
    pub seed: u64,
    pub configs: Vec<HybridConfig>,
    pub config_hash: String,
    pub config_json: String,
}

impl Experiment {
    pub fn from_args(args: &RunArgs) -> Result<Self> {
        if args.runs == 0 {
            bail!("--runs must be at least 1");
        }
        if args.dim < 10 {
            bail!("--dim must be at least 10");
        }
        if !(args.budget_scale > 0.0 && args.budget_scale.is_finite()) {
            bail!("--budget-scale must be positive");
        }
        let functions = args.functions.0.clone();
        let params = args.params.resolve(&functions)?;
        let defaults = HybridConfig::default();
        let imhs_iterations = scaled_iterations(defaults.imhs.max_iterations, args.budget_scale);
        let mde_iterations = scaled_iterations(defaults.mde.max_iterations, args.budget_scale);
        let checkpoints: BTreeSet<usize> = args.checkpoints.iter().copied().collect();

        let configs = params
            .iter()
            .map(|&p| {
                let cfg = HybridConfig {
                    population_size: args.population_size,
                    imhs: ImhsParams {
                        max_iterations: imhs_iterations,
                        ..defaults.imhs
                    },
                    mde: MdeParams {
                        np: args.population_size,
                        max_iterations: mde_iterations,
                        ..defaults.mde
                    },
                    outer_iterations: args.outer_iterations,
                    checkpoints: checkpoints.clone(),
                    seed: args.seed,
                }
                .with_params(p);
                cfg.validate()?;
                Ok(cfg)
            })
            .collect::<Result<Vec<_>>>()?;

        let cps: Vec<usize> = checkpoints.iter().copied().collect();
        let fp = Fingerprint {
            dim: args.dim,
            runs: args.runs,
            budget_scale: args.budget_scale,
            population_size: args.population_size,
            outer_iterations: args.outer_iterations,
            imhs_iterations,
            mde_iterations,
            hmcr: [defaults.imhs.hmcr_lo, defaults.imhs.hmcr_hi],
            bandwidth_fraction: defaults.imhs.bandwidth_fraction,
            checkpoints: &cps,
            functions: functions
                .iter()
                .zip(&params)
                .map(|(&function_id, p)| FunctionFingerprint {
                    function_id,
                    par: p.par,
                    cr: p.cr,
                    f: p.f,
                })
                .collect(),
        };
        let config_json = serde_json::to_string_pretty(&fp)?;
        let digest = Sha256::digest(config_json.as_bytes());
        let config_hash = hex::encode(digest)[..16].to_string();
        Ok(Self {
            functions,
            dim: args.dim,
            runs: args.runs,
            seed: args.seed,
            configs,
            config_hash,
            config_json,
        })
    }

    /// FE count at each checkpoint (identical for every function).
    pub fn checkpoint_fes(&self) -> Vec<u64> {
        self.configs[0].checkpoint_fes()
    }

    /// Results column name for a checkpoint FE count.
    pub fn checkpoint_column(&self, fe: u64) -> String {
        if fe == self.configs[0].fe_budget() {
            "fe_final".to_string()
        } else if fe.is_multiple_of(1000) {
            format!("fe_{}k", fe / 1000)
        } else {
            format!("fe_{fe}")
        }
    }
}
