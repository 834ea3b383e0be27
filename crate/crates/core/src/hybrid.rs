//! The IMHS+MDE driver: one population alternates between harmony search
//! and differential evolution for a fixed number of cycles.

use std::collections::{BTreeMap, BTreeSet};
use std::time::{Duration, Instant};

use rand::SeedableRng;
use rayon::prelude::*;

use crate::imhs::{imhs_steps, ImhsParams};
use crate::mde::{mde_run, MdeParams};
use crate::objective::{Counted, Objective};
use crate::params::ParamVector;
use crate::population::{Candidate, Population};
use crate::{Error, Result, Rng, Scalar};

#[derive(Debug, Clone, PartialEq)]
pub struct HybridConfig {
    pub population_size: usize,
    pub imhs: ImhsParams,
    pub mde: MdeParams,
    pub outer_iterations: usize,
    /// 1-based cycle indices after which the best fitness is recorded.
    pub checkpoints: BTreeSet<usize>,
    pub seed: u64,
}

impl Default for HybridConfig {
    fn default() -> Self {
        Self {
            population_size: 200,
            imhs: ImhsParams::default(),
            mde: MdeParams::default(),
            outer_iterations: 100,
            checkpoints: [4, 20, 100].into_iter().collect(),
            seed: 0,
        }
    }
}

impl HybridConfig {
    /// Sets PAR, CR and F from a parameter vector.
    pub fn with_params(mut self, p: ParamVector) -> Self {
        self.imhs.par = p.par;
        self.mde.cr = p.cr;
        self.mde.f = p.f;
        self
    }

    pub fn with_seed(mut self, seed: u64) -> Self {
        self.seed = seed;
        self
    }

    /// Evaluations in one cycle.
    pub fn cycle_fe(&self) -> u64 {
        (self.imhs.max_iterations + self.mde.max_iterations * self.population_size) as u64
    }

    pub fn fe_budget(&self) -> u64 {
        self.outer_iterations as u64 * self.cycle_fe()
    }

    /// FE count at the end of each checkpoint cycle.
    pub fn checkpoint_fes(&self) -> Vec<u64> {
        self.checkpoints
            .iter()
            .map(|&k| k as u64 * self.cycle_fe())
            .collect()
    }

    pub fn validate(&self) -> Result<()> {
        self.imhs.validate()?;
        self.mde.validate()?;
        if self.mde.np != self.population_size {
            return Err(Error::config(format!(
                "MDE np {} differs from population size {}",
                self.mde.np, self.population_size
            )));
        }
        // the initial population is paid for out of the first IMHS phase
        if self.imhs.max_iterations < self.population_size {
            return Err(Error::config(format!(
                "IMHS iterations {} cannot cover the initial population of {}",
                self.imhs.max_iterations, self.population_size
            )));
        }
        if self.outer_iterations == 0 {
            return Err(Error::config("outer_iterations must be positive"));
        }
        if let Some(&k) = self
            .checkpoints
            .iter()
            .find(|&&k| k == 0 || k > self.outer_iterations)
        {
            return Err(Error::config(format!(
                "checkpoint {k} outside 1..={}",
                self.outer_iterations
            )));
        }
        Ok(())
    }
}

pub fn fe_budget(config: &HybridConfig) -> u64 {
    config.fe_budget()
}

#[derive(Debug, Clone)]
pub struct RunResult<T> {
    /// FE count -> best fitness after that many evaluations.
    pub best_at_checkpoint: BTreeMap<u64, T>,
    pub final_best: Candidate<T>,
    pub initial_best: T,
    /// Best fitness after each cycle.
    pub trace: Vec<T>,
    pub seed: u64,
    pub fe_consumed: u64,
    pub wall_time: Duration,
}

/// One seeded run. Consumes exactly `config.fe_budget()` evaluations.
pub fn run<T, O>(objective: &O, config: &HybridConfig) -> Result<RunResult<T>>
where
    T: Scalar,
    O: Objective<T> + ?Sized,
{
    config.validate()?;
    let start = Instant::now();
    let counted = Counted::new(objective);
    let mut rng = Rng::seed_from_u64(config.seed);

    let mut pop = Population::random(&counted, config.population_size, &mut rng)?;
    let initial_best = pop.best().fitness;
    let mut trace = Vec::with_capacity(config.outer_iterations);
    let mut best_at_checkpoint = BTreeMap::new();
    for k in 1..=config.outer_iterations {
        let first_step = if k == 1 {
            config.population_size + 1
        } else {
            1
        };
        pop = imhs_steps(
            pop,
            &config.imhs,
            &counted,
            &mut rng,
            first_step..=config.imhs.max_iterations,
        )?;
        pop = mde_run(pop, &config.mde, &counted, &mut rng)?;
        let best = pop.best().fitness;
        trace.push(best);
        if config.checkpoints.contains(&k) {
            best_at_checkpoint.insert(k as u64 * config.cycle_fe(), best);
        }
    }
    let fe_consumed = counted.count();
    debug_assert_eq!(fe_consumed, config.fe_budget());
    Ok(RunResult {
        best_at_checkpoint,
        final_best: pop.best().clone(),
        initial_best,
        trace,
        seed: config.seed,
        fe_consumed,
        wall_time: start.elapsed(),
    })
}

/// Order statistics of a batch of fitness values.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Summary<T> {
    pub n: usize,
    pub best: T,
    /// The `ceil(n/2)`-th smallest value.
    pub median: T,
    pub worst: T,
    pub mean: T,
    /// Sample standard deviation; 0 for a single value.
    pub stddev: T,
}

impl<T: Scalar> Summary<T> {
    pub fn from_values(values: &[T]) -> Result<Self> {
        if values.is_empty() {
            return Err(Error::domain("summary of an empty batch"));
        }
        let mut v = values.to_vec();
        v.sort_by(|a, b| a.partial_cmp(b).unwrap_or(std::cmp::Ordering::Equal));
        let n = v.len();
        let mean = v.iter().map(|x| x.as_f64()).sum::<f64>() / n as f64;
        let var = if n > 1 {
            v.iter().map(|x| (x.as_f64() - mean).powi(2)).sum::<f64>() / (n - 1) as f64
        } else {
            0.0
        };
        Ok(Self {
            n,
            best: v[0],
            median: v[n.div_ceil(2) - 1],
            worst: v[n - 1],
            mean: T::of(mean),
            stddev: T::of(var.sqrt()),
        })
    }
}

#[derive(Debug, Clone)]
pub struct BatchResult<T> {
    pub runs: Vec<RunResult<T>>,
    /// Over final bests.
    pub summary: Summary<T>,
}

impl<T: Scalar> BatchResult<T> {
    /// Summary over the runs' best values at checkpoint `fe`.
    pub fn summary_at(&self, fe: u64) -> Option<Summary<T>> {
        let values: Option<Vec<T>> = self
            .runs
            .iter()
            .map(|r| r.best_at_checkpoint.get(&fe).copied())
            .collect();
        Summary::from_values(&values?).ok()
    }
}

/// `n_runs` independent runs with seeds `base_seed + i`, in parallel on the
/// current rayon pool. Results are in seed order.
pub fn run_batch<T, O>(
    objective: &O,
    config: &HybridConfig,
    n_runs: usize,
    base_seed: u64,
) -> Result<BatchResult<T>>
where
    T: Scalar,
    O: Objective<T> + Clone + Send + Sync,
{
    if n_runs == 0 {
        return Err(Error::config("n_runs must be at least 1"));
    }
    config.validate()?;
    let runs = (0..n_runs as u64)
        .into_par_iter()
        .map(|i| {
            let own = objective.clone();
            run(&own, &config.clone().with_seed(base_seed.wrapping_add(i)))
        })
        .collect::<Result<Vec<_>>>()?;
    let finals: Vec<T> = runs.iter().map(|r| r.final_best.fitness).collect();
    let summary = Summary::from_values(&finals)?;
    Ok(BatchResult { runs, summary })
}
