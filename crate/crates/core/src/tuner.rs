//! Real-coded GA over `(PAR, CR, F)`; each individual is scored by the mean
//! final best of short hybrid runs.

use std::collections::BTreeSet;

use rand::{Rng as _, SeedableRng};
use rand_distr::{Distribution, Normal};
use rayon::prelude::*;

use crate::hybrid::{run, HybridConfig};
use crate::imhs::ImhsParams;
use crate::mde::MdeParams;
use crate::objective::Objective;
use crate::params::ParamVector;
use crate::{Error, Result, Rng, Scalar};

pub const TOURNAMENT_SIZE: usize = 2;
pub const BLX_ALPHA: f64 = 0.5;
pub const MUTATION_RATE: f64 = 0.1;
/// Mutation standard deviation as a fraction of each gene's range.
pub const MUTATION_SIGMA: f64 = 0.05;

#[derive(Debug, Clone, PartialEq)]
pub struct TunerConfig {
    pub ga_population: usize,
    pub ga_generations: usize,
    /// Evaluations per probe run.
    pub inner_budget: u64,
    pub probes_per_eval: usize,
    /// Hybrid population size used by probes.
    pub population_size: usize,
    pub seed: u64,
}

impl Default for TunerConfig {
    fn default() -> Self {
        Self {
            ga_population: 10,
            ga_generations: 10,
            inner_budget: 30_000,
            probes_per_eval: 3,
            population_size: 200,
            seed: 0,
        }
    }
}

impl TunerConfig {
    /// Single-cycle hybrid configuration spending exactly `inner_budget`
    /// evaluations, one third in IMHS and two thirds in MDE.
    pub fn probe_config(&self, params: ParamVector, seed: u64) -> Result<HybridConfig> {
        let pop = self.population_size;
        let budget = self.inner_budget as usize;
        let mde_iters = ((2.0 * budget as f64) / (3.0 * pop as f64))
            .round()
            .max(1.0) as usize;
        let imhs_iters = budget
            .checked_sub(mde_iters * pop)
            .filter(|&n| n >= pop)
            .ok_or_else(|| {
                Error::config(format!(
                    "inner budget {budget} too small for a population of {pop}"
                ))
            })?;
        let cfg = HybridConfig {
            population_size: pop,
            imhs: ImhsParams {
                max_iterations: imhs_iters,
                ..Default::default()
            },
            mde: MdeParams {
                np: pop,
                max_iterations: mde_iters,
                ..Default::default()
            },
            outer_iterations: 1,
            checkpoints: BTreeSet::from([1]),
            seed,
        }
        .with_params(params);
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn validate(&self) -> Result<()> {
        if self.ga_population == 0 || self.probes_per_eval == 0 {
            return Err(Error::config(
                "ga_population and probes_per_eval must be positive",
            ));
        }
        self.probe_config(
            ParamVector {
                par: 0.4,
                cr: 0.5,
                f: 0.5,
            },
            0,
        )
        .map(|_| ())
    }
}

/// One scored individual.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Scored {
    pub params: ParamVector,
    pub fitness: f64,
}

#[derive(Debug, Clone)]
pub struct TuneOutcome {
    pub best: ParamVector,
    pub fitness: f64,
    /// Objective evaluations spent across all probes.
    pub evaluations: u64,
    /// Every scored individual, in evaluation order.
    pub history: Vec<Scored>,
}

fn random_individual(rng: &mut Rng) -> ParamVector {
    let mut a = [0.0; 3];
    for (i, g) in a.iter_mut().enumerate() {
        *g = rng.random_range(ParamVector::LOWER[i]..=ParamVector::UPPER[i]);
    }
    ParamVector::from_array_clamped(a)
}

fn tournament<'a>(pop: &'a [Scored], rng: &mut Rng) -> &'a Scored {
    let mut best = &pop[rng.random_range(0..pop.len())];
    for _ in 1..TOURNAMENT_SIZE {
        let c = &pop[rng.random_range(0..pop.len())];
        if c.fitness < best.fitness {
            best = c;
        }
    }
    best
}

fn offspring(a: ParamVector, b: ParamVector, rng: &mut Rng) -> ParamVector {
    let (a, b) = (a.to_array(), b.to_array());
    let mut child = [0.0; 3];
    for i in 0..3 {
        let (lo, hi) = (a[i].min(b[i]), a[i].max(b[i]));
        let d = hi - lo;
        let mut g = if d > 0.0 {
            rng.random_range(lo - BLX_ALPHA * d..=hi + BLX_ALPHA * d)
        } else {
            lo
        };
        if rng.random::<f64>() < MUTATION_RATE {
            let sigma = MUTATION_SIGMA * (ParamVector::UPPER[i] - ParamVector::LOWER[i]);
            g += Normal::new(0.0, sigma).expect("positive sigma").sample(rng);
        }
        child[i] = g;
    }
    ParamVector::from_array_clamped(child)
}

/// Tunes `(PAR, CR, F)` for `objective`. Deterministic given `config.seed`.
pub fn tune<T, O>(objective: &O, config: &TunerConfig) -> Result<TuneOutcome>
where
    T: Scalar,
    O: Objective<T> + Clone + Send + Sync,
{
    config.validate()?;
    let mut rng = Rng::seed_from_u64(config.seed);
    let mut history = Vec::new();
    let mut evaluations = 0u64;

    // probe seeds are drawn up front so scoring can run in parallel
    let mut score = |batch: Vec<ParamVector>, rng: &mut Rng| -> Result<Vec<Scored>> {
        let seeded: Vec<(ParamVector, Vec<u64>)> = batch
            .into_iter()
            .map(|p| {
                (
                    p,
                    (0..config.probes_per_eval).map(|_| rng.random()).collect(),
                )
            })
            .collect();
        let scored = seeded
            .into_par_iter()
            .map(|(params, seeds)| {
                let mut total = 0.0;
                for s in seeds {
                    let own = objective.clone();
                    total += run(&own, &config.probe_config(params, s)?)?
                        .final_best
                        .fitness
                        .as_f64();
                }
                Ok(Scored {
                    params,
                    fitness: total / config.probes_per_eval as f64,
                })
            })
            .collect::<Result<Vec<_>>>()?;
        evaluations += scored.len() as u64 * config.probes_per_eval as u64 * config.inner_budget;
        history.extend_from_slice(&scored);
        Ok(scored)
    };

    let initial: Vec<ParamVector> = (0..config.ga_population)
        .map(|_| random_individual(&mut rng))
        .collect();
    let mut pop = score(initial, &mut rng)?;
    for _ in 0..config.ga_generations {
        let elite = *best_of(&pop);
        let children: Vec<ParamVector> = (1..config.ga_population)
            .map(|_| {
                let a = tournament(&pop, &mut rng).params;
                let b = tournament(&pop, &mut rng).params;
                offspring(a, b, &mut rng)
            })
            .collect();
        let mut next = vec![elite];
        next.extend(score(children, &mut rng)?);
        pop = next;
    }
    let best = *best_of(&pop);
    Ok(TuneOutcome {
        best: best.params,
        fitness: best.fitness,
        evaluations,
        history,
    })
}

/// First individual with the lowest fitness.
fn best_of(pop: &[Scored]) -> &Scored {
    pop.iter()
        .fold(&pop[0], |b, c| if c.fitness < b.fitness { c } else { b })
}
