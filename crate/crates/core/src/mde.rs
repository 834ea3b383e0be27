//! Differential evolution with worst-member replacement: a trial vector
//! competes against the population's worst member, not against its parent.

use serde::{Deserialize, Serialize};

use crate::objective::{Bounds, Objective};
use crate::population::{Candidate, Population};
use crate::{Error, Result, Scalar};

/// Base vector of the mutation.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
pub enum Strategy {
    /// `a + F (b - c)`
    #[default]
    RandOneBin,
    /// `best + F (b - c)`
    BestOneBin,
}

/// Attempts per coordinate before an out-of-bounds mutant is clamped.
pub const BOUND_RETRIES: usize = 10;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MdeParams {
    pub np: usize,
    pub f: f64,
    pub cr: f64,
    pub max_iterations: usize,
    pub strategy: Strategy,
}

impl Default for MdeParams {
    fn default() -> Self {
        Self {
            np: 200,
            f: 0.5,
            cr: 0.5,
            max_iterations: 100,
            strategy: Strategy::RandOneBin,
        }
    }
}

impl MdeParams {
    /// `F = 0` is accepted; it makes the trial a copy of the base vector.
    pub fn validate(&self) -> Result<()> {
        if self.np < 4 {
            return Err(Error::config(format!(
                "np = {} but at least 4 members are needed",
                self.np
            )));
        }
        if !(0.0..=2.0).contains(&self.f) {
            return Err(Error::config(format!("F = {} outside [0, 2]", self.f)));
        }
        if !(0.0..=1.0).contains(&self.cr) {
            return Err(Error::config(format!("CR = {} outside [0, 1]", self.cr)));
        }
        Ok(())
    }
}

/// Draws `[x, a, b, c]`, pairwise distinct and 0-based, by rejection.
pub fn select_indices<R: rand::Rng + ?Sized>(np: usize, rng: &mut R) -> Result<[usize; 4]> {
    if np < 4 {
        return Err(Error::config(format!(
            "np = {np} but four distinct indices are needed"
        )));
    }
    let x = rng.random_range(0..np);
    let mut a = rng.random_range(0..np);
    while a == x {
        a = rng.random_range(0..np);
    }
    let mut b = rng.random_range(0..np);
    while b == x || b == a {
        b = rng.random_range(0..np);
    }
    let mut c = rng.random_range(0..np);
    while c == x || c == a || c == b {
        c = rng.random_range(0..np);
    }
    Ok([x, a, b, c])
}

/// Builds the trial vector for current member `idx[0]` from donors
/// `idx[1..]`.
pub fn mutate_crossover<T, R>(
    pop: &Population<T>,
    idx: [usize; 4],
    params: &MdeParams,
    bounds: &Bounds<T>,
    rng: &mut R,
) -> Vec<T>
where
    T: Scalar,
    R: rand::Rng + ?Sized,
{
    let [x, a, b, c] = idx;
    let base = match params.strategy {
        Strategy::RandOneBin => a,
        Strategy::BestOneBin => pop.best_index(),
    };
    let (current, base, b, c) = (
        &pop.get(x).x,
        &pop.get(base).x,
        &pop.get(b).x,
        &pop.get(c).x,
    );
    let f = T::of(params.f);
    let i_rand = rng.random_range(0..current.len());
    (0..current.len())
        .map(|k| {
            let mutant = base[k] + f * (b[k] - c[k]);
            if k == i_rand {
                return bounds.clamp(mutant);
            }
            for _ in 0..BOUND_RETRIES {
                if rng.random::<f64>() >= params.cr {
                    return current[k];
                }
                if bounds.contains(mutant) {
                    return mutant;
                }
            }
            bounds.clamp(mutant)
        })
        .collect()
}

/// `params.max_iterations` sweeps of `params.np` trials each.
pub fn mde_run<T, O, R>(
    mut pop: Population<T>,
    params: &MdeParams,
    objective: &O,
    rng: &mut R,
) -> Result<Population<T>>
where
    T: Scalar,
    O: Objective<T> + ?Sized,
    R: rand::Rng + ?Sized,
{
    params.validate()?;
    if pop.len() != params.np {
        return Err(Error::config(format!(
            "population has {} members, np = {}",
            pop.len(),
            params.np
        )));
    }
    let bounds = objective.bounds();
    for _ in 0..params.max_iterations {
        for _ in 0..params.np {
            let idx = select_indices(params.np, rng)?;
            let v = mutate_crossover(&pop, idx, params, &bounds, rng);
            pop.try_replace_worst(Candidate::evaluate(v, objective)?);
        }
    }
    Ok(pop)
}
