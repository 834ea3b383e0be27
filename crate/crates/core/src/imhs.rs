//! Improved harmony search: HMCR rises linearly over the run, PAR is fixed,
//! and an improvising harmony replaces the worst member only if strictly
//! better.

use std::ops::RangeInclusive;

use crate::objective::{Bounds, Objective};
use crate::population::{Candidate, Population};
use crate::{Error, Result, Scalar};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ImhsParams {
    pub hmcr_lo: f64,
    pub hmcr_hi: f64,
    pub par: f64,
    pub max_iterations: usize,
    /// Pitch-adjust bandwidth as a fraction of the bound width.
    pub bandwidth_fraction: f64,
}

impl Default for ImhsParams {
    fn default() -> Self {
        Self {
            hmcr_lo: 0.7,
            hmcr_hi: 0.9,
            par: 0.4,
            max_iterations: 10_000,
            bandwidth_fraction: 0.01,
        }
    }
}

impl ImhsParams {
    pub fn validate(&self) -> Result<()> {
        let unit = 0.0..=1.0;
        if !(unit.contains(&self.hmcr_lo)
            && unit.contains(&self.hmcr_hi)
            && self.hmcr_lo <= self.hmcr_hi)
        {
            return Err(Error::config(format!(
                "need 0 <= hmcr_lo <= hmcr_hi <= 1, got {} and {}",
                self.hmcr_lo, self.hmcr_hi
            )));
        }
        if !unit.contains(&self.par) {
            return Err(Error::config(format!("par {} outside [0, 1]", self.par)));
        }
        if !(self.bandwidth_fraction > 0.0 && self.bandwidth_fraction <= 1.0) {
            return Err(Error::config(format!(
                "bandwidth_fraction {} outside (0, 1]",
                self.bandwidth_fraction
            )));
        }
        Ok(())
    }
}

/// Linear HMCR at 1-based `iteration` out of `max_iterations`.
pub fn hmcr_schedule(iteration: usize, max_iterations: usize, lo: f64, hi: f64) -> f64 {
    if max_iterations < 2 {
        return lo;
    }
    let it = iteration.clamp(1, max_iterations);
    lo + (hi - lo) * (it - 1) as f64 / (max_iterations - 1) as f64
}

/// Improvises one harmony. Always returns a vector inside `bounds`.
pub fn harmony_update<T, R>(
    memory: &Population<T>,
    hmcr: f64,
    par: f64,
    bandwidth_fraction: f64,
    bounds: &Bounds<T>,
    rng: &mut R,
) -> Vec<T>
where
    T: Scalar,
    R: rand::Rng + ?Sized,
{
    let dim = memory.dimension();
    if rng.random::<f64>() >= hmcr {
        return bounds.sample_vec(dim, rng);
    }
    let picked = &memory.get(rng.random_range(0..memory.len())).x;
    let bw = bandwidth_fraction * bounds.width().as_f64();
    picked
        .iter()
        .map(|&v| {
            if rng.random::<f64>() < par {
                let delta = rng.random_range(-bw..=bw);
                bounds.clamp(v + T::of(delta))
            } else {
                v
            }
        })
        .collect()
}

/// Runs the given 1-based schedule steps of a `params.max_iterations` long
/// schedule. One evaluation per step.
pub fn imhs_steps<T, O, R>(
    mut memory: Population<T>,
    params: &ImhsParams,
    objective: &O,
    rng: &mut R,
    steps: RangeInclusive<usize>,
) -> Result<Population<T>>
where
    T: Scalar,
    O: Objective<T> + ?Sized,
    R: rand::Rng + ?Sized,
{
    params.validate()?;
    let bounds = objective.bounds();
    for it in steps {
        let hmcr = hmcr_schedule(it, params.max_iterations, params.hmcr_lo, params.hmcr_hi);
        let x = harmony_update(
            &memory,
            hmcr,
            params.par,
            params.bandwidth_fraction,
            &bounds,
            rng,
        );
        memory.try_replace_worst(Candidate::evaluate(x, objective)?);
    }
    Ok(memory)
}

/// Exactly `params.max_iterations` improvisations.
pub fn imhs_run<T, O, R>(
    memory: Population<T>,
    params: &ImhsParams,
    objective: &O,
    rng: &mut R,
) -> Result<Population<T>>
where
    T: Scalar,
    O: Objective<T> + ?Sized,
    R: rand::Rng + ?Sized,
{
    imhs_steps(memory, params, objective, rng, 1..=params.max_iterations)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::objective::{Counted, FnObjective};
    use crate::Rng;
    use proptest::prelude::*;
    use rand::SeedableRng;

    fn sphere(d: usize) -> FnObjective<f64, impl Fn(&[f64]) -> f64> {
        FnObjective::new(d, Bounds::new(-100.0, 100.0), |x: &[f64]| {
            x.iter().map(|v| v * v).sum()
        })
    }

    #[test]
    fn schedule_endpoints() {
        assert_eq!(hmcr_schedule(1, 10_000, 0.7, 0.9), 0.7);
        assert!((hmcr_schedule(10_000, 10_000, 0.7, 0.9) - 0.9).abs() < 1e-15);
        assert!((hmcr_schedule(5001, 10_001, 0.7, 0.9) - 0.8).abs() < 1e-15);
        assert_eq!(hmcr_schedule(1, 1, 0.7, 0.9), 0.7);
        assert_eq!(hmcr_schedule(3, 0, 0.7, 0.9), 0.7);
    }

    #[test]
    fn hmcr_zero_draws_fresh_vectors() {
        let obj = sphere(8);
        let mut rng = Rng::seed_from_u64(3);
        let mem = Population::random(&obj, 10, &mut rng).unwrap();
        for _ in 0..100 {
            let x = harmony_update(&mem, 0.0, 1.0, 0.01, &obj.bounds(), &mut rng);
            assert!(mem.members().iter().all(|c| c.x != x));
            assert!(obj.bounds().contains_all(&x));
        }
    }

    #[test]
    fn hmcr_one_par_zero_copies_a_member() {
        let obj = sphere(8);
        let mut rng = Rng::seed_from_u64(4);
        let mem = Population::random(&obj, 10, &mut rng).unwrap();
        for _ in 0..100 {
            let x = harmony_update(&mem, 1.0, 0.0, 0.01, &obj.bounds(), &mut rng);
            assert!(mem.members().iter().any(|c| c.x == x));
        }
    }

    #[test]
    fn pitch_adjustment_stays_within_bandwidth() {
        // one member, so the picked member is known
        let x0: Vec<f64> = vec![10.0, -50.0, 99.5, -99.9, 0.0];
        let mem = Population::new(vec![Candidate {
            x: x0.clone(),
            fitness: 0.0,
        }])
        .unwrap();
        let b = Bounds::new(-100.0, 100.0);
        let mut rng = Rng::seed_from_u64(5);
        let mut max_dev = 0.0f64;
        for _ in 0..10_000 {
            let x = harmony_update(&mem, 1.0, 1.0, 0.01, &b, &mut rng);
            for (a, o) in x.iter().zip(&x0) {
                max_dev = max_dev.max((a - o).abs());
            }
            assert!(b.contains_all(&x));
        }
        assert!(max_dev <= 2.0 && max_dev > 1.9, "{max_dev}");
    }

    #[test]
    fn zero_iterations_is_a_no_op() {
        let obj = Counted::new(sphere(4));
        let mut rng = Rng::seed_from_u64(6);
        let mem = Population::random(&obj, 5, &mut rng).unwrap();
        let params = ImhsParams {
            max_iterations: 0,
            ..Default::default()
        };
        let out = imhs_run(mem.clone(), &params, &obj, &mut rng).unwrap();
        assert_eq!(out, mem);
        assert_eq!(obj.count(), 5);
    }

    #[test]
    fn constant_objective_leaves_memory_unchanged() {
        let obj = FnObjective::new(6, Bounds::new(-1.0, 1.0), |_: &[f64]| 5.0);
        let mut rng = Rng::seed_from_u64(7);
        let mem = Population::random(&obj, 10, &mut rng).unwrap();
        let params = ImhsParams {
            max_iterations: 500,
            ..Default::default()
        };
        assert_eq!(imhs_run(mem.clone(), &params, &obj, &mut rng).unwrap(), mem);
    }

    #[test]
    fn improves_sphere_and_counts_exactly() {
        let obj = Counted::new(sphere(5));
        let mut rng = Rng::seed_from_u64(1);
        let mem = Population::random(&obj, 20, &mut rng).unwrap();
        let initial = mem.best().fitness;
        let params = ImhsParams {
            max_iterations: 2000,
            ..Default::default()
        };
        let out = imhs_run(mem, &params, &obj, &mut rng).unwrap();
        assert!(out.best().fitness < initial);
        assert_eq!(obj.count(), 20 + 2000);
        assert_eq!(out.len(), 20);
    }

    #[test]
    fn rejects_bad_params() {
        for p in [
            ImhsParams {
                hmcr_lo: 0.95,
                ..Default::default()
            },
            ImhsParams {
                par: 1.5,
                ..Default::default()
            },
            ImhsParams {
                bandwidth_fraction: 0.0,
                ..Default::default()
            },
        ] {
            assert!(p.validate().is_err());
        }
    }

    proptest! {
        #[test]
        fn schedule_is_monotone(max in 2usize..5000, a in 1usize..5000, b in 1usize..5000) {
            let (a, b) = (a.min(max), b.min(max));
            let (lo, hi) = (a.min(b), a.max(b));
            prop_assert!(hmcr_schedule(lo, max, 0.7, 0.9) <= hmcr_schedule(hi, max, 0.7, 0.9));
        }

        #[test]
        fn run_keeps_invariants(seed in 0u64..50, iters in 0usize..300) {
            let obj = sphere(3);
            let mut rng = Rng::seed_from_u64(seed);
            let mut mem = Population::random(&obj, 6, &mut rng).unwrap();
            let params = ImhsParams { max_iterations: iters, ..Default::default() };
            let mut best = mem.best().fitness;
            for it in 1..=iters {
                mem = imhs_steps(mem, &params, &obj, &mut rng, it..=it).unwrap();
                prop_assert!(mem.best().fitness <= best);
                best = mem.best().fitness;
                prop_assert!(mem.all_within(&obj.bounds()));
                prop_assert_eq!(mem.len(), 6);
            }
        }
    }
}
