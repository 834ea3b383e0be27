//! Shared population handed back and forth between the two search phases.

use crate::objective::{Bounds, Objective};
use crate::{Error, Result, Scalar};

#[derive(Debug, Clone, PartialEq)]
pub struct Candidate<T> {
    pub x: Vec<T>,
    pub fitness: T,
}

impl<T: Scalar> Candidate<T> {
    pub fn evaluate<O: Objective<T> + ?Sized>(x: Vec<T>, objective: &O) -> Result<Self> {
        let fitness = objective.evaluate(&x)?;
        Ok(Self { x, fitness })
    }
}

/// Fixed-size collection of candidates that tracks its worst member.
///
/// Harmony memory and the DE population are the same object.
#[derive(Debug, Clone, PartialEq)]
pub struct Population<T> {
    members: Vec<Candidate<T>>,
    worst: usize,
}

fn argmax<T: Scalar>(members: &[Candidate<T>]) -> usize {
    let mut worst = 0;
    for (i, c) in members.iter().enumerate().skip(1) {
        if c.fitness > members[worst].fitness {
            worst = i;
        }
    }
    worst
}

impl<T: Scalar> Population<T> {
    pub fn new(members: Vec<Candidate<T>>) -> Result<Self> {
        if members.is_empty() {
            return Err(Error::config("population must not be empty"));
        }
        let dim = members[0].x.len();
        if members.iter().any(|c| c.x.len() != dim) {
            return Err(Error::config("population members differ in dimension"));
        }
        let worst = argmax(&members);
        Ok(Self { members, worst })
    }

    /// Uniform initialization in the objective's bounds; costs `size`
    /// evaluations.
    pub fn random<O, R>(objective: &O, size: usize, rng: &mut R) -> Result<Self>
    where
        O: Objective<T> + ?Sized,
        R: rand::Rng + ?Sized,
    {
        let bounds = objective.bounds();
        let dim = objective.dimension();
        let members = (0..size)
            .map(|_| Candidate::evaluate(bounds.sample_vec(dim, rng), objective))
            .collect::<Result<Vec<_>>>()?;
        Self::new(members)
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn dimension(&self) -> usize {
        self.members[0].x.len()
    }

    pub fn members(&self) -> &[Candidate<T>] {
        &self.members
    }

    pub fn get(&self, i: usize) -> &Candidate<T> {
        &self.members[i]
    }

    pub fn worst_index(&self) -> usize {
        self.worst
    }

    pub fn worst(&self) -> &Candidate<T> {
        &self.members[self.worst]
    }

    /// Lowest index among members with minimal fitness.
    pub fn best_index(&self) -> usize {
        let mut best = 0;
        for (i, c) in self.members.iter().enumerate().skip(1) {
            if c.fitness < self.members[best].fitness {
                best = i;
            }
        }
        best
    }

    pub fn best(&self) -> &Candidate<T> {
        &self.members[self.best_index()]
    }

    /// Replaces the worst member if `candidate` is strictly better.
    pub fn try_replace_worst(&mut self, candidate: Candidate<T>) -> bool {
        if candidate.fitness < self.members[self.worst].fitness {
            self.members[self.worst] = candidate;
            self.worst = argmax(&self.members);
            true
        } else {
            false
        }
    }

    pub fn all_within(&self, bounds: &Bounds<T>) -> bool {
        self.members.iter().all(|c| bounds.contains_all(&c.x))
    }

    pub fn into_members(self) -> Vec<Candidate<T>> {
        self.members
    }
}
