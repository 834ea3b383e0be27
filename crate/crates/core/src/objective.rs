use std::sync::atomic::{AtomicU64, Ordering};

use serde::{Deserialize, Serialize};

use crate::{Result, Scalar};

/// Box constraint shared by every coordinate.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Bounds<T> {
    pub lower: T,
    pub upper: T,
}

impl<T: Scalar> Bounds<T> {
    pub fn new(lower: T, upper: T) -> Self {
        assert!(lower < upper, "empty bounds [{lower}, {upper}]");
        Self { lower, upper }
    }

    #[inline]
    pub fn width(&self) -> T {
        self.upper - self.lower
    }

    #[inline]
    pub fn contains(&self, v: T) -> bool {
        v >= self.lower && v <= self.upper
    }

    #[inline]
    pub fn clamp(&self, v: T) -> T {
        if v < self.lower {
            self.lower
        } else if v > self.upper {
            self.upper
        } else {
            v
        }
    }

    /// Uniform draw in `[lower, upper]`.
    pub fn sample<R: rand::Rng + ?Sized>(&self, rng: &mut R) -> T {
        let u: f64 = rng.random();
        self.clamp(self.lower + self.width() * T::of(u))
    }

    pub fn sample_vec<R: rand::Rng + ?Sized>(&self, dim: usize, rng: &mut R) -> Vec<T> {
        (0..dim).map(|_| self.sample(rng)).collect()
    }

    pub fn contains_all(&self, x: &[T]) -> bool {
        x.iter().all(|&v| self.contains(v))
    }
}

/// A minimization problem over a box.
pub trait Objective<T: Scalar> {
    fn dimension(&self) -> usize;

    fn bounds(&self) -> Bounds<T>;

    fn evaluate(&self, x: &[T]) -> Result<T>;
}

impl<T: Scalar, O: Objective<T> + ?Sized> Objective<T> for &O {
    fn dimension(&self) -> usize {
        (**self).dimension()
    }

    fn bounds(&self) -> Bounds<T> {
        (**self).bounds()
    }

    fn evaluate(&self, x: &[T]) -> Result<T> {
        (**self).evaluate(x)
    }
}

/// Closure-backed objective, mostly for tests and ad-hoc problems.
#[derive(Clone)]
pub struct FnObjective<T, F> {
    dim: usize,
    bounds: Bounds<T>,
    f: F,
}

impl<T: Scalar, F: Fn(&[T]) -> T> FnObjective<T, F> {
    pub fn new(dim: usize, bounds: Bounds<T>, f: F) -> Self {
        Self { dim, bounds, f }
    }
}

impl<T: Scalar, F: Fn(&[T]) -> T> Objective<T> for FnObjective<T, F> {
    fn dimension(&self) -> usize {
        self.dim
    }

    fn bounds(&self) -> Bounds<T> {
        self.bounds
    }

    fn evaluate(&self, x: &[T]) -> Result<T> {
        Ok((self.f)(x))
    }
}

/// Wraps an objective and counts evaluations.
pub struct Counted<O> {
    inner: O,
    count: AtomicU64,
}

impl<O> Counted<O> {
    pub fn new(inner: O) -> Self {
        Self {
            inner,
            count: AtomicU64::new(0),
        }
    }

    pub fn count(&self) -> u64 {
        self.count.load(Ordering::Relaxed)
    }

    pub fn into_inner(self) -> O {
        self.inner
    }
}

impl<T: Scalar, O: Objective<T>> Objective<T> for Counted<O> {
    fn dimension(&self) -> usize {
        self.inner.dimension()
    }

    fn bounds(&self) -> Bounds<T> {
        self.inner.bounds()
    }

    fn evaluate(&self, x: &[T]) -> Result<T> {
        self.count.fetch_add(1, Ordering::Relaxed);
        self.inner.evaluate(x)
    }
}
