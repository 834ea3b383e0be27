//! Hybrid harmony search / differential evolution for large-scale global
//! optimization.
//!
//! The crate bundles four pieces that are used together by the `lsgo`
//! command-line harness:
//!
//! * [`benchmark`]: a seeded, dimension-scalable family of fifteen LSGO
//!   benchmark functions (separable, partially separable, overlapping and
//!   non-separable compositions of six base functions).
//! * [`imhs`], [`mde`] and [`hybrid`]: the improved harmony search, the
//!   worst-replacement differential evolution, and the driver cycling one
//!   shared population between the two.
//! * [`tuner`] and [`params`]: per-function tuning of `(PAR, CR, F)` with a
//!   real-coded GA, plus the bundled specialist parameter table.
//! * [`stats`]: median ranking, Friedman and Quade tests, nBest counts and
//!   Formula-One scoring over an algorithms x functions result table.
//!
//! Numerical code is generic over [`Scalar`] (`f32` or `f64`); the aliases
//! below fix it to `f64`, which is what the harness uses.

pub mod benchmark;
pub mod error;
pub mod hybrid;
pub mod imhs;
pub mod mde;
pub mod objective;
pub mod params;
pub mod population;
pub mod scalar;
pub mod stats;
pub mod tuner;

pub use error::{Error, Result};
pub use scalar::Scalar;

pub use benchmark::{BaseFunction, FunctionId};
pub use objective::{Bounds, Objective};
pub use params::{load_specialist_params, ParamVector};

/// Random generator used for every seeded stream in the crate.
pub type Rng = rand_chacha::ChaCha8Rng;

pub type Instance = benchmark::BenchmarkInstance<f64>;
pub type Instance32 = benchmark::BenchmarkInstance<f32>;
pub type Pipeline = benchmark::TransformPipeline<f64>;
pub type Candidate = population::Candidate<f64>;
pub type Population = population::Population<f64>;
pub type HarmonyMemory = population::Population<f64>;
pub type RunResult = hybrid::RunResult<f64>;
pub type BatchResult = hybrid::BatchResult<f64>;
pub type Summary = hybrid::Summary<f64>;
