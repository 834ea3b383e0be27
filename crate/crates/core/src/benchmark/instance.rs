use std::ops::Range;
use std::sync::atomic::{AtomicU64, Ordering};

use rand::distr::Open01;
use rand::seq::SliceRandom;
use rand::{Rng as _, SeedableRng};
use rand_distr::StandardNormal;

use super::base::BaseFunction;
use super::layout::Layout;
use super::transform::{Rotation, Segment, TransformPipeline};
use super::{Family, FunctionId};
use crate::objective::{Bounds, Objective};
use crate::{Error, Result, Rng, Scalar};

/// A weighted, possibly rotated block of the permuted coordinates.
#[derive(Debug, Clone, PartialEq)]
pub struct Subcomponent {
    pub index_range: Range<usize>,
    pub weight: f64,
    pub rotated: bool,
    pub base: BaseFunction,
}

/// Separable remainder evaluated with weight 1.
#[derive(Debug, Clone, PartialEq)]
pub struct Tail {
    pub index_range: Range<usize>,
    pub base: BaseFunction,
}

/// A fully materialized benchmark objective.
///
/// Segment `i` of the pipeline belongs to subcomponent `i`; when a tail is
/// present it owns the last segment.
#[derive(Debug)]
pub struct BenchmarkInstance<T> {
    function_id: FunctionId,
    bounds: Bounds<T>,
    pipeline: TransformPipeline<T>,
    subcomponents: Vec<Subcomponent>,
    tail: Option<Tail>,
    seed: u64,
    elliptic: Vec<Option<Vec<T>>>,
    eval_count: AtomicU64,
}

impl<T: Scalar> Clone for BenchmarkInstance<T> {
    fn clone(&self) -> Self {
        Self {
            function_id: self.function_id,
            bounds: self.bounds,
            pipeline: self.pipeline.clone(),
            subcomponents: self.subcomponents.clone(),
            tail: self.tail.clone(),
            seed: self.seed,
            elliptic: self.elliptic.clone(),
            eval_count: AtomicU64::new(self.eval_count()),
        }
    }
}

fn instance_rng(function_id: FunctionId, seed: u64) -> Rng {
    // keep streams of different functions with the same seed apart
    let mix = seed ^ (u64::from(function_id.number())).wrapping_mul(0x9E37_79B9_7F4A_7C15);
    Rng::seed_from_u64(mix)
}

/// Builds the instance for `(function_id, dim, seed)`. Identical arguments
/// give bit-identical instance data.
pub fn make_instance<T: Scalar>(
    function_id: FunctionId,
    dim: usize,
    seed: u64,
) -> Result<BenchmarkInstance<T>> {
    let family = function_id.family();
    let layout = Layout::for_family(family, dim)?;
    let base = function_id.base();
    let (lo, hi) = base.bounds();
    let mut rng = instance_rng(function_id, seed);
    // keep the minimizer shift + optimum_coordinate inside the box
    let (lo_o, hi_o) = (lo, hi - base.optimum_coordinate());

    let shift: Vec<T> = (0..dim)
        .map(|_| {
            let u: f64 = rng.sample(Open01);
            T::of(lo_o + (hi_o - lo_o) * u)
        })
        .collect();
    let mut permutation: Vec<usize> = (0..dim).collect();
    permutation.shuffle(&mut rng);

    let weights: Vec<f64> = layout
        .subcomponents
        .iter()
        .map(|_| 10f64.powf(rng.sample::<f64, _>(StandardNormal)))
        .collect();

    let rotated = function_id.rotated();
    let mut segments: Vec<Segment<T>> = layout
        .subcomponents
        .iter()
        .map(|r| Segment {
            range: r.clone(),
            rotation: rotated.then(|| Rotation::random(r.len(), &mut rng)),
            shift: None,
        })
        .collect();

    let mut shift = shift;
    if family == (Family::Overlapping { conflicting: true }) {
        // Each subcomponent gets its own optimum; shared coordinates cannot
        // satisfy both neighbours. The global shift records the first
        // subcomponent's choice for every coordinate.
        let mut claimed = vec![false; dim];
        for seg in &mut segments {
            let own: Vec<T> = (0..seg.range.len())
                .map(|_| {
                    let u: f64 = rng.sample(Open01);
                    T::of(lo_o + (hi_o - lo_o) * u)
                })
                .collect();
            for (k, pos) in seg.range.clone().enumerate() {
                let coord = permutation[pos];
                if !std::mem::replace(&mut claimed[coord], true) {
                    shift[coord] = own[k];
                }
            }
            seg.shift = Some(own);
        }
    }

    let subcomponents: Vec<Subcomponent> = layout
        .subcomponents
        .iter()
        .zip(&weights)
        .map(|(r, &w)| Subcomponent {
            index_range: r.clone(),
            weight: w,
            rotated,
            base,
        })
        .collect();
    let tail = layout.tail.as_ref().map(|r| {
        segments.push(Segment::plain(r.clone()));
        Tail {
            index_range: r.clone(),
            base: function_id.tail_base(),
        }
    });

    let (irregular, beta, alpha) = function_id.transform_settings();
    let pipeline = TransformPipeline::new(shift, permutation, segments, irregular, beta, alpha)?;
    BenchmarkInstance::from_parts(
        function_id,
        Bounds::new(T::of(lo), T::of(hi)),
        pipeline,
        subcomponents,
        tail,
        seed,
    )
}

impl<T: Scalar> BenchmarkInstance<T> {
    /// Assembles an instance from explicit parts. Pipeline segments must be
    /// the subcomponents in order, followed by the tail if present.
    pub fn from_parts(
        function_id: FunctionId,
        bounds: Bounds<T>,
        pipeline: TransformPipeline<T>,
        subcomponents: Vec<Subcomponent>,
        tail: Option<Tail>,
        seed: u64,
    ) -> Result<Self> {
        let segs = pipeline.segments();
        let expected = subcomponents.len() + usize::from(tail.is_some());
        if segs.len() != expected {
            return Err(Error::config(format!(
                "{} pipeline segments for {expected} blocks",
                segs.len()
            )));
        }
        for (s, seg) in subcomponents.iter().zip(segs) {
            if s.index_range != seg.range || s.rotated != seg.rotation.is_some() {
                return Err(Error::config(
                    "subcomponent does not match its pipeline segment",
                ));
            }
            if !(s.weight > 0.0 && s.weight.is_finite()) {
                return Err(Error::config(format!(
                    "subcomponent weight {} must be positive",
                    s.weight
                )));
            }
        }
        if let Some(t) = &tail {
            if segs.last().map(|s| &s.range) != Some(&t.index_range) {
                return Err(Error::config(
                    "tail does not match the last pipeline segment",
                ));
            }
        }
        let bases = subcomponents
            .iter()
            .map(|s| s.base)
            .chain(tail.iter().map(|t| t.base));
        let elliptic = bases
            .zip(segs)
            .map(|(b, seg)| {
                (b == BaseFunction::Elliptic).then(|| elliptic_coefficients(seg.range.len()))
            })
            .collect();
        Ok(Self {
            function_id,
            bounds,
            pipeline,
            subcomponents,
            tail,
            seed,
            elliptic,
            eval_count: AtomicU64::new(0),
        })
    }

    pub fn function_id(&self) -> FunctionId {
        self.function_id
    }

    pub fn dimension(&self) -> usize {
        self.pipeline.dimension()
    }

    pub fn bounds(&self) -> Bounds<T> {
        self.bounds
    }

    pub fn pipeline(&self) -> &TransformPipeline<T> {
        &self.pipeline
    }

    pub fn subcomponents(&self) -> &[Subcomponent] {
        &self.subcomponents
    }

    pub fn tail(&self) -> Option<&Tail> {
        self.tail.as_ref()
    }

    pub fn seed(&self) -> u64 {
        self.seed
    }

    pub fn eval_count(&self) -> u64 {
        self.eval_count.load(Ordering::Relaxed)
    }

    pub fn reset_eval_count(&self) {
        self.eval_count.store(0, Ordering::Relaxed);
    }

    /// Replaces the pipeline (same segment structure required).
    pub fn with_pipeline(&self, pipeline: TransformPipeline<T>) -> Result<Self> {
        Self::from_parts(
            self.function_id,
            self.bounds,
            pipeline,
            self.subcomponents.clone(),
            self.tail.clone(),
            self.seed,
        )
    }

    /// Replaces subcomponent bases and weights, keeping the pipeline.
    pub fn with_subcomponents(&self, subcomponents: Vec<Subcomponent>) -> Result<Self> {
        Self::from_parts(
            self.function_id,
            self.bounds,
            self.pipeline.clone(),
            subcomponents,
            self.tail.clone(),
            self.seed,
        )
    }

    fn block_base(&self, idx: usize) -> (BaseFunction, f64) {
        match self.subcomponents.get(idx) {
            Some(s) => (s.base, s.weight),
            None => {
                let t = self.tail.as_ref().expect("segment index in range");
                (t.base, 1.0)
            }
        }
    }

    fn block_value(&self, idx: usize, x: &[T], z: &mut Vec<T>, scratch: &mut Vec<T>) -> T {
        self.pipeline.segment_into(idx, x, z, scratch);
        let (base, weight) = self.block_base(idx);
        let raw = match &self.elliptic[idx] {
            Some(c) => c
                .iter()
                .zip(z.iter())
                .fold(T::zero(), |acc, (&c, &v)| acc + c * v * v),
            None => base.eval_unchecked(z),
        };
        T::of(weight) * raw
    }

    /// Objective value at `x`; counts one evaluation.
    pub fn evaluate(&self, x: &[T]) -> Result<T> {
        self.pipeline.check_input(x)?;
        self.eval_count.fetch_add(1, Ordering::Relaxed);
        let mut z = Vec::with_capacity(x.len());
        let mut scratch = Vec::new();
        let total = (0..self.pipeline.segments().len()).fold(T::zero(), |acc, i| {
            acc + self.block_value(i, x, &mut z, &mut scratch)
        });
        Ok(total)
    }

    /// Weighted contribution of one block (subcomponent index, or the tail
    /// at index `subcomponents().len()`). Does not count as an evaluation.
    pub fn block_contribution(&self, idx: usize, x: &[T]) -> Result<T> {
        self.pipeline.check_input(x)?;
        if idx >= self.pipeline.segments().len() {
            return Err(Error::domain(format!("no block {idx}")));
        }
        Ok(self.block_value(idx, x, &mut Vec::new(), &mut Vec::new()))
    }

    /// Decision-space coordinates that put block `idx` at its optimum.
    pub fn block_optimum(&self, idx: usize) -> Result<Vec<(usize, T)>> {
        let seg = self
            .pipeline
            .segments()
            .get(idx)
            .ok_or_else(|| Error::domain(format!("no block {idx}")))?;
        let (base, _) = self.block_base(idx);
        let target = vec![T::of(base.optimum_coordinate()); seg.range.len()];
        self.pipeline.invert_segment(idx, &target)
    }

    /// The global minimizer obtained by inverting every block's transform,
    /// or `None` when blocks disagree on a shared coordinate (conflicting
    /// overlap).
    pub fn optimum_preimage(&self) -> Option<Vec<T>> {
        let d = self.dimension();
        let mut x: Vec<Option<T>> = vec![None; d];
        for idx in 0..self.pipeline.segments().len() {
            for (coord, v) in self.block_optimum(idx).ok()? {
                match x[coord] {
                    Some(prev) if (prev - v).abs() > T::of(1e-9) * (T::one() + v.abs()) => {
                        return None
                    }
                    Some(_) => {}
                    None => x[coord] = Some(v),
                }
            }
        }
        x.into_iter().collect()
    }
}

fn elliptic_coefficients<T: Scalar>(dim: usize) -> Vec<T> {
    (0..dim)
        .map(|i| {
            let t = if dim > 1 {
                i as f64 / (dim - 1) as f64
            } else {
                0.0
            };
            T::of(1e6f64.powf(t))
        })
        .collect()
}

impl<T: Scalar> Objective<T> for BenchmarkInstance<T> {
    fn dimension(&self) -> usize {
        BenchmarkInstance::dimension(self)
    }

    fn bounds(&self) -> Bounds<T> {
        self.bounds
    }

    fn evaluate(&self, x: &[T]) -> Result<T> {
        BenchmarkInstance::evaluate(self, x)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn id(n: u8) -> FunctionId {
        FunctionId::new(n).unwrap()
    }

    #[test]
    fn same_seed_same_data() {
        let a: BenchmarkInstance<f64> = make_instance(id(1), 1000, 42).unwrap();
        let b: BenchmarkInstance<f64> = make_instance(id(1), 1000, 42).unwrap();
        assert_eq!(a.pipeline().shift(), b.pipeline().shift());
        assert_eq!(a.pipeline().permutation(), b.pipeline().permutation());
        let c: BenchmarkInstance<f64> = make_instance(id(1), 1000, 43).unwrap();
        assert_ne!(a.pipeline().shift(), c.pipeline().shift());
    }

    #[test]
    fn f15_has_one_block() {
        let inst: BenchmarkInstance<f64> = make_instance(id(15), 50, 7).unwrap();
        assert_eq!(inst.subcomponents().len(), 1);
        assert_eq!(inst.subcomponents()[0].index_range, 0..50);
        assert!(inst.tail().is_none());
    }

    #[test]
    fn f4_partitions_dimension() {
        let inst: BenchmarkInstance<f64> = make_instance(id(4), 1000, 1).unwrap();
        let mut hits = vec![0; 1000];
        for s in inst.subcomponents() {
            s.index_range.clone().for_each(|i| hits[i] += 1);
        }
        inst.tail()
            .unwrap()
            .index_range
            .clone()
            .for_each(|i| hits[i] += 1);
        assert!(hits.iter().all(|&h| h == 1));
    }

    #[test]
    fn shift_inside_bounds() {
        for f in FunctionId::all() {
            let inst: BenchmarkInstance<f64> = make_instance(f, 50, 3).unwrap();
            let b = inst.bounds();
            assert!(
                inst.pipeline()
                    .shift()
                    .iter()
                    .all(|&v| v > b.lower && v < b.upper),
                "{f}"
            );
        }
    }

    #[test]
    fn zero_at_shift_for_f1_and_f15() {
        for n in [1, 15] {
            let inst: BenchmarkInstance<f64> = make_instance(id(n), 100, 11).unwrap();
            let o = inst.pipeline().shift().to_vec();
            assert!(inst.evaluate(&o).unwrap() <= 1e-8);
        }
    }

    #[test]
    fn f12_optimum_is_shift_plus_one() {
        let inst: BenchmarkInstance<f64> = make_instance(id(12), 50, 5).unwrap();
        let x = inst.optimum_preimage().unwrap();
        for (xi, oi) in x.iter().zip(inst.pipeline().shift()) {
            assert!((xi - oi - 1.0).abs() < 1e-12);
        }
        assert!(inst.evaluate(&x).unwrap() <= 1e-6);
    }

    #[test]
    fn f14_has_no_common_optimum_but_each_block_does() {
        let inst: BenchmarkInstance<f64> = make_instance(id(14), 50, 5).unwrap();
        assert!(inst.optimum_preimage().is_none());
        let base = inst.pipeline().shift().to_vec();
        for i in 0..inst.subcomponents().len() {
            let mut x = base.clone();
            for (c, v) in inst.block_optimum(i).unwrap() {
                x[c] = v;
            }
            assert!(inst.block_contribution(i, &x).unwrap() <= 1e-6);
        }
    }

    #[test]
    fn counter_counts_evaluations() {
        let inst: BenchmarkInstance<f64> = make_instance(id(3), 20, 1).unwrap();
        let x = vec![0.5; 20];
        for _ in 0..7 {
            inst.evaluate(&x).unwrap();
        }
        assert_eq!(inst.eval_count(), 7);
        inst.block_contribution(0, &x).ok();
        assert_eq!(inst.eval_count(), 7);
        assert!(inst.evaluate(&x[..5]).is_err());
        assert_eq!(inst.eval_count(), 7);
    }

    #[test]
    fn evaluation_is_deterministic() {
        let inst: BenchmarkInstance<f64> = make_instance(id(9), 60, 2).unwrap();
        let x: Vec<f64> = (0..60).map(|i| (i as f64 * 0.37).sin() * 4.0).collect();
        let a = inst.evaluate(&x).unwrap();
        let b = inst.evaluate(&x).unwrap();
        assert_eq!(a.to_bits(), b.to_bits());
    }

    #[test]
    fn f32_instance_tracks_f64() {
        let a: BenchmarkInstance<f64> = make_instance(id(5), 50, 9).unwrap();
        let b: BenchmarkInstance<f32> = make_instance(id(5), 50, 9).unwrap();
        let x: Vec<f64> = (0..50).map(|i| ((i * 7) % 11) as f64 * 0.4 - 2.0).collect();
        let x32: Vec<f32> = x.iter().map(|&v| v as f32).collect();
        let (va, vb) = (a.evaluate(&x).unwrap(), b.evaluate(&x32).unwrap() as f64);
        assert!((va - vb).abs() <= 1e-3 * va.abs(), "{va} vs {vb}");
    }

    #[test]
    fn too_small_dimension_errors() {
        assert!(make_instance::<f64>(id(4), 20, 1).is_err());
    }
}
