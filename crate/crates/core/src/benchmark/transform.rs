//! Input transformations applied before a base function is evaluated.
//!
//! A decision vector `x` becomes the base-function input through
//! `x - o -> permute -> rotate (per segment) -> irregularity -> asymmetry ->
//! conditioning`. Each [`Segment`] is a contiguous slice of the permuted
//! coordinate order and is transformed independently.

use std::ops::Range;

use rand_distr::StandardNormal;

use crate::{Error, Result, Scalar};

/// Oscillating map on the log-magnitude ("irregularity").
#[inline]
pub fn irregularity<T: Scalar>(v: T) -> T {
    if v == T::zero() {
        return v;
    }
    let h = v.abs().ln();
    let (c1, c2) = if v > T::zero() {
        (10.0, 7.9)
    } else {
        (5.5, 3.1)
    };
    let g = h + T::of(0.049) * ((T::of(c1) * h).sin() + (T::of(c2) * h).sin());
    v.signum() * g.exp()
}

/// Inverse of [`irregularity`]. The map is strictly increasing, the inner
/// log-domain perturbation is bounded by 0.098, so bisection on that window
/// converges.
pub fn irregularity_inverse<T: Scalar>(y: T) -> T {
    let y64 = y.as_f64();
    if y64 == 0.0 {
        return y;
    }
    let (c1, c2) = if y64 > 0.0 { (10.0, 7.9) } else { (5.5, 3.1) };
    let target = y64.abs().ln();
    let g = |u: f64| u + 0.049 * ((c1 * u).sin() + (c2 * u).sin());
    let (mut lo, mut hi) = (target - 0.1, target + 0.1);
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if g(mid) < target {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    T::of(y64.signum() * (0.5 * (lo + hi)).exp())
}

/// Per-coordinate asymmetry exponents `beta * (i-1)/(D-1)`.
pub fn asymmetry_factors<T: Scalar>(dim: usize, beta: f64) -> Vec<T> {
    (0..dim)
        .map(|i| {
            let t = if dim > 1 {
                i as f64 / (dim - 1) as f64
            } else {
                0.0
            };
            T::of(beta * t)
        })
        .collect()
}

/// Symmetry-breaking map `v^(1 + factor * sqrt(v))` for positive `v`.
#[inline]
pub fn asymmetry<T: Scalar>(v: T, factor: T) -> T {
    if v > T::zero() {
        v.powf(T::one() + factor * v.sqrt())
    } else {
        v
    }
}

pub fn asymmetry_inverse<T: Scalar>(y: T, factor: T) -> T {
    if y <= T::zero() || factor == T::zero() {
        return y;
    }
    let (y, c) = (y.as_f64(), factor.as_f64());
    let f = |v: f64| v.powf(1.0 + c * v.sqrt());
    let (mut lo, mut hi) = if y >= 1.0 { (1.0, y) } else { (0.0, 1.0) };
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if f(mid) < y {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    T::of(0.5 * (lo + hi))
}

/// Diagonal of the ill-conditioning matrix: `alpha^(0.5 (i-1)/(D-1))`.
pub fn conditioning_diagonal<T: Scalar>(dim: usize, alpha: f64) -> Vec<T> {
    (0..dim)
        .map(|i| {
            let t = if dim > 1 {
                i as f64 / (dim - 1) as f64
            } else {
                0.0
            };
            T::of(alpha.powf(0.5 * t))
        })
        .collect()
}

/// Square orthogonal matrix, row-major.
#[derive(Debug, Clone, PartialEq)]
pub struct Rotation<T> {
    n: usize,
    data: Vec<T>,
}

impl<T: Scalar> Rotation<T> {
    pub fn from_rows(n: usize, data: Vec<T>) -> Result<Self> {
        if data.len() != n * n {
            return Err(Error::domain(format!(
                "rotation of order {n} needs {} entries, got {}",
                n * n,
                data.len()
            )));
        }
        Ok(Self { n, data })
    }

    pub fn identity(n: usize) -> Self {
        let mut data = vec![T::zero(); n * n];
        for i in 0..n {
            data[i * n + i] = T::one();
        }
        Self { n, data }
    }

    /// Orthonormalizes a standard Gaussian matrix (modified Gram-Schmidt,
    /// two passes) drawn from `rng`. Computed in `f64` regardless of `T`.
    pub fn random<R: rand::Rng + ?Sized>(n: usize, rng: &mut R) -> Self {
        let mut rows: Vec<Vec<f64>> = (0..n)
            .map(|_| {
                (0..n)
                    .map(|_| rng.sample::<f64, _>(StandardNormal))
                    .collect()
            })
            .collect();
        for i in 0..n {
            for _pass in 0..2 {
                for j in 0..i {
                    let (done, rest) = rows.split_at_mut(i);
                    let q = &done[j];
                    let r = &mut rest[0];
                    let dot: f64 = q.iter().zip(r.iter()).map(|(a, b)| a * b).sum();
                    r.iter_mut().zip(q).for_each(|(v, qv)| *v -= dot * qv);
                }
            }
            let norm = rows[i].iter().map(|v| v * v).sum::<f64>().sqrt();
            rows[i].iter_mut().for_each(|v| *v /= norm);
        }
        Self {
            n,
            data: rows.into_iter().flatten().map(T::of).collect(),
        }
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn rows(&self) -> impl Iterator<Item = &[T]> {
        self.data.chunks(self.n)
    }

    /// `out = R v`
    pub fn apply(&self, v: &[T], out: &mut [T]) {
        for (o, row) in out.iter_mut().zip(self.data.chunks(self.n)) {
            *o = row
                .iter()
                .zip(v)
                .fold(T::zero(), |acc, (&a, &b)| acc + a * b);
        }
    }

    /// `out = R^T v`
    pub fn apply_transpose(&self, v: &[T], out: &mut [T]) {
        out.iter_mut().for_each(|o| *o = T::zero());
        for (row, &vi) in self.data.chunks(self.n).zip(v) {
            for (o, &a) in out.iter_mut().zip(row) {
                *o = *o + a * vi;
            }
        }
    }

    /// `max |R^T R - I|`, evaluated in `f64`.
    pub fn orthogonality_error(&self) -> f64 {
        let n = self.n;
        let mut worst = 0.0f64;
        for i in 0..n {
            for j in i..n {
                let dot: f64 = (0..n)
                    .map(|k| self.data[k * n + i].as_f64() * self.data[k * n + j].as_f64())
                    .sum();
                let target = if i == j { 1.0 } else { 0.0 };
                worst = worst.max((dot - target).abs());
            }
        }
        worst
    }
}

/// One independently transformed slice of the permuted coordinate order.
#[derive(Debug, Clone)]
pub struct Segment<T> {
    /// Positions in the permuted order.
    pub range: Range<usize>,
    pub rotation: Option<Rotation<T>>,
    /// Segment-local shift replacing the global one (conflicting overlap).
    pub shift: Option<Vec<T>>,
}

impl<T> Segment<T> {
    pub fn plain(range: Range<usize>) -> Self {
        Self {
            range,
            rotation: None,
            shift: None,
        }
    }
}

#[derive(Debug, Clone)]
struct SegmentCache<T> {
    asymmetry: Vec<T>,
    conditioning: Vec<T>,
}

/// Shift, permutation, per-segment rotations and the elementwise maps.
#[derive(Debug, Clone)]
pub struct TransformPipeline<T> {
    shift: Vec<T>,
    permutation: Vec<usize>,
    segments: Vec<Segment<T>>,
    irregularity: bool,
    asymmetry_beta: f64,
    conditioning_alpha: f64,
    cache: Vec<SegmentCache<T>>,
}

impl<T: Scalar> TransformPipeline<T> {
    pub fn new(
        shift: Vec<T>,
        permutation: Vec<usize>,
        segments: Vec<Segment<T>>,
        irregularity: bool,
        asymmetry_beta: f64,
        conditioning_alpha: f64,
    ) -> Result<Self> {
        let d = shift.len();
        if permutation.len() != d {
            return Err(Error::domain(format!(
                "permutation length {} != dimension {d}",
                permutation.len()
            )));
        }
        let mut seen = vec![false; d];
        for &p in &permutation {
            if p >= d || std::mem::replace(&mut seen[p], true) {
                return Err(Error::domain("permutation is not a bijection"));
            }
        }
        if !(asymmetry_beta >= 0.0) || !(conditioning_alpha >= 1.0) {
            return Err(Error::domain(format!(
                "need beta >= 0 and alpha >= 1, got {asymmetry_beta} and {conditioning_alpha}"
            )));
        }
        for (i, s) in segments.iter().enumerate() {
            let len = s.range.len();
            if s.range.end > d || len == 0 {
                return Err(Error::domain(format!(
                    "segment {i} range {:?} invalid for D={d}",
                    s.range
                )));
            }
            if s.rotation.as_ref().is_some_and(|r| r.dim() != len) {
                return Err(Error::domain(format!(
                    "segment {i} rotation order != {len}"
                )));
            }
            if s.shift.as_ref().is_some_and(|o| o.len() != len) {
                return Err(Error::domain(format!("segment {i} shift length != {len}")));
            }
        }
        let cache = segments
            .iter()
            .map(|s| SegmentCache {
                asymmetry: asymmetry_factors(s.range.len(), asymmetry_beta),
                conditioning: conditioning_diagonal(s.range.len(), conditioning_alpha),
            })
            .collect();
        Ok(Self {
            shift,
            permutation,
            segments,
            irregularity,
            asymmetry_beta,
            conditioning_alpha,
            cache,
        })
    }

    /// Zero shift, identity permutation, one unrotated segment, maps off.
    pub fn identity(dim: usize) -> Self {
        Self::new(
            vec![T::zero(); dim],
            (0..dim).collect(),
            vec![Segment::plain(0..dim)],
            false,
            0.0,
            1.0,
        )
        .expect("identity pipeline is valid")
    }

    pub fn dimension(&self) -> usize {
        self.shift.len()
    }

    pub fn shift(&self) -> &[T] {
        &self.shift
    }

    pub fn permutation(&self) -> &[usize] {
        &self.permutation
    }

    pub fn segments(&self) -> &[Segment<T>] {
        &self.segments
    }

    pub fn irregularity_enabled(&self) -> bool {
        self.irregularity
    }

    pub fn asymmetry_beta(&self) -> f64 {
        self.asymmetry_beta
    }

    pub fn conditioning_alpha(&self) -> f64 {
        self.conditioning_alpha
    }

    /// Rebuilds the pipeline with a new shift and permutation, keeping
    /// segments and maps.
    pub fn with_shift_and_permutation(
        &self,
        shift: Vec<T>,
        permutation: Vec<usize>,
    ) -> Result<Self> {
        Self::new(
            shift,
            permutation,
            self.segments.clone(),
            self.irregularity,
            self.asymmetry_beta,
            self.conditioning_alpha,
        )
    }

    /// Same pipeline with every rotation dropped.
    pub fn without_rotations(&self) -> Self {
        let mut segments = self.segments.clone();
        segments.iter_mut().for_each(|s| s.rotation = None);
        Self {
            segments,
            ..self.clone()
        }
    }

    /// Transforms `x` and returns the concatenation of all segment outputs,
    /// in segment order.
    pub fn apply(&self, x: &[T]) -> Result<Vec<T>> {
        self.check_input(x)?;
        let total = self.segments.iter().map(|s| s.range.len()).sum();
        let mut out = Vec::with_capacity(total);
        let mut scratch = Vec::new();
        for i in 0..self.segments.len() {
            let mut buf = Vec::new();
            self.segment_into(i, x, &mut buf, &mut scratch);
            out.extend_from_slice(&buf);
        }
        Ok(out)
    }

    pub(crate) fn check_input(&self, x: &[T]) -> Result<()> {
        if x.len() != self.dimension() {
            return Err(Error::domain(format!(
                "input length {} != dimension {}",
                x.len(),
                self.dimension()
            )));
        }
        if let Some(i) = x.iter().position(|v| !v.is_finite()) {
            return Err(Error::domain(format!("non-finite coordinate at index {i}")));
        }
        Ok(())
    }

    /// Writes the transformed segment `idx` of `x` into `out`.
    pub(crate) fn segment_into(&self, idx: usize, x: &[T], out: &mut Vec<T>, scratch: &mut Vec<T>) {
        let seg = &self.segments[idx];
        let perm = &self.permutation[seg.range.clone()];
        out.clear();
        match &seg.shift {
            Some(o) => out.extend(perm.iter().zip(o).map(|(&p, &s)| x[p] - s)),
            None => out.extend(perm.iter().map(|&p| x[p] - self.shift[p])),
        }
        if let Some(r) = &seg.rotation {
            scratch.clear();
            scratch.resize(out.len(), T::zero());
            r.apply(out, scratch);
            std::mem::swap(out, scratch);
        }
        let cache = &self.cache[idx];
        if self.irregularity {
            out.iter_mut().for_each(|v| *v = irregularity(*v));
        }
        if self.asymmetry_beta > 0.0 {
            out.iter_mut()
                .zip(&cache.asymmetry)
                .for_each(|(v, &f)| *v = asymmetry(*v, f));
        }
        if self.conditioning_alpha != 1.0 {
            out.iter_mut()
                .zip(&cache.conditioning)
                .for_each(|(v, &c)| *v = *v * c);
        }
    }

    /// Maps a segment output `z` back to decision-space coordinates.
    /// Returns `(coordinate, value)` pairs for the coordinates the segment
    /// reads.
    pub fn invert_segment(&self, idx: usize, z: &[T]) -> Result<Vec<(usize, T)>> {
        let seg = &self.segments[idx];
        if z.len() != seg.range.len() {
            return Err(Error::domain("segment output length mismatch"));
        }
        let cache = &self.cache[idx];
        let mut v: Vec<T> = z.to_vec();
        if self.conditioning_alpha != 1.0 {
            v.iter_mut()
                .zip(&cache.conditioning)
                .for_each(|(v, &c)| *v = *v / c);
        }
        if self.asymmetry_beta > 0.0 {
            v.iter_mut()
                .zip(&cache.asymmetry)
                .for_each(|(v, &f)| *v = asymmetry_inverse(*v, f));
        }
        if self.irregularity {
            v.iter_mut().for_each(|v| *v = irregularity_inverse(*v));
        }
        if let Some(r) = &seg.rotation {
            let mut back = vec![T::zero(); v.len()];
            r.apply_transpose(&v, &mut back);
            v = back;
        }
        let perm = &self.permutation[seg.range.clone()];
        Ok(perm
            .iter()
            .enumerate()
            .map(|(k, &p)| {
                let s = seg.shift.as_ref().map_or(self.shift[p], |o| o[k]);
                (p, v[k] + s)
            })
            .collect())
    }
}
