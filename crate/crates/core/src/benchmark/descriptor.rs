//! JSON-serializable description of a benchmark instance.
//!
//! Shift vectors travel as base-64 little-endian `f64`, permutations as
//! base-64 little-endian `u32`. Rotation matrices are not stored; they are
//! regenerated from `(function_id, dimension, seed)`.

use std::ops::Range;

use base64::engine::general_purpose::STANDARD as B64;
use base64::Engine as _;
use serde::{Deserialize, Serialize};

use super::base::BaseFunction;
use super::instance::{make_instance, BenchmarkInstance, Subcomponent};
use super::transform::{Segment, TransformPipeline};
use super::FunctionId;
use crate::{Error, Result, Scalar};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TransformsDescriptor {
    pub irregularity: bool,
    pub asymmetry_beta: f64,
    pub conditioning_alpha: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SubcomponentDescriptor {
    /// First position in the permuted order (0-based).
    pub start: usize,
    pub len: usize,
    pub weight: f64,
    pub rotated: bool,
    pub base: BaseFunction,
    /// Segment-local shift, only for conflicting overlap.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub shift_b64: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TailDescriptor {
    pub start: usize,
    pub len: usize,
    pub base: BaseFunction,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct InstanceDescriptor {
    pub function_id: FunctionId,
    #[serde(rename = "D")]
    pub dimension: usize,
    pub seed: u64,
    pub bounds: [f64; 2],
    pub transforms: TransformsDescriptor,
    pub subcomponents: Vec<SubcomponentDescriptor>,
    pub tail: Option<TailDescriptor>,
    pub shift_b64: String,
    pub permutation_b64: String,
}

fn encode_f64<T: Scalar>(v: &[T]) -> String {
    let bytes: Vec<u8> = v.iter().flat_map(|x| x.as_f64().to_le_bytes()).collect();
    B64.encode(bytes)
}

fn decode_f64<T: Scalar>(s: &str, len: usize, what: &str) -> Result<Vec<T>> {
    let bytes = B64
        .decode(s)
        .map_err(|e| Error::Parse(format!("{what}: {e}")))?;
    if bytes.len() != 8 * len {
        return Err(Error::Parse(format!(
            "{what}: {} bytes, expected {}",
            bytes.len(),
            8 * len
        )));
    }
    Ok(bytes
        .chunks_exact(8)
        .map(|c| T::of(f64::from_le_bytes(c.try_into().expect("chunk of 8"))))
        .collect())
}

fn encode_u32(v: &[usize]) -> String {
    let bytes: Vec<u8> = v.iter().flat_map(|&p| (p as u32).to_le_bytes()).collect();
    B64.encode(bytes)
}

fn decode_u32(s: &str, len: usize) -> Result<Vec<usize>> {
    let bytes = B64
        .decode(s)
        .map_err(|e| Error::Parse(format!("permutation: {e}")))?;
    if bytes.len() != 4 * len {
        return Err(Error::Parse(format!(
            "permutation: {} bytes, expected {}",
            bytes.len(),
            4 * len
        )));
    }
    Ok(bytes
        .chunks_exact(4)
        .map(|c| u32::from_le_bytes(c.try_into().expect("chunk of 4")) as usize)
        .collect())
}

fn range_of(start: usize, len: usize) -> Range<usize> {
    start..start + len
}

impl InstanceDescriptor {
    pub fn from_instance<T: Scalar>(inst: &BenchmarkInstance<T>) -> Self {
        let p = inst.pipeline();
        let b = inst.bounds();
        let subcomponents = inst
            .subcomponents()
            .iter()
            .zip(p.segments())
            .map(|(s, seg)| SubcomponentDescriptor {
                start: s.index_range.start,
                len: s.index_range.len(),
                weight: s.weight,
                rotated: s.rotated,
                base: s.base,
                shift_b64: seg.shift.as_deref().map(encode_f64),
            })
            .collect();
        Self {
            function_id: inst.function_id(),
            dimension: inst.dimension(),
            seed: inst.seed(),
            bounds: [b.lower.as_f64(), b.upper.as_f64()],
            transforms: TransformsDescriptor {
                irregularity: p.irregularity_enabled(),
                asymmetry_beta: p.asymmetry_beta(),
                conditioning_alpha: p.conditioning_alpha(),
            },
            subcomponents,
            tail: inst.tail().map(|t| TailDescriptor {
                start: t.index_range.start,
                len: t.index_range.len(),
                base: t.base,
            }),
            shift_b64: encode_f64(p.shift()),
            permutation_b64: encode_u32(p.permutation()),
        }
    }

    /// Rebuilds the instance: regenerates it from the seed, checks that the
    /// layout and transforms agree, then applies the stored shift,
    /// permutation and weights.
    pub fn to_instance<T: Scalar>(&self) -> Result<BenchmarkInstance<T>> {
        let fresh: BenchmarkInstance<T> =
            make_instance(self.function_id, self.dimension, self.seed)?;
        let p = fresh.pipeline();
        let t = &self.transforms;
        if t.irregularity != p.irregularity_enabled()
            || t.asymmetry_beta != p.asymmetry_beta()
            || t.conditioning_alpha != p.conditioning_alpha()
        {
            return Err(Error::Parse(format!(
                "transform settings do not match {}",
                self.function_id
            )));
        }
        let b = fresh.bounds();
        if self.bounds != [b.lower.as_f64(), b.upper.as_f64()] {
            return Err(Error::Parse("bounds do not match the function".into()));
        }
        if self.subcomponents.len() != fresh.subcomponents().len() {
            return Err(Error::Parse(
                "subcomponent count does not match the layout".into(),
            ));
        }
        let tail_range = self.tail.as_ref().map(|t| range_of(t.start, t.len));
        if tail_range.as_ref() != fresh.tail().map(|t| &t.index_range) {
            return Err(Error::Parse("tail does not match the layout".into()));
        }

        let mut segments: Vec<Segment<T>> = p.segments().to_vec();
        let mut subs = Vec::with_capacity(self.subcomponents.len());
        for (i, (d, s)) in self
            .subcomponents
            .iter()
            .zip(fresh.subcomponents())
            .enumerate()
        {
            let range = range_of(d.start, d.len);
            if range != s.index_range || d.rotated != s.rotated || d.base != s.base {
                return Err(Error::Parse(format!(
                    "subcomponent {i} does not match the layout"
                )));
            }
            if let Some(enc) = &d.shift_b64 {
                segments[i].shift = Some(decode_f64(enc, d.len, "subcomponent shift")?);
            }
            subs.push(Subcomponent {
                weight: d.weight,
                ..s.clone()
            });
        }
        let shift = decode_f64(&self.shift_b64, self.dimension, "shift")?;
        let permutation = decode_u32(&self.permutation_b64, self.dimension)?;
        let pipeline = TransformPipeline::new(
            shift,
            permutation,
            segments,
            p.irregularity_enabled(),
            p.asymmetry_beta(),
            p.conditioning_alpha(),
        )?;
        fresh.with_pipeline(pipeline)?.with_subcomponents(subs)
    }

    pub fn to_json(&self) -> Result<String> {
        Ok(serde_json::to_string_pretty(self)?)
    }

    pub fn from_json(s: &str) -> Result<Self> {
        Ok(serde_json::from_str(s)?)
    }
}
