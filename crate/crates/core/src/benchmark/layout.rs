use std::ops::Range;

use super::Family;
use crate::{Error, Result};

/// Subcomponent sizes at `D = 1000`; other dimensions scale from these.
pub const REFERENCE_SIZES: [usize; 7] = [50, 50, 25, 25, 100, 100, 200];
const MIN_SIZE: usize = 5;

/// Subcomponent ranges (in permuted order) plus an optional separable tail.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Layout {
    pub subcomponents: Vec<Range<usize>>,
    pub tail: Option<Range<usize>>,
}

fn scaled(reference: usize, numerator: usize, denominator: usize) -> usize {
    let v = (reference * numerator) as f64 / denominator as f64;
    (v.round() as usize).max(MIN_SIZE)
}

fn overlap(a: usize, b: usize) -> usize {
    (a.min(b) / 10).max(1)
}

impl Layout {
    pub fn for_family(family: Family, dim: usize) -> Result<Self> {
        let too_small = |need: usize| {
            Err(Error::config(format!(
                "dimension {dim} too small for {family:?} layout (need >= {need})"
            )))
        };
        match family {
            Family::FullySeparable => {
                if dim < 2 {
                    return too_small(2);
                }
                Ok(Self {
                    subcomponents: vec![],
                    tail: Some(0..dim),
                })
            }
            Family::NonSeparable => {
                if dim < 2 {
                    return too_small(2);
                }
                Ok(Self {
                    subcomponents: vec![0..dim],
                    tail: None,
                })
            }
            Family::SeparableTail => {
                let sizes: Vec<usize> = REFERENCE_SIZES
                    .iter()
                    .map(|&s| scaled(s, dim, 1000))
                    .collect();
                let used: usize = sizes.iter().sum();
                if used >= dim {
                    return too_small(used + 1);
                }
                Ok(Self {
                    subcomponents: contiguous(&sizes),
                    tail: Some(used..dim),
                })
            }
            Family::NoSeparableTail => {
                let total: usize = REFERENCE_SIZES.iter().sum();
                let mut sizes: Vec<usize> = REFERENCE_SIZES[..6]
                    .iter()
                    .map(|&s| scaled(s, dim, total))
                    .collect();
                let used: usize = sizes.iter().sum();
                if used + MIN_SIZE > dim {
                    return too_small(used + MIN_SIZE);
                }
                sizes.push(dim - used);
                Ok(Self {
                    subcomponents: contiguous(&sizes),
                    tail: None,
                })
            }
            Family::Overlapping { .. } => {
                let total: usize = REFERENCE_SIZES.iter().sum();
                let mut sizes: Vec<usize> = REFERENCE_SIZES[..6]
                    .iter()
                    .map(|&s| scaled(s, dim, total))
                    .collect();
                let shared: usize = sizes.windows(2).map(|w| overlap(w[0], w[1])).sum();
                let covered = sizes.iter().sum::<usize>() - shared;
                let prev = sizes[5];
                // last size depends on its own overlap with the previous block
                let mut last = MIN_SIZE;
                for _ in 0..8 {
                    let next = (dim + overlap(prev, last)).saturating_sub(covered);
                    if next == last {
                        break;
                    }
                    last = next;
                }
                if last < MIN_SIZE || covered + last - overlap(prev, last) != dim {
                    return too_small(covered + MIN_SIZE);
                }
                sizes.push(last);
                let mut ranges = Vec::with_capacity(sizes.len());
                let mut start = 0;
                for (i, &s) in sizes.iter().enumerate() {
                    ranges.push(start..start + s);
                    if i + 1 < sizes.len() {
                        start += s - overlap(s, sizes[i + 1]);
                    }
                }
                Ok(Self {
                    subcomponents: ranges,
                    tail: None,
                })
            }
        }
    }

    /// Number of coordinates each adjacent pair of subcomponents shares.
    pub fn overlaps(&self) -> Vec<usize> {
        self.subcomponents
            .windows(2)
            .map(|w| w[0].end.saturating_sub(w[1].start))
            .collect()
    }
}

fn contiguous(sizes: &[usize]) -> Vec<Range<usize>> {
    let mut start = 0;
    sizes
        .iter()
        .map(|&s| {
            let r = start..start + s;
            start += s;
            r
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn coverage(layout: &Layout, dim: usize) -> Vec<usize> {
        let mut hits = vec![0; dim];
        for r in layout.subcomponents.iter().chain(layout.tail.iter()) {
            r.clone().for_each(|i| hits[i] += 1);
        }
        hits
    }

    #[test]
    fn reference_dimension_with_tail() {
        let l = Layout::for_family(Family::SeparableTail, 1000).unwrap();
        let sizes: Vec<usize> = l.subcomponents.iter().map(|r| r.len()).collect();
        assert_eq!(sizes, REFERENCE_SIZES);
        assert_eq!(l.tail, Some(550..1000));
        assert!(coverage(&l, 1000).iter().all(|&h| h == 1));
    }

    #[test]
    fn partitions_for_non_overlapping_families() {
        for dim in [40, 50, 100, 333, 1000, 2000] {
            for fam in [
                Family::SeparableTail,
                Family::NoSeparableTail,
                Family::FullySeparable,
                Family::NonSeparable,
            ] {
                let l = Layout::for_family(fam, dim).unwrap();
                assert!(coverage(&l, dim).iter().all(|&h| h == 1), "{fam:?} D={dim}");
                assert!(l.subcomponents.iter().all(|r| r.len() >= 5));
            }
        }
    }

    #[test]
    fn overlapping_layout_shares_exactly_the_overlap() {
        for dim in [40, 50, 100, 1000, 3000] {
            let l = Layout::for_family(Family::Overlapping { conflicting: false }, dim).unwrap();
            let hits = coverage(&l, dim);
            assert!(hits.iter().all(|&h| h >= 1), "D={dim} uncovered");
            assert_eq!(l.subcomponents.last().unwrap().end, dim);
            for (i, w) in l.subcomponents.windows(2).enumerate() {
                let expected = overlap(w[0].len(), w[1].len());
                assert_eq!(l.overlaps()[i], expected, "D={dim} pair {i}");
            }
        }
    }

    #[test]
    fn too_small_dimension_is_a_config_error() {
        assert!(Layout::for_family(Family::SeparableTail, 35).is_err());
        assert!(Layout::for_family(Family::NoSeparableTail, 20).is_err());
        assert!(Layout::for_family(Family::FullySeparable, 1).is_err());
    }
}
