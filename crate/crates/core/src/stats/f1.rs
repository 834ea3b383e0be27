//! Formula-One scoring of competition ranks, summed per function group.

use serde::Serialize;

use super::rank::{rank_column, RankMatrix, TieMode};
use crate::{Error, Result};

/// Points for ranks 1 to 10; later ranks score nothing.
pub const F1_POINTS: [u32; 10] = [25, 18, 15, 12, 10, 8, 6, 4, 2, 1];

pub fn f1_points(rank: f64) -> u32 {
    if rank >= 1.0 && rank.fract() == 0.0 && rank <= F1_POINTS.len() as f64 {
        F1_POINTS[rank as usize - 1]
    } else {
        0
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct FunctionGroup {
    pub name: String,
    pub functions: Vec<String>,
}

/// S1..S5: separable, separable tail, no tail, overlapping, non-separable.
pub fn standard_groups() -> Vec<FunctionGroup> {
    let group = |name: &str, ids: std::ops::RangeInclusive<u8>| FunctionGroup {
        name: name.to_string(),
        functions: ids.map(|i| format!("F{i}")).collect(),
    };
    vec![
        group("S1", 1..=3),
        group("S2", 4..=7),
        group("S3", 8..=11),
        group("S4", 12..=14),
        group("S5", 15..=15),
    ]
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ScoreTable {
    pub algorithms: Vec<String>,
    pub groups: Vec<String>,
    /// `points[algorithm][function]`
    pub points: Vec<Vec<u32>>,
    /// `group_scores[algorithm][group]`
    pub group_scores: Vec<Vec<u32>>,
    /// Competition rank of each group score, highest score first.
    pub group_ranks: Vec<Vec<u32>>,
}

impl ScoreTable {
    pub fn totals(&self) -> Vec<u32> {
        self.points.iter().map(|row| row.iter().sum()).collect()
    }
}

pub fn f1_scores(ranks: &RankMatrix, groups: &[FunctionGroup]) -> Result<ScoreTable> {
    if ranks.tie_mode != TieMode::Competition {
        return Err(Error::config("F1 scoring needs competition ranks"));
    }
    let points: Vec<Vec<u32>> = ranks
        .ranks
        .iter()
        .map(|row| row.iter().map(|&r| f1_points(r)).collect())
        .collect();
    let mut columns = Vec::with_capacity(groups.len());
    for g in groups {
        let idx = g
            .functions
            .iter()
            .map(|f| {
                ranks.functions.iter().position(|x| x == f).ok_or_else(|| {
                    Error::config(format!("group {} names unknown function {f}", g.name))
                })
            })
            .collect::<Result<Vec<_>>>()?;
        columns.push(idx);
    }
    let group_scores: Vec<Vec<u32>> = points
        .iter()
        .map(|row| {
            columns
                .iter()
                .map(|idx| idx.iter().map(|&j| row[j]).sum())
                .collect()
        })
        .collect();
    let mut group_ranks = vec![Vec::with_capacity(groups.len()); points.len()];
    for g in 0..groups.len() {
        // negate so that the largest score ranks first
        let col: Vec<f64> = group_scores.iter().map(|row| -f64::from(row[g])).collect();
        for (out, r) in group_ranks
            .iter_mut()
            .zip(rank_column(&col, TieMode::Competition)?)
        {
            out.push(r as u32);
        }
    }
    Ok(ScoreTable {
        algorithms: ranks.algorithms.clone(),
        groups: groups.iter().map(|g| g.name.clone()).collect(),
        points,
        group_scores,
        group_ranks,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::stats::MedianMatrix;
    use proptest::prelude::*;

    fn ranks_of(rows: Vec<Vec<f64>>) -> RankMatrix {
        let k = rows.len();
        RankMatrix {
            algorithms: (0..k).map(|i| format!("A{i}")).collect(),
            functions: (1..=rows[0].len()).map(|i| format!("F{i}")).collect(),
            ranks: rows,
            tie_mode: TieMode::Competition,
        }
    }

    #[test]
    fn points_table() {
        assert_eq!(f1_points(1.0), 25);
        assert_eq!(f1_points(7.0), 6);
        assert_eq!(f1_points(8.0), 4);
        assert_eq!(f1_points(10.0), 1);
        assert_eq!(f1_points(11.0), 0);
        assert_eq!(f1_points(40.0), 0);
    }

    #[test]
    fn group_sums() {
        let r = ranks_of(vec![vec![11.0, 10.0, 11.0], vec![1.0, 4.0, 1.0]]);
        let g = vec![FunctionGroup {
            name: "S1".into(),
            functions: vec!["F1".into(), "F2".into(), "F3".into()],
        }];
        let t = f1_scores(&r, &g).unwrap();
        assert_eq!(t.group_scores, vec![vec![1], vec![62]]);
        assert_eq!(t.group_ranks, vec![vec![2], vec![1]]);
    }

    #[test]
    fn all_eleventh_scores_nothing() {
        let r = ranks_of(vec![vec![11.0; 15]]);
        let t = f1_scores(&r, &standard_groups()).unwrap();
        assert!(t.group_scores[0].iter().all(|&s| s == 0));
    }

    #[test]
    fn unknown_group_member() {
        let r = ranks_of(vec![vec![1.0, 2.0]]);
        let g = vec![FunctionGroup {
            name: "X".into(),
            functions: vec!["F9".into()],
        }];
        assert!(f1_scores(&r, &g).is_err());
    }

    proptest! {
        #[test]
        fn invariant_under_monotone_maps(values in prop::collection::vec(prop::collection::vec(-50.0f64..50.0, 15), 2..12)) {
            let algs: Vec<String> = (0..values.len()).map(|i| format!("A{i}")).collect();
            let funcs: Vec<String> = (1..=15).map(|i| format!("F{i}")).collect();
            let m = MedianMatrix::new(algs.clone(), funcs.clone(), values.clone()).unwrap();
            let mapped: Vec<Vec<f64>> = values.iter().map(|r| r.iter().map(|v| v.powi(3) + 2.0 * v).collect()).collect();
            let m2 = MedianMatrix::new(algs, funcs, mapped).unwrap();
            let a = f1_scores(&m.rank(TieMode::Competition).unwrap(), &standard_groups()).unwrap();
            let b = f1_scores(&m2.rank(TieMode::Competition).unwrap(), &standard_groups()).unwrap();
            prop_assert_eq!(a, b);
        }
    }
}
