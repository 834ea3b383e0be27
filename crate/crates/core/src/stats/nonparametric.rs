//! Friedman and Quade tests over a median matrix (functions are blocks,
//! algorithms are treatments).

use serde::Serialize;

use super::rank::{MedianMatrix, TieMode};
use super::rank_column;
use super::special::{chi2_sf, f_sf};
use crate::{Error, Result};

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct FriedmanResult {
    /// Mean average-tie rank per algorithm.
    pub mean_ranks: Vec<f64>,
    /// Tie-corrected chi-square statistic.
    pub statistic: f64,
    pub p_value: f64,
    pub statistic_uncorrected: f64,
    pub p_value_uncorrected: f64,
    pub df: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct QuadeResult {
    /// `sum_i Q_i r_ij / (N (N + 1) / 2)` per algorithm.
    pub weighted_ranks: Vec<f64>,
    pub statistic: f64,
    pub p_value: f64,
    pub df1: f64,
    pub df2: f64,
}

fn check_shape(m: &MedianMatrix) -> Result<(usize, usize)> {
    let (k, n) = (m.algorithms().len(), m.functions().len());
    if k < 2 || n < 2 {
        return Err(Error::domain(format!(
            "need at least 2 algorithms and 2 functions, got {k} x {n}"
        )));
    }
    Ok((k, n))
}

pub fn friedman(m: &MedianMatrix) -> Result<FriedmanResult> {
    let (k, n) = check_shape(m)?;
    let ranks = m.rank(TieMode::Average)?;
    let (kf, nf) = (k as f64, n as f64);
    let mean_ranks: Vec<f64> = ranks
        .ranks
        .iter()
        .map(|row| row.iter().sum::<f64>() / nf)
        .collect();
    let centre = (kf + 1.0) / 2.0;
    let uncorrected = 12.0 * nf / (kf * (kf + 1.0))
        * mean_ranks.iter().map(|r| (r - centre).powi(2)).sum::<f64>();

    let mut tie_sum = 0.0;
    for j in 0..n {
        let mut col = m.column(j);
        col.sort_by(f64::total_cmp);
        for run in col.chunk_by(|a, b| a == b) {
            let t = run.len() as f64;
            tie_sum += t * t * t - t;
        }
    }
    let correction = 1.0 - tie_sum / (nf * (kf * kf * kf - kf));
    if correction <= 0.0 {
        return Err(Error::domain("every function ties all algorithms"));
    }
    let statistic = uncorrected / correction;
    let df = kf - 1.0;
    Ok(FriedmanResult {
        mean_ranks,
        statistic,
        p_value: chi2_sf(statistic, df)?,
        statistic_uncorrected: uncorrected,
        p_value_uncorrected: chi2_sf(uncorrected, df)?,
        df,
    })
}

pub fn quade(m: &MedianMatrix) -> Result<QuadeResult> {
    let (k, n) = check_shape(m)?;
    let (kf, nf) = (k as f64, n as f64);
    let ranks = m.rank(TieMode::Average)?;
    let ranges: Vec<f64> = (0..n)
        .map(|j| {
            let col = m.column(j);
            let hi = col.iter().copied().fold(f64::NEG_INFINITY, f64::max);
            let lo = col.iter().copied().fold(f64::INFINITY, f64::min);
            hi - lo
        })
        .collect();
    let q = rank_column(&ranges, TieMode::Average)?;
    let centre = (kf + 1.0) / 2.0;

    let mut a = 0.0;
    let mut s_tot = vec![0.0; k];
    let mut w_tot = vec![0.0; k];
    for (i, &qi) in q.iter().enumerate() {
        for j in 0..k {
            let r = ranks.ranks[j][i];
            let s = qi * (r - centre);
            a += s * s;
            s_tot[j] += s;
            w_tot[j] += qi * r;
        }
    }
    let b = s_tot.iter().map(|s| s * s).sum::<f64>() / nf;
    let (df1, df2) = (kf - 1.0, (kf - 1.0) * (nf - 1.0));
    let (statistic, p_value) = if a == b {
        (f64::INFINITY, 0.0)
    } else {
        let f = (nf - 1.0) * b / (a - b);
        (f, f_sf(f, df1, df2)?)
    };
    let norm = nf * (nf + 1.0) / 2.0;
    Ok(QuadeResult {
        weighted_ranks: w_tot.into_iter().map(|w| w / norm).collect(),
        statistic,
        p_value,
        df1,
        df2,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn dominance() -> MedianMatrix {
        MedianMatrix::new(
            vec!["a".into(), "b".into(), "c".into()],
            (1..=5).map(|i| format!("F{i}")).collect(),
            vec![
                vec![0.0, 1.0, 2.0, 3.0, 4.0],
                vec![5.0, 3.0, 9.0, 4.0, 8.0],
                vec![6.0, 2.0, 7.0, 5.0, 80.0],
            ],
        )
        .unwrap()
    }

    #[test]
    fn dominant_algorithm_ranks_first() {
        assert_eq!(friedman(&dominance()).unwrap().mean_ranks[0], 1.0);
        assert!((quade(&dominance()).unwrap().weighted_ranks[0] - 1.0).abs() < 1e-15);
    }

    #[test]
    fn no_ties_means_no_correction() {
        let f = friedman(&dominance()).unwrap();
        assert_eq!(f.statistic, f.statistic_uncorrected);
        assert_eq!(f.df, 2.0);
    }

    #[test]
    fn degenerate_inputs() {
        let one = MedianMatrix::new(
            vec!["a".into()],
            vec!["F1".into(), "F2".into()],
            vec![vec![1.0, 2.0]],
        )
        .unwrap();
        assert!(friedman(&one).is_err());
        assert!(quade(&one).is_err());
        let flat = MedianMatrix::new(
            vec!["a".into(), "b".into()],
            vec!["F1".into(), "F2".into()],
            vec![vec![1.0, 1.0], vec![1.0, 1.0]],
        )
        .unwrap();
        assert!(friedman(&flat).is_err());
    }

    #[test]
    fn perfect_agreement_gives_infinite_quade() {
        // same ordering and equal ranges in every block: A == B
        let m = MedianMatrix::new(
            vec!["a".into(), "b".into()],
            vec!["F1".into(), "F2".into(), "F3".into()],
            vec![vec![0.0, 0.0, 0.0], vec![1.0, 1.0, 1.0]],
        )
        .unwrap();
        let q = quade(&m).unwrap();
        assert!(q.statistic.is_infinite());
        assert_eq!(q.p_value, 0.0);
    }
}
