use serde::Serialize;

use crate::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum TieMode {
    /// Ties share the smallest position they span.
    Competition,
    /// Ties share the mean of the positions they span.
    Average,
}

/// Ranks for minimization: the smallest value gets rank 1.
pub fn rank_column(values: &[f64], mode: TieMode) -> Result<Vec<f64>> {
    if values.is_empty() {
        return Err(Error::domain("cannot rank an empty column"));
    }
    if let Some(v) = values.iter().find(|v| !v.is_finite()) {
        return Err(Error::domain(format!("cannot rank non-finite value {v}")));
    }
    Ok(values
        .iter()
        .map(|&v| {
            let less = values.iter().filter(|&&u| u < v).count() as f64;
            match mode {
                TieMode::Competition => less + 1.0,
                TieMode::Average => {
                    let equal = values.iter().filter(|&&u| u == v).count() as f64;
                    less + (equal + 1.0) / 2.0
                }
            }
        })
        .collect())
}

/// One value per (algorithm, function), smaller is better.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct MedianMatrix {
    algorithms: Vec<String>,
    functions: Vec<String>,
    /// `values[algorithm][function]`
    values: Vec<Vec<f64>>,
}

impl MedianMatrix {
    pub fn new(
        algorithms: Vec<String>,
        functions: Vec<String>,
        values: Vec<Vec<f64>>,
    ) -> Result<Self> {
        if values.len() != algorithms.len() {
            return Err(Error::domain(format!(
                "{} value rows for {} algorithms",
                values.len(),
                algorithms.len()
            )));
        }
        for (a, row) in algorithms.iter().zip(&values) {
            if row.len() != functions.len() {
                return Err(Error::domain(format!(
                    "{a}: {} values for {} functions",
                    row.len(),
                    functions.len()
                )));
            }
            if let Some((f, v)) = functions.iter().zip(row).find(|(_, v)| !v.is_finite()) {
                return Err(Error::domain(format!("{a}, {f}: non-finite value {v}")));
            }
        }
        Ok(Self {
            algorithms,
            functions,
            values,
        })
    }

    pub fn algorithms(&self) -> &[String] {
        &self.algorithms
    }

    pub fn functions(&self) -> &[String] {
        &self.functions
    }

    pub fn values(&self) -> &[Vec<f64>] {
        &self.values
    }

    pub fn column(&self, j: usize) -> Vec<f64> {
        self.values.iter().map(|row| row[j]).collect()
    }

    /// Ranks every function column.
    pub fn rank(&self, mode: TieMode) -> Result<RankMatrix> {
        let k = self.algorithms.len();
        let mut ranks = vec![Vec::with_capacity(self.functions.len()); k];
        for j in 0..self.functions.len() {
            for (row, r) in ranks.iter_mut().zip(rank_column(&self.column(j), mode)?) {
                row.push(r);
            }
        }
        Ok(RankMatrix {
            algorithms: self.algorithms.clone(),
            functions: self.functions.clone(),
            ranks,
            tie_mode: mode,
        })
    }

    /// Keeps only the listed algorithms, in the given order.
    pub fn select(&self, algorithms: &[&str]) -> Result<Self> {
        let mut values = Vec::with_capacity(algorithms.len());
        for a in algorithms {
            let i = self
                .algorithms
                .iter()
                .position(|x| x == a)
                .ok_or_else(|| Error::config(format!("unknown algorithm {a}")))?;
            values.push(self.values[i].clone());
        }
        Self::new(
            algorithms.iter().map(|s| s.to_string()).collect(),
            self.functions.clone(),
            values,
        )
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RankMatrix {
    pub algorithms: Vec<String>,
    pub functions: Vec<String>,
    /// `ranks[algorithm][function]`
    pub ranks: Vec<Vec<f64>>,
    pub tie_mode: TieMode,
}

/// Number of rank-1 finishes per algorithm.
pub fn nbest(ranks: &RankMatrix) -> Result<Vec<usize>> {
    if ranks.tie_mode != TieMode::Competition {
        return Err(Error::config("nBest needs competition ranks"));
    }
    Ok(ranks
        .ranks
        .iter()
        .map(|row| row.iter().filter(|&&r| r == 1.0).count())
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn competition_and_average() {
        let col = [
            4595495.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0, 2.88e-23, 6.15e-13, 5.56e-9, 2.33e-6,
        ];
        let c = rank_column(&col, TieMode::Competition).unwrap();
        assert_eq!(c[0], 11.0);
        assert!(c[1..7].iter().all(|&r| r == 1.0));
        assert_eq!(&c[7..], &[7.0, 8.0, 9.0, 10.0]);
        let a = rank_column(&col, TieMode::Average).unwrap();
        assert!(a[1..7].iter().all(|&r| r == 3.5));
        for m in [TieMode::Competition, TieMode::Average] {
            assert_eq!(
                rank_column(&[3.0, 1.0, 2.0], m).unwrap(),
                vec![3.0, 1.0, 2.0]
            );
        }
        assert!(rank_column(&[], TieMode::Average).is_err());
        assert!(rank_column(&[1.0, f64::NAN], TieMode::Average).is_err());
    }

    #[test]
    fn nbest_counts_shared_wins() {
        let m = MedianMatrix::new(
            vec!["a".into(), "b".into()],
            vec!["F1".into(), "F2".into()],
            vec![vec![1.0, 0.0], vec![1.0, 2.0]],
        )
        .unwrap();
        assert_eq!(
            nbest(&m.rank(TieMode::Competition).unwrap()).unwrap(),
            vec![2, 1]
        );
        assert!(nbest(&m.rank(TieMode::Average).unwrap()).is_err());
    }

    #[test]
    fn rejects_ragged_matrix() {
        let r = MedianMatrix::new(
            vec!["a".into()],
            vec!["F1".into(), "F2".into()],
            vec![vec![1.0]],
        );
        assert!(r.is_err());
    }

    proptest! {
        #[test]
        fn average_ranks_sum(values in prop::collection::vec(prop::sample::select(vec![0.0, 1.0, 2.5, 1e10, -3.0]), 1..20)) {
            let k = values.len() as f64;
            let s: f64 = rank_column(&values, TieMode::Average).unwrap().iter().sum();
            prop_assert!((s - k * (k + 1.0) / 2.0).abs() < 1e-9);
        }

        #[test]
        fn removing_an_entry_keeps_order(values in prop::collection::vec(-100i32..100, 2..15), drop in 0usize..15) {
            let values: Vec<f64> = values.into_iter().map(f64::from).collect();
            let drop = drop % values.len();
            let full = rank_column(&values, TieMode::Competition).unwrap();
            let mut rest = values.clone();
            rest.remove(drop);
            let mut full_rest = full.clone();
            full_rest.remove(drop);
            let part = rank_column(&rest, TieMode::Competition).unwrap();
            for i in 0..rest.len() {
                for j in 0..rest.len() {
                    prop_assert_eq!(part[i] < part[j], full_rest[i] < full_rest[j]);
                }
            }
        }
    }
}
