//! Wide-format result tables: `algorithm,metric,F1,...,Fn`.
//!
//! The bundled fixture holds Best, Median, Worst, Mean and Stddev rows for
//! eleven algorithms on the fifteen 1000-D functions after 3e6 evaluations.

use std::io::Read;

use super::rank::MedianMatrix;
use crate::{Error, Result};

pub const FIXTURE_CSV: &str = include_str!("../../data/lsgo_results.csv");

#[derive(Debug, Clone, PartialEq)]
pub struct ResultRow {
    pub algorithm: String,
    pub metric: String,
    pub values: Vec<f64>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ResultTable {
    pub functions: Vec<String>,
    pub rows: Vec<ResultRow>,
}

impl ResultTable {
    pub fn from_reader<R: Read>(reader: R) -> Result<Self> {
        let mut rdr = csv::ReaderBuilder::new()
            .trim(csv::Trim::All)
            .from_reader(reader);
        let header = rdr.headers()?.clone();
        if header.len() < 3 || &header[0] != "algorithm" || &header[1] != "metric" {
            return Err(Error::Parse(
                "header must start with `algorithm,metric` followed by function columns".into(),
            ));
        }
        let functions: Vec<String> = header.iter().skip(2).map(str::to_string).collect();
        let mut rows = Vec::new();
        for (i, rec) in rdr.records().enumerate() {
            let rec = rec?;
            let line = i + 2;
            if rec.len() != header.len() {
                return Err(Error::Parse(format!(
                    "row {line}: {} fields, expected {}",
                    rec.len(),
                    header.len()
                )));
            }
            let values = functions
                .iter()
                .zip(rec.iter().skip(2))
                .map(|(f, v)| {
                    v.parse::<f64>()
                        .ok()
                        .filter(|x| x.is_finite())
                        .ok_or_else(|| {
                            Error::Parse(format!("row {line}, column {f}: bad number {v:?}"))
                        })
                })
                .collect::<Result<Vec<_>>>()?;
            rows.push(ResultRow {
                algorithm: rec[0].to_string(),
                metric: rec[1].to_string(),
                values,
            });
        }
        if rows.is_empty() {
            return Err(Error::Parse("result table has no rows".into()));
        }
        Ok(Self { functions, rows })
    }

    pub fn parse(text: &str) -> Result<Self> {
        Self::from_reader(text.as_bytes())
    }

    /// Rows for one metric, as a matrix in row order.
    pub fn metric_matrix(&self, metric: &str) -> Result<MedianMatrix> {
        let rows: Vec<&ResultRow> = self
            .rows
            .iter()
            .filter(|r| r.metric.eq_ignore_ascii_case(metric))
            .collect();
        if rows.is_empty() {
            return Err(Error::Parse(format!("no `{metric}` rows")));
        }
        let mut names: Vec<String> = Vec::new();
        for r in &rows {
            if names.contains(&r.algorithm) {
                return Err(Error::Parse(format!(
                    "duplicate {metric} row for {}",
                    r.algorithm
                )));
            }
            names.push(r.algorithm.clone());
        }
        MedianMatrix::new(
            names,
            self.functions.clone(),
            rows.iter().map(|r| r.values.clone()).collect(),
        )
    }

    pub fn median_matrix(&self) -> Result<MedianMatrix> {
        self.metric_matrix("Median")
    }

    /// Appends rows of `other`; function columns must agree.
    pub fn extend(&mut self, other: ResultTable) -> Result<()> {
        if other.functions != self.functions {
            return Err(Error::Parse(
                "function columns differ between tables".into(),
            ));
        }
        self.rows.extend(other.rows);
        Ok(())
    }

    pub fn write_csv<W: std::io::Write>(&self, w: W) -> Result<()> {
        let mut wtr = csv::Writer::from_writer(w);
        let mut header = vec!["algorithm".to_string(), "metric".to_string()];
        header.extend(self.functions.iter().cloned());
        wtr.write_record(&header)?;
        for r in &self.rows {
            let mut rec = vec![r.algorithm.clone(), r.metric.clone()];
            rec.extend(r.values.iter().map(|v| format!("{v:.11e}")));
            wtr.write_record(&rec)?;
        }
        wtr.flush().map_err(csv::Error::from)?;
        Ok(())
    }
}

/// The bundled 11-algorithm fixture.
pub fn paper_fixture() -> ResultTable {
    ResultTable::parse(FIXTURE_CSV).expect("bundled fixture is valid")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn fixture_shape() {
        let t = paper_fixture();
        assert_eq!(t.functions.len(), 15);
        assert_eq!(t.rows.len(), 55);
        let m = t.median_matrix().unwrap();
        assert_eq!(m.algorithms().len(), 11);
        assert_eq!(m.algorithms()[0], "IMHS+MDE");
        assert_eq!(m.values()[0][0], 4595495.0);
    }

    #[test]
    fn schema_errors_name_the_cell() {
        let bad = "algorithm,metric,F1,F2\nA,Median,1.0,oops\n";
        let e = ResultTable::parse(bad).unwrap_err().to_string();
        assert!(e.contains("row 2") && e.contains("F2"), "{e}");
        assert!(ResultTable::parse("algorithm,metric,F1\n").is_err());
        assert!(ResultTable::parse("name,F1\nA,1\n").is_err());
        let dup = "algorithm,metric,F1\nA,Median,1\nA,Median,2\n";
        assert!(ResultTable::parse(dup).unwrap().median_matrix().is_err());
    }

    #[test]
    fn csv_round_trip() {
        let t = paper_fixture();
        let mut buf = Vec::new();
        t.write_csv(&mut buf).unwrap();
        assert_eq!(ResultTable::from_reader(buf.as_slice()).unwrap(), t);
    }
}
