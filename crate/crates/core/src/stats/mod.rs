//! Ranking and nonparametric comparison of algorithms over a set of
//! functions.
//!
//! Two tie conventions are used on purpose. Competition ranks (ties share
//! the smallest position) feed the rank tables, nBest and Formula-One
//! scoring; average ranks feed the Friedman and Quade tests.

mod f1;
mod fixture;
mod nonparametric;
mod rank;
pub mod special;

pub use f1::{f1_points, f1_scores, standard_groups, FunctionGroup, ScoreTable, F1_POINTS};
pub use fixture::{paper_fixture, ResultRow, ResultTable, FIXTURE_CSV};
pub use nonparametric::{friedman, quade, FriedmanResult, QuadeResult};
pub use rank::{nbest, rank_column, MedianMatrix, RankMatrix, TieMode};
