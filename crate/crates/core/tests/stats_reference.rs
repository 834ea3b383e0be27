//! Statistics pipeline on the bundled fixture, against values computed
//! independently with scipy (rankdata, chi2.sf, f.sf) and frozen here.

use lsgo_core::stats::{
    f1_scores, friedman, nbest, paper_fixture, quade, rank_column, standard_groups, MedianMatrix,
    TieMode,
};

fn medians() -> MedianMatrix {
    paper_fixture().median_matrix().unwrap()
}

const COMPETITION_RANKS: [[u32; 15]; 11] = [
    [11, 10, 11, 7, 1, 11, 7, 6, 3, 11, 7, 11, 7, 7, 8],
    [8, 7, 7, 5, 3, 3, 5, 4, 1, 1, 4, 8, 3, 5, 3],
    [1, 2, 6, 9, 2, 6, 4, 9, 2, 6, 5, 9, 4, 4, 2],
    [1, 4, 1, 10, 9, 8, 6, 10, 10, 9, 6, 2, 6, 6, 11],
    [1, 2, 5, 6, 5, 1, 11, 5, 6, 3, 9, 5, 11, 11, 7],
    [1, 1, 4, 8, 8, 10, 10, 7, 9, 8, 11, 7, 9, 10, 10],
    [1, 11, 9, 2, 10, 9, 2, 1, 11, 10, 2, 3, 2, 3, 4],
    [7, 5, 2, 4, 4, 2, 9, 3, 4, 2, 8, 4, 10, 9, 9],
    [1, 6, 8, 1, 6, 4, 1, 2, 7, 5, 1, 1, 1, 1, 1],
    [10, 8, 10, 11, 7, 5, 8, 11, 8, 7, 10, 10, 8, 8, 5],
    [9, 9, 3, 3, 11, 7, 3, 8, 5, 4, 3, 6, 5, 2, 6],
];

#[test]
fn competition_ranks_match_oracle() {
    let r = medians().rank(TieMode::Competition).unwrap();
    for (row, want) in r.ranks.iter().zip(COMPETITION_RANKS) {
        let got: Vec<u32> = row.iter().map(|&v| v as u32).collect();
        assert_eq!(got, want);
    }
}

#[test]
fn nbest_matches_oracle() {
    let r = medians().rank(TieMode::Competition).unwrap();
    assert_eq!(nbest(&r).unwrap(), vec![1, 2, 1, 2, 2, 2, 2, 0, 8, 0, 0]);
}

#[test]
fn average_ranks_sum_per_column() {
    let m = medians();
    for j in 0..m.functions().len() {
        let s: f64 = rank_column(&m.column(j), TieMode::Average)
            .unwrap()
            .iter()
            .sum();
        assert!((s - 66.0).abs() < 1e-12);
    }
}

#[test]
fn friedman_matches_oracle() {
    let f = friedman(&medians()).unwrap();
    let want = [
        7.866666666666666,
        4.466666666666667,
        4.933333333333334,
        6.766666666666667,
        6.066666666666666,
        7.7,
        5.5,
        5.466666666666667,
        3.2333333333333334,
        8.4,
        5.6,
    ];
    for (g, w) in f.mean_ranks.iter().zip(want) {
        assert!((g - w).abs() < 1e-12, "{g} vs {w}");
    }
    assert!((f.statistic_uncorrected - 33.49696969696969).abs() < 1e-9);
    assert!((f.statistic - 33.866421568627445).abs() < 1e-9);
    assert!((f.p_value_uncorrected - 2.2464749542534674e-4).abs() < 1e-12);
    assert!((f.p_value - 1.945704354768339e-4).abs() < 1e-12);
    assert_eq!(f.df, 10.0);
    assert!(f.mean_ranks.iter().all(|&r| (1.0..=11.0).contains(&r)));
}

#[test]
fn quade_matches_oracle() {
    let q = quade(&medians()).unwrap();
    let want = [
        6.65,
        3.975,
        4.9625,
        7.7125,
        6.9375,
        8.5125,
        4.5625,
        5.941666666666666,
        2.654166666666667,
        8.558333333333334,
        5.533333333333333,
    ];
    for (g, w) in q.weighted_ranks.iter().zip(want) {
        assert!((g - w).abs() < 1e-9, "{g} vs {w}");
    }
    assert!((q.statistic - 4.727427582312132).abs() < 1e-9);
    assert!((q.p_value - 7.947991676466413e-6).abs() < 1e-12);
    assert_eq!((q.df1, q.df2), (10.0, 140.0));
}

#[test]
fn f1_group_scores_match_oracle() {
    let t = f1_scores(
        &medians().rank(TieMode::Competition).unwrap(),
        &standard_groups(),
    )
    .unwrap();
    let sums = [
        [1, 16, 51, 62, 53, 62, 27, 34, 37, 6, 19],
        [37, 50, 40, 15, 43, 10, 39, 44, 70, 20, 36],
        [29, 74, 38, 12, 35, 12, 44, 49, 59, 11, 41],
        [12, 29, 26, 34, 10, 9, 48, 15, 75, 9, 36],
        [4, 15, 18, 0, 6, 1, 12, 2, 25, 10, 8],
    ];
    // competition ranks of the sums, highest first
    let ranks = [
        [11, 9, 4, 1, 3, 1, 7, 6, 5, 10, 8],
        [7, 2, 5, 10, 4, 11, 6, 3, 1, 9, 8],
        [8, 1, 6, 9, 7, 9, 4, 3, 2, 11, 5],
        [8, 5, 6, 4, 9, 10, 2, 7, 1, 10, 3],
        [8, 3, 2, 11, 7, 10, 4, 9, 1, 5, 6],
    ];
    for g in 0..5 {
        let got: Vec<u32> = t.group_scores.iter().map(|r| r[g]).collect();
        assert_eq!(got, sums[g], "S{}", g + 1);
        let got: Vec<u32> = t.group_ranks.iter().map(|r| r[g]).collect();
        assert_eq!(got, ranks[g], "R{}", g + 1);
    }
}

#[test]
fn pipeline_is_fast() {
    let start = std::time::Instant::now();
    let m = medians();
    let r = m.rank(TieMode::Competition).unwrap();
    nbest(&r).unwrap();
    friedman(&m).unwrap();
    quade(&m).unwrap();
    f1_scores(&r, &standard_groups()).unwrap();
    assert!(start.elapsed().as_secs_f64() < 1.0);
}
