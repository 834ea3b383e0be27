//! The `stats` command: rank tables, Friedman and Quade tests, nBest and
//! Formula-One scores over a wide result table.

use std::fmt::Write as _;
use std::fs;
use std::path::Path;

use anyhow::{bail, Context, Result};
use lsgo_core::stats::{
    f1_scores, friedman, nbest, paper_fixture, quade, standard_groups, FriedmanResult,
    FunctionGroup, MedianMatrix, QuadeResult, RankMatrix, ResultTable, ScoreTable, TieMode,
};
use serde::Serialize;

use crate::cli::{StatsArgs, StatsMode};

#[derive(Debug, Clone, Serialize)]
pub struct StatsReport {
    pub algorithms: Vec<String>,
    pub functions: Vec<String>,
    pub medians: Vec<Vec<f64>>,
    pub competition_ranks: Option<RankMatrix>,
    pub average_ranks: Option<RankMatrix>,
    pub nbest: Option<Vec<usize>>,
    pub friedman: Option<FriedmanResult>,
    pub quade: Option<QuadeResult>,
    pub f1: Option<ScoreTable>,
    /// Analyses skipped in `all` mode, with the reason.
    pub skipped: Vec<String>,
    #[serde(skip)]
    pub text: String,
}

/// Restricts `fixture` to the function columns of `input`, then lets input
/// rows replace fixture rows with the same algorithm and metric.
pub fn merge_with_fixture(fixture: ResultTable, input: ResultTable) -> Result<ResultTable> {
    let cols = input
        .functions
        .iter()
        .map(|f| {
            fixture
                .functions
                .iter()
                .position(|g| g == f)
                .with_context(|| format!("input column {f} is not in the fixture"))
        })
        .collect::<Result<Vec<_>>>()?;
    let mut rows: Vec<_> = fixture
        .rows
        .into_iter()
        .map(|mut r| {
            r.values = cols.iter().map(|&c| r.values[c]).collect();
            r
        })
        .collect();
    for r in input.rows {
        match rows
            .iter_mut()
            .find(|x| x.algorithm == r.algorithm && x.metric.eq_ignore_ascii_case(&r.metric))
        {
            Some(slot) => *slot = r,
            None => rows.push(r),
        }
    }
    Ok(ResultTable {
        functions: input.functions,
        rows,
    })
}

pub fn load_table(args: &StatsArgs) -> Result<ResultTable> {
    let input = match &args.input {
        Some(path) => {
            let text =
                fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
            Some(ResultTable::parse(&text).with_context(|| format!("parsing {}", path.display()))?)
        }
        None => None,
    };
    Ok(match (input, args.fixture.is_some() || args.with_fixture) {
        (Some(t), true) => merge_with_fixture(paper_fixture(), t)?,
        (Some(t), false) => t,
        (None, _) => paper_fixture(),
    })
}

/// Groups whose functions are all present.
fn covered_groups(functions: &[String]) -> Vec<FunctionGroup> {
    standard_groups()
        .into_iter()
        .filter(|g| g.functions.iter().all(|f| functions.contains(f)))
        .collect()
}

/// In `all` mode an inapplicable analysis is skipped; a requested one fails.
fn attempt<T>(
    mode: StatsMode,
    skipped: &mut Vec<String>,
    name: &str,
    r: lsgo_core::Result<T>,
) -> Result<Option<T>> {
    match r {
        Ok(v) => Ok(Some(v)),
        Err(e) if mode == StatsMode::All => {
            skipped.push(format!("{name}: {e}"));
            Ok(None)
        }
        Err(e) => Err(anyhow::Error::new(e).context(format!("{name} failed"))),
    }
}

pub fn analyze(m: &MedianMatrix, mode: StatsMode) -> Result<StatsReport> {
    let want = |x: StatsMode| mode == StatsMode::All || mode == x;
    let mut skipped = Vec::new();
    let need_comp = want(StatsMode::Ranks) || want(StatsMode::Nbest) || want(StatsMode::F1);
    let competition = if need_comp {
        Some(m.rank(TieMode::Competition)?)
    } else {
        None
    };
    let average = if want(StatsMode::Ranks) {
        Some(m.rank(TieMode::Average)?)
    } else {
        None
    };
    let nb = match (&competition, want(StatsMode::Nbest)) {
        (Some(c), true) => Some(nbest(c)?),
        _ => None,
    };
    let fr = if want(StatsMode::Friedman) {
        attempt(mode, &mut skipped, "friedman", friedman(m))?
    } else {
        None
    };
    let qu = if want(StatsMode::Quade) {
        attempt(mode, &mut skipped, "quade", quade(m))?
    } else {
        None
    };
    let f1 = match (&competition, want(StatsMode::F1)) {
        (Some(c), true) => {
            let groups = covered_groups(m.functions());
            if groups.is_empty() && mode == StatsMode::All {
                skipped.push("f1: no function group is fully covered by the input".into());
                None
            } else if groups.is_empty() {
                bail!("f1: no function group is fully covered by the input");
            } else {
                attempt(mode, &mut skipped, "f1", f1_scores(c, &groups))?
            }
        }
        _ => None,
    };
    let mut report = StatsReport {
        algorithms: m.algorithms().to_vec(),
        functions: m.functions().to_vec(),
        medians: m.values().to_vec(),
        competition_ranks: if want(StatsMode::Ranks) {
            competition
        } else {
            None
        },
        average_ranks: average,
        nbest: nb,
        friedman: fr,
        quade: qu,
        f1,
        skipped,
        text: String::new(),
    };
    report.text = render_text(&report);
    Ok(report)
}

fn render_text(r: &StatsReport) -> String {
    let w = r
        .algorithms
        .iter()
        .map(String::len)
        .max()
        .unwrap_or(0)
        .max(9);
    let mut s = String::new();
    if let Some(c) = &r.competition_ranks {
        let _ = writeln!(s, "Median ranks (competition)");
        let _ = write!(s, "{:w$}", "algorithm");
        for f in &r.functions {
            let _ = write!(s, " {f:>4}");
        }
        let _ = writeln!(s);
        for (a, row) in c.algorithms.iter().zip(&c.ranks) {
            let _ = write!(s, "{a:w$}");
            for v in row {
                let _ = write!(s, " {v:>4}");
            }
            let _ = writeln!(s);
        }
        let _ = writeln!(s);
    }
    if r.friedman.is_some() || r.quade.is_some() || r.nbest.is_some() {
        let _ = writeln!(
            s,
            "{:w$} {:>10} {:>10} {:>6}",
            "algorithm", "friedman", "quade", "nbest"
        );
        for (i, a) in r.algorithms.iter().enumerate() {
            let fr = r
                .friedman
                .as_ref()
                .map_or("-".into(), |x| format!("{:.4}", x.mean_ranks[i]));
            let qu = r
                .quade
                .as_ref()
                .map_or("-".into(), |x| format!("{:.4}", x.weighted_ranks[i]));
            let nb = r.nbest.as_ref().map_or("-".into(), |x| x[i].to_string());
            let _ = writeln!(s, "{a:w$} {fr:>10} {qu:>10} {nb:>6}");
        }
        if let Some(f) = &r.friedman {
            let _ = writeln!(
                s,
                "Friedman: chi2 = {:.4} (tie-corrected), p = {:.4e}; uncorrected chi2 = {:.4}, p = {:.4e}; df = {}",
                f.statistic, f.p_value, f.statistic_uncorrected, f.p_value_uncorrected, f.df
            );
        }
        if let Some(q) = &r.quade {
            let _ = writeln!(
                s,
                "Quade: F = {:.4}, p = {:.4e}; df = ({}, {})",
                q.statistic, q.p_value, q.df1, q.df2
            );
        }
        let _ = writeln!(s);
    }
    if let Some(t) = &r.f1 {
        let _ = writeln!(s, "Formula-One scores (S = group score, R = rank)");
        let _ = write!(s, "{:w$}", "algorithm");
        for g in &t.groups {
            let _ = write!(s, " {:>4} {:>3}", g, g.replacen('S', "R", 1));
        }
        let _ = writeln!(s, " {:>5}", "total");
        let totals = t.totals();
        for (i, a) in t.algorithms.iter().enumerate() {
            let _ = write!(s, "{a:w$}");
            for (sc, rk) in t.group_scores[i].iter().zip(&t.group_ranks[i]) {
                let _ = write!(s, " {sc:>4} {rk:>3}");
            }
            let _ = writeln!(s, " {:>5}", totals[i]);
        }
        let _ = writeln!(s);
    }
    for note in &r.skipped {
        let _ = writeln!(s, "skipped {note}");
    }
    s
}

fn write_rank_csv(path: &Path, m: &RankMatrix) -> Result<()> {
    let mut w = csv::Writer::from_path(path)?;
    let mut h = vec!["algorithm".to_string()];
    h.extend(m.functions.iter().cloned());
    w.write_record(&h)?;
    for (a, row) in m.algorithms.iter().zip(&m.ranks) {
        let mut rec = vec![a.clone()];
        rec.extend(row.iter().map(|v| v.to_string()));
        w.write_record(&rec)?;
    }
    w.flush()?;
    Ok(())
}

fn write_outputs(dir: &Path, r: &StatsReport) -> Result<()> {
    fs::create_dir_all(dir).with_context(|| format!("creating {}", dir.display()))?;
    if let Some(m) = &r.competition_ranks {
        write_rank_csv(&dir.join("ranks.csv"), m)?;
    }
    if let Some(m) = &r.average_ranks {
        write_rank_csv(&dir.join("ranks_average.csv"), m)?;
    }
    if r.friedman.is_some() || r.quade.is_some() || r.nbest.is_some() {
        let mut w = csv::Writer::from_path(dir.join("tests.csv"))?;
        w.write_record(["algorithm", "friedman_rank", "quade_rank", "nbest"])?;
        for (i, a) in r.algorithms.iter().enumerate() {
            w.write_record([
                a.clone(),
                r.friedman
                    .as_ref()
                    .map_or(String::new(), |x| x.mean_ranks[i].to_string()),
                r.quade
                    .as_ref()
                    .map_or(String::new(), |x| x.weighted_ranks[i].to_string()),
                r.nbest.as_ref().map_or(String::new(), |x| x[i].to_string()),
            ])?;
        }
        w.flush()?;
    }
    if let Some(t) = &r.f1 {
        let mut w = csv::Writer::from_path(dir.join("f1_scores.csv"))?;
        let mut h = vec!["algorithm".to_string()];
        for g in &t.groups {
            h.push(g.clone());
            h.push(g.replacen('S', "R", 1));
        }
        h.push("total".into());
        w.write_record(&h)?;
        let totals = t.totals();
        for (i, a) in t.algorithms.iter().enumerate() {
            let mut rec = vec![a.clone()];
            for (sc, rk) in t.group_scores[i].iter().zip(&t.group_ranks[i]) {
                rec.push(sc.to_string());
                rec.push(rk.to_string());
            }
            rec.push(totals[i].to_string());
            w.write_record(&rec)?;
        }
        w.flush()?;
    }
    fs::write(
        dir.join("report.json"),
        serde_json::to_string_pretty(r)? + "\n",
    )?;
    fs::write(dir.join("report.txt"), &r.text)?;
    Ok(())
}

pub fn cmd_stats(args: &StatsArgs) -> Result<StatsReport> {
    let table = load_table(args)?;
    let m = table.median_matrix()?;
    if m.algorithms().len() < 2 && matches!(args.mode, StatsMode::Friedman | StatsMode::Quade) {
        bail!("statistical tests need at least two algorithms; add --with-fixture");
    }
    let report = analyze(&m, args.mode)?;
    write_outputs(&args.out.out, &report)?;
    Ok(report)
}
