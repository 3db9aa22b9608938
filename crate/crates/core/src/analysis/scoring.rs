//! MT scoring of external hypothesis files: per-category chrF2++ with ranks,
//! system selection and binned sentence-level reports.

use std::collections::BTreeMap;

use serde::Serialize;

use crate::corpus::SentenceCategory;
use crate::error::{Error, Result};
use crate::metrics::{report_from_stats, score_stats, sentence_stats, ChrfConfig, ChrfReport, ChrfStats};

/// Report rows. `Cs` covers every code-switched sentence, MCS included, so
/// `Egy + En + Cs + Undetermined = All`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize)]
pub enum CategoryRow {
    All,
    Egy,
    En,
    Cs,
    Mcs,
    Undetermined,
}

impl CategoryRow {
    pub const ROWS: [CategoryRow; 6] = [
        CategoryRow::All,
        CategoryRow::Egy,
        CategoryRow::En,
        CategoryRow::Cs,
        CategoryRow::Mcs,
        CategoryRow::Undetermined,
    ];

    pub fn contains(self, cat: SentenceCategory) -> bool {
        match self {
            CategoryRow::All => true,
            CategoryRow::Egy => cat == SentenceCategory::MonoEgy,
            CategoryRow::En => cat == SentenceCategory::MonoEn,
            CategoryRow::Cs => cat.is_cs(),
            CategoryRow::Mcs => cat == SentenceCategory::Mcs,
            CategoryRow::Undetermined => cat == SentenceCategory::Undetermined,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            CategoryRow::All => "All",
            CategoryRow::Egy => "EGY",
            CategoryRow::En => "EN",
            CategoryRow::Cs => "CS",
            CategoryRow::Mcs => "MCS",
            CategoryRow::Undetermined => "UNDETERMINED",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CategoryScore {
    pub row: CategoryRow,
    pub sentences: usize,
    /// `None` for an empty category.
    pub score: Option<f64>,
    /// Filled when at least two systems are compared.
    pub rank: Option<usize>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CategoryScores {
    pub system: String,
    pub rows: Vec<CategoryScore>,
}

fn check_lengths(what: &str, got: usize, refs: usize) -> Result<()> {
    if got != refs {
        return Err(Error::Alignment(format!(
            "{what} has {got} lines but the reference has {refs}; first offending line {}",
            got.min(refs) + 1
        )));
    }
    Ok(())
}

fn per_category(hyps: &[String], refs: &[String], cats: &[SentenceCategory], cfg: &ChrfConfig) -> Vec<CategoryScore> {
    let mut stats: BTreeMap<CategoryRow, (usize, ChrfStats)> = CategoryRow::ROWS
        .iter()
        .map(|&r| (r, (0, ChrfStats::zeros(cfg))))
        .collect();
    for ((h, r), &cat) in hyps.iter().zip(refs).zip(cats) {
        let s = sentence_stats(h, r, cfg);
        for row in CategoryRow::ROWS {
            if row.contains(cat) {
                let entry = stats.get_mut(&row).expect("all rows present");
                entry.0 += 1;
                entry.1.add(&s);
            }
        }
    }
    CategoryRow::ROWS
        .iter()
        .map(|row| {
            let (n, s) = &stats[row];
            CategoryScore {
                row: *row,
                sentences: *n,
                score: (*n > 0).then(|| score_stats(s, cfg)),
                rank: None,
            }
        })
        .collect()
}

/// Competition ranking, best score first; exact ties share a rank.
fn fill_ranks(systems: &mut [CategoryScores]) {
    if systems.len() < 2 {
        return;
    }
    for i in 0..CategoryRow::ROWS.len() {
        let scores: Vec<Option<f64>> = systems.iter().map(|s| s.rows[i].score).collect();
        for (k, sys) in systems.iter_mut().enumerate() {
            if let Some(mine) = scores[k] {
                let better = scores.iter().flatten().filter(|&&x| x > mine).count();
                sys.rows[i].rank = Some(better + 1);
            }
        }
    }
}

/// Scores every system on each sentence category of the source side.
pub fn eval_by_category(
    systems: &[(String, Vec<String>)],
    refs: &[String],
    cats: &[SentenceCategory],
    cfg: &ChrfConfig,
) -> Result<Vec<CategoryScores>> {
    check_lengths("the source side", cats.len(), refs.len())?;
    if refs.is_empty() {
        return Err(Error::EmptyInput("no reference sentences".into()));
    }
    let mut out = Vec::with_capacity(systems.len());
    for (name, hyps) in systems {
        check_lengths(&format!("hypothesis {name:?}"), hyps.len(), refs.len())?;
        out.push(CategoryScores {
            system: name.clone(),
            rows: per_category(hyps, refs, cats, cfg),
        });
    }
    fill_ranks(&mut out);
    Ok(out)
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SelectionReport {
    pub report: ChrfReport,
    pub categories: Vec<CategoryScore>,
    /// Which routed system produced each line.
    pub chosen: Vec<String>,
    pub composite: Vec<String>,
}

/// Builds a composite hypothesis by routing every sentence to the system
/// chosen for its category, then scores it. MCS sentences fall back to the
/// CS route when MCS has none of its own.
pub fn system_selection(
    routing: &BTreeMap<SentenceCategory, (String, Vec<String>)>,
    refs: &[String],
    cats: &[SentenceCategory],
    cfg: &ChrfConfig,
) -> Result<SelectionReport> {
    check_lengths("the source side", cats.len(), refs.len())?;
    if refs.is_empty() {
        return Err(Error::EmptyInput("no reference sentences".into()));
    }
    for (name, hyps) in routing.values() {
        check_lengths(&format!("hypothesis {name:?}"), hyps.len(), refs.len())?;
    }
    let mut composite = Vec::with_capacity(refs.len());
    let mut chosen = Vec::with_capacity(refs.len());
    for (i, &cat) in cats.iter().enumerate() {
        let route = routing.get(&cat).or_else(|| {
            (cat == SentenceCategory::Mcs)
                .then(|| routing.get(&SentenceCategory::Cs))
                .flatten()
        });
        let (name, hyps) = route.ok_or_else(|| {
            Error::Config(format!("line {}: no system routed for category {cat}", i + 1))
        })?;
        composite.push(hyps[i].clone());
        chosen.push(name.clone());
    }
    let mut total = ChrfStats::zeros(cfg);
    for (h, r) in composite.iter().zip(refs) {
        total.add(&sentence_stats(h, r, cfg));
    }
    Ok(SelectionReport {
        report: report_from_stats(total, refs.len(), cfg),
        categories: per_category(&composite, refs, cats, cfg),
        chosen,
        composite,
    })
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Bin {
    /// `-inf` for the underflow bin.
    pub lo: f64,
    /// `inf` for the overflow bin.
    pub hi: f64,
    pub sentences: usize,
    pub mean: Option<f64>,
}

/// Mean score per half-open bin `[lo, hi)`. The last edge opens an overflow
/// bin; values below the first edge get an underflow bin only if any exist.
/// Sentences without a feature value are left out.
pub fn binned_report(features: &[Option<f64>], scores: &[f64], edges: &[f64]) -> Result<Vec<Bin>> {
    if edges.is_empty() || !edges.windows(2).all(|w| w[0] < w[1]) || edges.iter().any(|e| e.is_nan()) {
        return Err(Error::Argument(format!("bin edges must be nonempty and increasing, got {edges:?}")));
    }
    if features.len() != scores.len() {
        return Err(Error::Alignment(format!(
            "{} feature values for {} scores",
            features.len(),
            scores.len()
        )));
    }
    let mut bounds = vec![(f64::NEG_INFINITY, edges[0])];
    for w in edges.windows(2) {
        bounds.push((w[0], w[1]));
    }
    bounds.push((edges[edges.len() - 1], f64::INFINITY));
    let mut sums = vec![(0usize, 0.0f64); bounds.len()];
    for (f, &s) in features.iter().zip(scores) {
        let Some(f) = f else { continue };
        let i = bounds
            .iter()
            .position(|&(lo, hi)| *f >= lo && *f < hi)
            .unwrap_or(bounds.len() - 1);
        sums[i].0 += 1;
        sums[i].1 += s;
    }
    Ok(bounds
        .into_iter()
        .zip(sums)
        .enumerate()
        .filter(|(i, (_, (n, _)))| *i > 0 || *n > 0)
        .map(|(_, ((lo, hi), (n, sum)))| Bin {
            lo,
            hi,
            sentences: n,
            mean: (n > 0).then(|| sum / n as f64),
        })
        .collect())
}
