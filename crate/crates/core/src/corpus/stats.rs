use std::collections::HashSet;
use std::fmt::Write as _;

use serde::Serialize;

use super::gold::GoldEntry;
use super::script::Lang;
use crate::error::{Error, Result};

/// Segmentation statistics for one group of gold words.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct LangStats {
    pub total_words: usize,
    pub segmented_words: usize,
    pub total_morphs: usize,
    pub unique_morphs: usize,
    pub max_morphs: usize,
    /// Fraction in [0, 1] of words with at least two morphs.
    pub segmented_pct: f64,
    pub morphs_per_word: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CorpusStats {
    pub egy: Option<LangStats>,
    pub en: Option<LangStats>,
    /// Every entry, including numbers and punctuation.
    pub all: LangStats,
}

fn group_stats<'a>(entries: impl Iterator<Item = &'a GoldEntry>) -> Option<LangStats> {
    let mut total_words = 0;
    let mut segmented_words = 0;
    let mut total_morphs = 0;
    let mut max_morphs = 0;
    let mut unique = HashSet::new();
    for e in entries {
        let n = e.morphs.len();
        total_words += 1;
        total_morphs += n;
        max_morphs = max_morphs.max(n);
        if n >= 2 {
            segmented_words += 1;
        }
        unique.extend(e.morphs.morphs().iter().map(String::as_str));
    }
    (total_words > 0).then(|| LangStats {
        total_words,
        segmented_words,
        total_morphs,
        unique_morphs: unique.len(),
        max_morphs,
        segmented_pct: segmented_words as f64 / total_words as f64,
        morphs_per_word: total_morphs as f64 / total_words as f64,
    })
}

pub fn corpus_stats(entries: &[GoldEntry]) -> Result<CorpusStats> {
    let all = group_stats(entries.iter())
        .ok_or_else(|| Error::EmptyInput("no gold entries".into()))?;
    Ok(CorpusStats {
        egy: group_stats(entries.iter().filter(|e| e.word.lang() == Lang::Egy)),
        en: group_stats(entries.iter().filter(|e| e.word.lang() == Lang::En)),
        all,
    })
}

impl CorpusStats {
    /// TSV with one column per group; ratios to 3 decimals, percentages to 1.
    pub fn to_tsv(&self) -> String {
        let groups = [("EGY", self.egy.as_ref()), ("EN", self.en.as_ref()), ("All", Some(&self.all))];
        let mut out = String::from("statistic");
        for (name, _) in &groups {
            let _ = write!(out, "\t{name}");
        }
        out.push('\n');
        type Cell = fn(&LangStats) -> String;
        let rows: [(&str, Cell); 7] = [
            ("total_words", |s| s.total_words.to_string()),
            ("segmented_words", |s| s.segmented_words.to_string()),
            ("total_morphs", |s| s.total_morphs.to_string()),
            ("unique_morphs", |s| s.unique_morphs.to_string()),
            ("segmented_pct", |s| format!("{:.1}%", 100.0 * s.segmented_pct)),
            ("morphs_per_word", |s| format!("{:.3}", s.morphs_per_word)),
            ("max_morphs", |s| s.max_morphs.to_string()),
        ];
        for (name, cell) in rows {
            out.push_str(name);
            for (_, stats) in &groups {
                out.push('\t');
                out.push_str(&stats.map_or_else(|| "-".to_string(), cell));
            }
            out.push('\n');
        }
        out
    }
}
