//! EMMA: precision and recall of predicted morphs after an optimal
//! one-to-one mapping between predicted and gold morph types.

use std::collections::{BTreeMap, HashMap};

use serde::Serialize;

use super::matching::max_weight_matching;
use crate::corpus::Lang;
use crate::error::{Error, Result};
use crate::segment::Analysis;

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct PrfScores {
    pub precision: f64,
    pub recall: f64,
    pub f1: f64,
    pub matched: u64,
    pub predicted: u64,
    pub gold: u64,
    pub words: usize,
}

impl PrfScores {
    pub fn new(matched: u64, predicted: u64, gold: u64, words: usize) -> PrfScores {
        let ratio = |a: u64, b: u64| if b == 0 { 0.0 } else { a as f64 / b as f64 };
        let precision = ratio(matched, predicted);
        let recall = ratio(matched, gold);
        let f1 = if precision + recall > 0.0 {
            2.0 * precision * recall / (precision + recall)
        } else {
            0.0
        };
        PrfScores {
            precision,
            recall,
            f1,
            matched,
            predicted,
            gold,
            words,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct EmmaReport {
    pub all: PrfScores,
    /// `None` when no word carries that language.
    pub egy: Option<PrfScores>,
    pub en: Option<PrfScores>,
    /// Matched `(predicted type, gold type)` pairs over all words.
    pub matching: Vec<(String, String)>,
}

fn check_aligned(pred: usize, gold: usize, langs: Option<usize>) -> Result<()> {
    if pred != gold {
        return Err(Error::Alignment(format!(
            "{pred} predicted analyses but {gold} gold analyses"
        )));
    }
    if let Some(l) = langs.filter(|&l| l != gold) {
        return Err(Error::Alignment(format!("{l} language tags for {gold} words")));
    }
    Ok(())
}

/// EMMA over one set of aligned words.
pub fn emma_scores(pred: &[&Analysis], gold: &[&Analysis]) -> Result<(PrfScores, Vec<(String, String)>)> {
    check_aligned(pred.len(), gold.len(), None)?;
    let mut pred_ids: BTreeMap<&str, usize> = BTreeMap::new();
    let mut gold_ids: BTreeMap<&str, usize> = BTreeMap::new();
    for a in pred {
        for m in a.morphs() {
            let next = pred_ids.len();
            pred_ids.entry(m).or_insert(next);
        }
    }
    for a in gold {
        for m in a.morphs() {
            let next = gold_ids.len();
            gold_ids.entry(m).or_insert(next);
        }
    }
    let mut weights: HashMap<(usize, usize), u64> = HashMap::new();
    let (mut n_pred, mut n_gold) = (0u64, 0u64);
    for (p, g) in pred.iter().zip(gold) {
        n_pred += p.len() as u64;
        n_gold += g.len() as u64;
        let mut pc: BTreeMap<usize, u64> = BTreeMap::new();
        let mut gc: BTreeMap<usize, u64> = BTreeMap::new();
        for m in p.morphs() {
            *pc.entry(pred_ids[m.as_str()]).or_insert(0) += 1;
        }
        for m in g.morphs() {
            *gc.entry(gold_ids[m.as_str()]).or_insert(0) += 1;
        }
        for (&pi, &pn) in &pc {
            for (&gi, &gn) in &gc {
                *weights.entry((pi, gi)).or_insert(0) += pn.min(gn);
            }
        }
    }
    let mut edges: Vec<(usize, usize, u64)> = weights.into_iter().map(|((p, g), w)| (p, g, w)).collect();
    edges.sort_unstable();
    let (matched, pairs) = max_weight_matching(pred_ids.len(), gold_ids.len(), &edges);
    let pred_names: BTreeMap<usize, &str> = pred_ids.iter().map(|(&m, &i)| (i, m)).collect();
    let gold_names: BTreeMap<usize, &str> = gold_ids.iter().map(|(&m, &i)| (i, m)).collect();
    let mut matching: Vec<(String, String)> = pairs
        .into_iter()
        .map(|(p, g)| (pred_names[&p].to_string(), gold_names[&g].to_string()))
        .collect();
    matching.sort();
    Ok((PrfScores::new(matched, n_pred, n_gold, pred.len()), matching))
}

/// EMMA for all words and, re-matched on each subset, per language.
/// Language-neutral words (digits, punctuation) count only towards All.
pub fn emma(pred: &[Analysis], gold: &[Analysis], langs: &[Lang]) -> Result<EmmaReport> {
    check_aligned(pred.len(), gold.len(), Some(langs.len()))?;
    if pred.is_empty() {
        return Err(Error::EmptyInput("no words to evaluate".into()));
    }
    let all_p: Vec<&Analysis> = pred.iter().collect();
    let all_g: Vec<&Analysis> = gold.iter().collect();
    let (all, matching) = emma_scores(&all_p, &all_g)?;
    let subset = |lang: Lang| -> Result<Option<PrfScores>> {
        let idx: Vec<usize> = (0..pred.len()).filter(|&i| langs[i] == lang).collect();
        if idx.is_empty() {
            return Ok(None);
        }
        let p: Vec<&Analysis> = idx.iter().map(|&i| &pred[i]).collect();
        let g: Vec<&Analysis> = idx.iter().map(|&i| &gold[i]).collect();
        Ok(Some(emma_scores(&p, &g)?.0))
    };
    Ok(EmmaReport {
        all,
        egy: subset(Lang::Egy)?,
        en: subset(Lang::En)?,
        matching,
    })
}
