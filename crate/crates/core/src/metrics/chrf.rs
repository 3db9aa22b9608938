//! chrF2++: character n-grams (orders 1..=6) and word n-grams (orders 1..=2)
//! combined into an F-score with recall weighted by beta = 2.
//!
//! [`ChrfMode::Reference`] mirrors the widely used reference scorer:
//! precision and recall are each averaged over the orders that occur on both
//! sides, and a single F-beta is taken from the two averages. Character
//! n-grams ignore whitespace; word n-grams split a trailing (else leading)
//! ASCII punctuation mark off each word. [`ChrfMode::OrderMean`] instead
//! averages one F-beta per order, skipping orders with no reference n-grams.

use std::collections::HashMap;

use serde::Serialize;

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize)]
pub enum ChrfMode {
    #[default]
    Reference,
    OrderMean,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ChrfConfig {
    pub char_order: usize,
    pub word_order: usize,
    pub beta: f64,
    pub mode: ChrfMode,
}

impl Default for ChrfConfig {
    fn default() -> Self {
        ChrfConfig {
            char_order: 6,
            word_order: 2,
            beta: 2.0,
            mode: ChrfMode::Reference,
        }
    }
}

/// Counts for one n-gram order. `hyp` is zero when the reference has no
/// n-grams of that order.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize)]
pub struct OrderCounts {
    pub hyp: u64,
    pub reference: u64,
    pub matches: u64,
}

/// Per-order counts, character orders first. Sums over sentences give the
/// corpus statistics.
#[derive(Debug, Clone, PartialEq, Eq, Default, Serialize)]
pub struct ChrfStats {
    pub orders: Vec<OrderCounts>,
}

impl ChrfStats {
    pub fn zeros(cfg: &ChrfConfig) -> ChrfStats {
        ChrfStats {
            orders: vec![OrderCounts::default(); cfg.char_order + cfg.word_order],
        }
    }

    pub fn add(&mut self, other: &ChrfStats) {
        if self.orders.is_empty() {
            self.orders = vec![OrderCounts::default(); other.orders.len()];
        }
        for (a, b) in self.orders.iter_mut().zip(&other.orders) {
            a.hyp += b.hyp;
            a.reference += b.reference;
            a.matches += b.matches;
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct OrderComponent {
    /// `char` or `word`.
    pub kind: &'static str,
    pub n: usize,
    pub precision: f64,
    pub recall: f64,
    pub f: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ChrfReport {
    pub score: f64,
    pub config: ChrfConfig,
    pub sentences: usize,
    pub components: Vec<OrderComponent>,
    pub stats: ChrfStats,
}

fn ngram_counts<T: std::hash::Hash + Eq + Clone>(items: &[T], n: usize) -> HashMap<Vec<T>, u64> {
    let mut out = HashMap::new();
    if n == 0 || items.len() < n {
        return out;
    }
    for w in items.windows(n) {
        *out.entry(w.to_vec()).or_insert(0) += 1;
    }
    out
}

fn match_counts<T: std::hash::Hash + Eq>(hyp: &HashMap<T, u64>, reference: &HashMap<T, u64>) -> OrderCounts {
    let mut counts = OrderCounts::default();
    for (g, &c) in hyp {
        counts.hyp += c;
        if let Some(&r) = reference.get(g) {
            counts.matches += c.min(r);
        }
    }
    counts.reference = reference.values().sum();
    if reference.is_empty() {
        counts.hyp = 0;
    }
    counts
}

/// Word tokens with one edge punctuation mark split off.
pub fn word_tokens(sentence: &str) -> Vec<String> {
    let mut out = Vec::new();
    for w in sentence.split_whitespace() {
        let chars: Vec<char> = w.chars().collect();
        if chars.len() == 1 {
            out.push(w.to_string());
        } else if chars[chars.len() - 1].is_ascii_punctuation() {
            out.push(chars[..chars.len() - 1].iter().collect());
            out.push(chars[chars.len() - 1].to_string());
        } else if chars[0].is_ascii_punctuation() {
            out.push(chars[0].to_string());
            out.push(chars[1..].iter().collect());
        } else {
            out.push(w.to_string());
        }
    }
    out
}

pub fn sentence_stats(hyp: &str, reference: &str, cfg: &ChrfConfig) -> ChrfStats {
    let hc: Vec<char> = hyp.chars().filter(|c| !c.is_whitespace()).collect();
    let rc: Vec<char> = reference.chars().filter(|c| !c.is_whitespace()).collect();
    let hw = word_tokens(hyp);
    let rw = word_tokens(reference);
    let mut orders = Vec::with_capacity(cfg.char_order + cfg.word_order);
    for n in 1..=cfg.char_order {
        orders.push(match_counts(&ngram_counts(&hc, n), &ngram_counts(&rc, n)));
    }
    for n in 1..=cfg.word_order {
        orders.push(match_counts(&ngram_counts(&hw, n), &ngram_counts(&rw, n)));
    }
    ChrfStats { orders }
}

fn f_beta(p: f64, r: f64, beta: f64) -> f64 {
    let b2 = beta * beta;
    let denom = b2 * p + r;
    if denom > 0.0 {
        (1.0 + b2) * p * r / denom
    } else {
        0.0
    }
}

pub fn score_stats(stats: &ChrfStats, cfg: &ChrfConfig) -> f64 {
    match cfg.mode {
        ChrfMode::Reference => {
            let (mut sum_p, mut sum_r, mut effective) = (0.0, 0.0, 0usize);
            for o in &stats.orders {
                if o.hyp > 0 && o.reference > 0 {
                    sum_p += o.matches as f64 / o.hyp as f64;
                    sum_r += o.matches as f64 / o.reference as f64;
                    effective += 1;
                }
            }
            if effective == 0 {
                return 0.0;
            }
            let (p, r) = (sum_p / effective as f64, sum_r / effective as f64);
            if p + r > 0.0 {
                100.0 * f_beta(p, r, cfg.beta)
            } else {
                0.0
            }
        }
        ChrfMode::OrderMean => {
            let fs: Vec<f64> = stats
                .orders
                .iter()
                .filter(|o| o.reference > 0)
                .map(|o| {
                    let p = if o.hyp > 0 { o.matches as f64 / o.hyp as f64 } else { 0.0 };
                    f_beta(p, o.matches as f64 / o.reference as f64, cfg.beta)
                })
                .collect();
            if fs.is_empty() {
                0.0
            } else {
                100.0 * fs.iter().sum::<f64>() / fs.len() as f64
            }
        }
    }
}

pub fn sentence_chrf(hyp: &str, reference: &str, cfg: &ChrfConfig) -> f64 {
    score_stats(&sentence_stats(hyp, reference, cfg), cfg)
}

pub fn report_from_stats(stats: ChrfStats, sentences: usize, cfg: &ChrfConfig) -> ChrfReport {
    let components = stats
        .orders
        .iter()
        .enumerate()
        .map(|(i, o)| {
            let (kind, n) = if i < cfg.char_order { ("char", i + 1) } else { ("word", i + 1 - cfg.char_order) };
            let precision = if o.hyp > 0 { o.matches as f64 / o.hyp as f64 } else { 0.0 };
            let recall = if o.reference > 0 { o.matches as f64 / o.reference as f64 } else { 0.0 };
            OrderComponent {
                kind,
                n,
                precision,
                recall,
                f: f_beta(precision, recall, cfg.beta),
            }
        })
        .collect();
    ChrfReport {
        score: score_stats(&stats, cfg),
        config: *cfg,
        sentences,
        components,
        stats,
    }
}

/// Corpus-level chrF2++ with the default configuration.
pub fn chrf_pp(hyps: &[String], refs: &[String]) -> Result<ChrfReport> {
    chrf_with(hyps, refs, &ChrfConfig::default())
}

pub fn chrf_with(hyps: &[String], refs: &[String], cfg: &ChrfConfig) -> Result<ChrfReport> {
    if hyps.len() != refs.len() {
        return Err(Error::Alignment(format!(
            "{} hypotheses but {} references",
            hyps.len(),
            refs.len()
        )));
    }
    if hyps.is_empty() {
        return Err(Error::EmptyInput("no sentences to score".into()));
    }
    let mut total = ChrfStats::zeros(cfg);
    for (i, (h, r)) in hyps.iter().zip(refs).enumerate() {
        if r.trim().is_empty() {
            log::warn!("reference line {} is empty; its orders are skipped", i + 1);
        }
        total.add(&sentence_stats(h, r, cfg));
    }
    Ok(report_from_stats(total, hyps.len(), cfg))
}
