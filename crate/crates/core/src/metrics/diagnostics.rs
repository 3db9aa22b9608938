//! Over- and under-segmentation counts against gold analyses.

use serde::Serialize;

use crate::corpus::Lang;
use crate::error::{Error, Result};
use crate::segment::Analysis;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize)]
pub struct DiagCounts {
    pub under: usize,
    pub over: usize,
    /// Correct morph count where the gold word is segmented.
    pub correct_seg: usize,
    /// Correct morph count where the gold word is a single morph.
    pub correct_unseg: usize,
}

impl DiagCounts {
    pub fn correct(&self) -> usize {
        self.correct_seg + self.correct_unseg
    }

    pub fn total(&self) -> usize {
        self.under + self.over + self.correct()
    }

    fn record(&mut self, pred: &Analysis, gold: &Analysis) {
        use std::cmp::Ordering::*;
        match pred.len().cmp(&gold.len()) {
            Less => self.under += 1,
            Greater => self.over += 1,
            Equal if gold.len() > 1 => self.correct_seg += 1,
            Equal => self.correct_unseg += 1,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize)]
pub struct SegDiagnostics {
    pub egy: DiagCounts,
    pub en: DiagCounts,
    pub all: DiagCounts,
}

/// Counts by morph number only: a word with the right number of morphs is
/// "correct" even if the boundaries differ.
pub fn seg_diagnostics(pred: &[Analysis], gold: &[Analysis], langs: &[Lang]) -> Result<SegDiagnostics> {
    if pred.len() != gold.len() || langs.len() != gold.len() {
        return Err(Error::Alignment(format!(
            "{} predicted, {} gold, {} language tags",
            pred.len(),
            gold.len(),
            langs.len()
        )));
    }
    let mut d = SegDiagnostics::default();
    for ((p, g), lang) in pred.iter().zip(gold).zip(langs) {
        d.all.record(p, g);
        match lang {
            Lang::Egy => d.egy.record(p, g),
            Lang::En => d.en.record(p, g),
            Lang::Neutral => {}
        }
    }
    Ok(d)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn a(s: &str) -> Analysis {
        Analysis::new(s.split('#').map(String::from).collect()).unwrap()
    }

    #[test]
    fn partitions_words() {
        let gold = [a("a#b"), a("c"), a("d#e"), a("f")];
        let pred = [a("ab"), a("c"), a("d#e"), a("f#g")];
        let d = seg_diagnostics(&pred, &gold, &[Lang::En; 4]).unwrap();
        assert_eq!((d.en.under, d.en.over, d.en.correct_seg, d.en.correct_unseg), (1, 1, 1, 1));
        assert_eq!(d.all.total(), 4);
        assert_eq!(d.egy.total(), 0);
    }
}
