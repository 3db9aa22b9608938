//! Evaluation: EMMA, chrF2++, OOV rate and segmentation diagnostics.

mod chrf;
mod diagnostics;
mod emma;
mod matching;
mod oov;

pub use chrf::{
    chrf_pp, chrf_with, report_from_stats, score_stats, sentence_chrf, sentence_stats, word_tokens,
    ChrfConfig, ChrfMode, ChrfReport, ChrfStats, OrderComponent, OrderCounts,
};
pub use diagnostics::{seg_diagnostics, DiagCounts, SegDiagnostics};
pub use emma::{emma, emma_scores, EmmaReport, PrfScores};
pub use matching::max_weight_matching;
pub use oov::{oov_rate, OovReport};
