//! Experiment harness: segmenter comparison, learning curves, per-category
//! MT scoring of external hypotheses, system selection and binned reports.

mod config;
mod harness;
mod report;
mod scoring;

pub use config::{default_english_bins, default_richness_bins, ExperimentConfig, HypFile};
pub use harness::{
    learning_curve, run_config_file, run_experiment, run_segmentation_eval, train_on_fraction,
    BinSet, CurveRow, ExperimentReport, FractionScores, ParallelCorpus, SegEvalRow,
    SelectionSummary,
};
pub use report::{
    bins_tsv, categories_tsv, curve_tsv, diagnostics_tsv, ratio3, score1, segmentation_tsv,
    selection_tsv, summary_json, summary_text, write_reports,
};
pub use scoring::{
    binned_report, eval_by_category, system_selection, Bin, CategoryRow, CategoryScore,
    CategoryScores, SelectionReport,
};
