//! Experiment runs: segmentation evaluation against gold, learning curves
//! over training-data fractions, and MT scoring of supplied hypotheses.

use std::collections::{BTreeMap, BTreeSet};
use std::path::Path;

use serde::Serialize;

use super::config::ExperimentConfig;
use super::scoring::{
    binned_report, eval_by_category, system_selection, Bin, CategoryScore, CategoryScores,
};
use crate::corpus::{
    categorize, english_percentage, read_lines, subsample_indices, GoldSentence, Lang, McsDetector,
    Sentence, SentenceCategory,
};
use crate::error::{Error, Result};
use crate::metrics::{
    emma, oov_rate, seg_diagnostics, sentence_chrf, ChrfConfig, ChrfReport, EmmaReport, OovReport,
    SegDiagnostics,
};
use crate::segment::{word_freqs, Analysis, Pipeline, SegSpec, TrainData};

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SegEvalRow {
    pub name: String,
    pub emma: EmmaReport,
    pub diagnostics: SegDiagnostics,
}

/// EMMA and diagnostics of every pipeline on the gold words.
pub fn run_segmentation_eval(pipelines: &[(String, Pipeline)], gold: &[GoldSentence]) -> Result<Vec<SegEvalRow>> {
    let entries: Vec<_> = gold.iter().flat_map(|s| &s.entries).collect();
    if entries.is_empty() {
        return Err(Error::EmptyInput("gold file has no words".into()));
    }
    let gold_analyses: Vec<Analysis> = entries.iter().map(|e| e.morphs.clone()).collect();
    let langs: Vec<Lang> = entries.iter().map(|e| e.word.lang()).collect();
    pipelines
        .iter()
        .map(|(name, p)| {
            let pred: Vec<Analysis> = entries.iter().map(|e| p.segment(e.word.surface())).collect();
            Ok(SegEvalRow {
                name: name.clone(),
                emma: emma(&pred, &gold_analyses, &langs)?,
                diagnostics: seg_diagnostics(&pred, &gold_analyses, &langs)?,
            })
        })
        .collect()
}

/// Aligned training corpus; `tgt` is empty when only a source side exists.
#[derive(Debug, Clone, Default)]
pub struct ParallelCorpus {
    pub src: Vec<String>,
    pub tgt: Vec<String>,
}

impl ParallelCorpus {
    pub fn new(src: Vec<String>, tgt: Vec<String>) -> Result<ParallelCorpus> {
        if !tgt.is_empty() && !src.is_empty() && src.len() != tgt.len() {
            return Err(Error::Alignment(format!(
                "source has {} lines but target has {}; first offending line {}",
                src.len(),
                tgt.len(),
                src.len().min(tgt.len()) + 1
            )));
        }
        Ok(ParallelCorpus { src, tgt })
    }

    pub fn len(&self) -> usize {
        self.src.len().max(self.tgt.len())
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// Word frequencies of the lines at `indices`.
    pub fn train_data(&self, indices: &[usize]) -> TrainData {
        let side = |lines: &[String]| {
            word_freqs(
                indices
                    .iter()
                    .filter_map(|&i| lines.get(i))
                    .flat_map(|l| l.split_whitespace()),
            )
        };
        TrainData {
            src: side(&self.src),
            tgt: side(&self.tgt),
        }
    }
}

/// Trains (or just builds) a pipeline on a fraction of the corpus.
pub fn train_on_fraction(spec: &SegSpec, corpus: &ParallelCorpus, fraction: f64, seed: u64) -> Result<(Pipeline, Vec<usize>)> {
    let indices = subsample_indices(corpus.len(), fraction, seed)?;
    if spec.is_trainable() && corpus.is_empty() {
        return Err(Error::Config(format!("pipeline {spec} needs training data (train_src/train_tgt)")));
    }
    Ok((spec.train(&corpus.train_data(&indices), seed)?, indices))
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CurveRow {
    pub fraction: f64,
    pub pipeline: String,
    pub train_sentences: usize,
    pub oov_src: Option<OovReport>,
    pub oov_tgt: Option<OovReport>,
    /// Mean over dev source sentences of morph tokens per token.
    pub richness: Option<f64>,
    pub morphs_per_word_src: Option<f64>,
    pub morphs_per_word_tgt: Option<f64>,
    /// Mean morph tokens per dev sentence.
    pub src_len: Option<f64>,
    pub tgt_len: Option<f64>,
    #[serde(skip)]
    pub sentence_richness: Vec<Option<f64>>,
}

struct SideMeasures {
    oov: Option<OovReport>,
    morphs_per_word: Option<f64>,
    mean_len: Option<f64>,
    richness: Vec<Option<f64>>,
}

fn measure_side(p: &Pipeline, train_lines: &[String], indices: &[usize], dev: &[String]) -> Result<SideMeasures> {
    let mut vocab: BTreeSet<String> = p.intrinsic_vocabulary();
    let train_types: BTreeSet<&str> = indices
        .iter()
        .filter_map(|&i| train_lines.get(i))
        .flat_map(|l| l.split_whitespace())
        .collect();
    for w in train_types {
        vocab.extend(p.segment(w).into_morphs());
    }
    let mut morphs: Vec<String> = Vec::new();
    let mut richness = Vec::with_capacity(dev.len());
    let (mut words, mut sentences) = (0usize, 0usize);
    for line in dev {
        let before = morphs.len();
        let n = line.split_whitespace().count();
        for w in line.split_whitespace() {
            morphs.extend(p.segment(w).into_morphs());
        }
        words += n;
        if n > 0 {
            sentences += 1;
            richness.push(Some((morphs.len() - before) as f64 / n as f64));
        } else {
            richness.push(None);
        }
    }
    let oov = if morphs.is_empty() || train_lines.is_empty() {
        None
    } else {
        Some(oov_rate(&vocab, morphs.iter().map(String::as_str))?)
    };
    Ok(SideMeasures {
        oov,
        morphs_per_word: (words > 0).then(|| morphs.len() as f64 / words as f64),
        mean_len: (sentences > 0).then(|| morphs.len() as f64 / sentences as f64),
        richness,
    })
}

/// Segmentation-side measurements for each (fraction, pipeline) cell.
pub fn learning_curve(
    pipelines: &[(String, SegSpec)],
    corpus: &ParallelCorpus,
    dev_src: &[String],
    dev_tgt: &[String],
    fractions: &[f64],
    seed: u64,
) -> Result<Vec<CurveRow>> {
    let mut rows = Vec::new();
    for &fraction in fractions {
        for (name, spec) in pipelines {
            let (p, indices) = train_on_fraction(spec, corpus, fraction, seed)?;
            let src = measure_side(&p, &corpus.src, &indices, dev_src)?;
            let tgt = measure_side(&p, &corpus.tgt, &indices, dev_tgt)?;
            let known: Vec<f64> = src.richness.iter().flatten().copied().collect();
            rows.push(CurveRow {
                fraction,
                pipeline: name.clone(),
                train_sentences: indices.len(),
                oov_src: src.oov,
                oov_tgt: tgt.oov,
                richness: (!known.is_empty()).then(|| known.iter().sum::<f64>() / known.len() as f64),
                morphs_per_word_src: src.morphs_per_word,
                morphs_per_word_tgt: tgt.morphs_per_word,
                src_len: src.mean_len,
                tgt_len: tgt.mean_len,
                sentence_richness: src.richness,
            });
        }
    }
    Ok(rows)
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct FractionScores {
    pub fraction: f64,
    pub systems: Vec<CategoryScores>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BinSet {
    pub fraction: f64,
    pub system: String,
    /// `richness` or `english_pct`.
    pub feature: &'static str,
    pub bins: Vec<Bin>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SelectionSummary {
    pub fraction: f64,
    pub routes: BTreeMap<String, String>,
    pub report: ChrfReport,
    pub categories: Vec<CategoryScore>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ExperimentReport {
    pub seed: u64,
    pub fractions: Vec<f64>,
    pub mcs_mode: &'static str,
    pub segmentation: Option<Vec<SegEvalRow>>,
    pub curve: Vec<CurveRow>,
    pub categories: Vec<FractionScores>,
    pub bins: Vec<BinSet>,
    pub selection: Option<SelectionSummary>,
    pub notes: Vec<String>,
}

fn read_opt(path: &Option<std::path::PathBuf>) -> Result<Vec<String>> {
    path.as_deref().map_or(Ok(Vec::new()), read_lines)
}

fn categories_of(lines: &[String], detector: &McsDetector) -> (Vec<SentenceCategory>, Vec<Option<Sentence>>) {
    let sentences: Vec<Option<Sentence>> = lines
        .iter()
        .enumerate()
        .map(|(i, l)| Sentence::from_tokenized(i, l))
        .collect();
    let cats = sentences
        .iter()
        .map(|s| s.as_ref().map_or(SentenceCategory::Undetermined, |s| categorize(s, detector)))
        .collect();
    (cats, sentences)
}

pub fn run_experiment(cfg: &ExperimentConfig) -> Result<ExperimentReport> {
    cfg.validate()?;
    let mut notes = Vec::new();
    let corpus = ParallelCorpus::new(read_opt(&cfg.train_src)?, read_opt(&cfg.train_tgt)?)?;
    let dev_src = read_opt(&cfg.dev_src)?;
    let dev_tgt = read_opt(&cfg.dev_tgt)?;
    if !dev_src.is_empty() && !dev_tgt.is_empty() && dev_src.len() != dev_tgt.len() {
        return Err(Error::Alignment(format!(
            "dev source has {} lines but dev target has {}; first offending line {}",
            dev_src.len(),
            dev_tgt.len(),
            dev_src.len().min(dev_tgt.len()) + 1
        )));
    }

    let segmentation = match &cfg.gold {
        None => {
            notes.push("segmentation evaluation skipped: no gold file configured".into());
            None
        }
        Some(path) => {
            if !path.exists() {
                return Err(Error::Config(format!("gold file {} does not exist", path.display())));
            }
            let gold = crate::corpus::load_gold(path)?;
            let mut trained = Vec::new();
            for (name, spec) in &cfg.pipelines {
                trained.push((name.clone(), train_on_fraction(spec, &corpus, 1.0, cfg.seed)?.0));
            }
            notes.push("per-language EMMA assigns mixed-script words to EGY".into());
            Some(run_segmentation_eval(&trained, &gold)?)
        }
    };

    let curve = if dev_src.is_empty() && dev_tgt.is_empty() {
        notes.push("learning curve skipped: no dev corpus configured".into());
        Vec::new()
    } else {
        learning_curve(&cfg.pipelines, &corpus, &dev_src, &dev_tgt, &cfg.fractions, cfg.seed)?
    };

    let chrf = ChrfConfig::default();
    let detector = McsDetector::new(cfg.mcs_mode);
    let mut categories = Vec::new();
    let mut bins = Vec::new();
    let mut selection = None;
    if cfg.hyps.is_empty() {
        notes.push("MT scores unavailable: no hypothesis files supplied; segmentation-side proxies only".into());
    } else if dev_src.is_empty() || dev_tgt.is_empty() {
        return Err(Error::Config("hypothesis files need dev_src and dev_tgt".into()));
    } else {
        let (cats, sentences) = categories_of(&dev_src, &detector);
        let english: Vec<Option<f64>> = sentences
            .iter()
            .map(|s| s.as_ref().and_then(english_percentage))
            .collect();
        let mut hyp_lines: BTreeMap<(usize, String), Vec<String>> = BTreeMap::new();
        for (fi, &fraction) in cfg.fractions.iter().enumerate() {
            let mut systems = Vec::new();
            for (name, _) in &cfg.pipelines {
                if let Some(path) = cfg.hyp_for(fraction, name) {
                    let lines = read_lines(path)?;
                    systems.push((name.clone(), lines.clone()));
                    hyp_lines.insert((fi, name.clone()), lines);
                }
            }
            if systems.is_empty() {
                continue;
            }
            let scored = eval_by_category(&systems, &dev_tgt, &cats, &chrf)?;
            for (name, hyps) in &systems {
                let sentence_scores: Vec<f64> = hyps
                    .iter()
                    .zip(&dev_tgt)
                    .map(|(h, r)| sentence_chrf(h, r, &chrf))
                    .collect();
                let richness = curve
                    .iter()
                    .find(|row| row.fraction == fraction && &row.pipeline == name)
                    .map(|row| row.sentence_richness.clone())
                    .unwrap_or_else(|| vec![None; dev_src.len()]);
                bins.push(BinSet {
                    fraction,
                    system: name.clone(),
                    feature: "richness",
                    bins: binned_report(&richness, &sentence_scores, &cfg.richness_bins)?,
                });
                bins.push(BinSet {
                    fraction,
                    system: name.clone(),
                    feature: "english_pct",
                    bins: binned_report(&english, &sentence_scores, &cfg.english_bins)?,
                });
            }
            categories.push(FractionScores {
                fraction,
                systems: scored,
            });
        }
        notes.push("binned reports use sentence-level chrF2++".into());
        notes.push("paired bootstrap significance testing is not available".into());

        if !cfg.selection.is_empty() {
            let fi = cfg.fractions.len() - 1;
            let fraction = cfg.fractions[fi];
            let mut routing = BTreeMap::new();
            let mut routes = BTreeMap::new();
            for (cat, name) in &cfg.selection {
                let lines = hyp_lines.get(&(fi, name.clone())).ok_or_else(|| {
                    Error::Config(format!("selection routes {cat} to {name:?}, which has no hyp file at fraction {fraction}"))
                })?;
                routing.insert(*cat, (name.clone(), lines.clone()));
                routes.insert(cat.name().to_string(), name.clone());
            }
            let sel = system_selection(&routing, &dev_tgt, &cats, &chrf)?;
            selection = Some(SelectionSummary {
                fraction,
                routes,
                report: sel.report,
                categories: sel.categories,
            });
        }
    }

    Ok(ExperimentReport {
        seed: cfg.seed,
        fractions: cfg.fractions.clone(),
        mcs_mode: cfg.mcs_mode.name(),
        segmentation,
        curve,
        categories,
        bins,
        selection,
        notes,
    })
}

/// Reads a config file and runs it.
pub fn run_config_file(path: &Path) -> Result<ExperimentReport> {
    run_experiment(&ExperimentConfig::load(path)?)
}
