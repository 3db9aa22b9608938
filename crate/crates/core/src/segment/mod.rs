//! Segmentation models and their composition.
//!
//! Every segmenter maps a whitespace-free token to an [`Analysis`]: a
//! nonempty sequence of nonempty morphs whose concatenation is the token after
//! the segmenter's declared normalization (Alif/Ya for the Arabic rules,
//! identity everywhere else).

mod arabic;
mod bpe;
mod english;
pub mod format;
mod io;
mod mdl;
mod pipeline;
mod spec;

pub use arabic::{ArRuleSet, ArScheme};
pub use bpe::{train_bpe, BpeModel, DEFAULT_MARKER};
pub use english::EnRuleSet;
pub use io::{load_model, model_from_str, model_to_string, save_model};
pub use mdl::{
    train_mdl, train_mdl_with_report, Dampening, MdlAlgorithm, MdlModel, MdlParams, MdlTrainReport,
};
pub use pipeline::{Pipeline, Router, Stage};
pub use spec::{
    load_pipeline, parse_manifest, parse_pipeline_expr, Builtin, DataSide, SegSpec, StageSpec,
    TrainData,
};

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use serde::Serialize;

/// Ordered, nonempty morph sequence for one token.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct Analysis(Vec<String>);

impl Analysis {
    /// `None` if `morphs` is empty or contains an empty morph.
    pub fn new(morphs: Vec<String>) -> Option<Analysis> {
        (!morphs.is_empty() && morphs.iter().all(|m| !m.is_empty())).then_some(Analysis(morphs))
    }

    pub fn whole(token: &str) -> Analysis {
        assert!(!token.is_empty(), "cannot analyse an empty token");
        Analysis(vec![token.to_string()])
    }

    pub fn morphs(&self) -> &[String] {
        &self.0
    }

    pub fn into_morphs(self) -> Vec<String> {
        self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn surface(&self) -> String {
        self.0.concat()
    }

    pub fn join(&self, delim: &str) -> String {
        self.0.join(delim)
    }
}

impl fmt::Display for Analysis {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.join("#"))
    }
}

pub trait Segmenter: Send + Sync {
    fn segment(&self, token: &str) -> Analysis;

    /// The rewriting applied before splitting; output morphs concatenate to
    /// `normalize(token)`.
    fn normalize(&self, token: &str) -> String {
        token.to_string()
    }
}

/// Word type → frequency, ordered so training is deterministic.
pub type WordFreqs = BTreeMap<String, u64>;

pub fn word_freqs<'a>(tokens: impl IntoIterator<Item = &'a str>) -> WordFreqs {
    let mut freqs = WordFreqs::new();
    for t in tokens {
        *freqs.entry(t.to_string()).or_insert(0) += 1;
    }
    freqs
}

#[derive(Debug, Clone, PartialEq)]
pub enum SegmenterModel {
    Identity,
    Bpe(BpeModel),
    Mdl(MdlModel),
    English(EnRuleSet),
    Arabic(ArRuleSet),
}

impl SegmenterModel {
    pub fn kind(&self) -> &'static str {
        match self {
            SegmenterModel::Identity => "identity",
            SegmenterModel::Bpe(_) => "bpe",
            SegmenterModel::Mdl(_) => "mdl",
            SegmenterModel::English(_) => "en-rules",
            SegmenterModel::Arabic(_) => "ar-rules",
        }
    }

    /// Units the model can emit by itself, beyond what a segmented corpus
    /// shows: BPE symbols (end marker stripped) and MDL lexicon morphs.
    pub fn intrinsic_vocabulary(&self) -> BTreeSet<String> {
        match self {
            SegmenterModel::Bpe(m) => m.output_vocabulary(),
            SegmenterModel::Mdl(m) => m.lexicon().keys().cloned().collect(),
            _ => BTreeSet::new(),
        }
    }
}

impl Segmenter for SegmenterModel {
    fn segment(&self, token: &str) -> Analysis {
        match self {
            SegmenterModel::Identity => Analysis::whole(token),
            SegmenterModel::Bpe(m) => m.segment(token),
            SegmenterModel::Mdl(m) => m.segment(token),
            SegmenterModel::English(m) => m.segment(token),
            SegmenterModel::Arabic(m) => m.segment(token),
        }
    }

    fn normalize(&self, token: &str) -> String {
        match self {
            SegmenterModel::Arabic(m) => m.normalize(token),
            _ => token.to_string(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn analysis_rejects_empty() {
        assert!(Analysis::new(vec![]).is_none());
        assert!(Analysis::new(vec!["a".into(), String::new()]).is_none());
        let a = Analysis::new(vec!["car".into(), "s".into()]).unwrap();
        assert_eq!(a.surface(), "cars");
        assert_eq!(a.to_string(), "car#s");
    }

    #[test]
    fn freqs_count_tokens() {
        let f = word_freqs("a b a".split(' '));
        assert_eq!(f["a"], 2);
        assert_eq!(f["b"], 1);
    }
}
