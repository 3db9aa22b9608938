//! Experiment configuration files.
//!
//! One `key = value` setting per line, `#` starts a comment:
//!
//! ```text
//! train_src = train.egy
//! train_tgt = train.en
//! dev_src = dev.egy
//! dev_tgt = dev.en
//! gold = test.gold.tsv
//! fractions = 0.25, 0.5, 1.0
//! seed = 13
//! richness_bins = 1.0, 1.2, 1.4
//! english_bins = 0.0, 0.5
//! mcs_mode = mixed-script
//! pipeline bpe = bpe(vocab=8000, data=joint)
//! pipeline atb+bpe = atb > bpe(vocab=8000, data=joint)
//! hyp 1.0 bpe = hyps/bpe.full.en
//! select EGY = bpe
//! ```
//!
//! Relative paths resolve against the config file's directory. A `raw`
//! identity pipeline is always present.

use std::collections::BTreeMap;
use std::path::{Path, PathBuf};

use crate::corpus::{McsMode, SentenceCategory};
use crate::error::{Error, Result};
use crate::segment::{parse_pipeline_expr, SegSpec};

#[derive(Debug, Clone, PartialEq)]
pub struct HypFile {
    pub fraction: f64,
    pub pipeline: String,
    pub path: PathBuf,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ExperimentConfig {
    pub train_src: Option<PathBuf>,
    pub train_tgt: Option<PathBuf>,
    pub dev_src: Option<PathBuf>,
    pub dev_tgt: Option<PathBuf>,
    pub gold: Option<PathBuf>,
    pub fractions: Vec<f64>,
    pub seed: u64,
    pub richness_bins: Vec<f64>,
    pub english_bins: Vec<f64>,
    pub mcs_mode: McsMode,
    /// In declaration order, `raw` first.
    pub pipelines: Vec<(String, SegSpec)>,
    pub hyps: Vec<HypFile>,
    pub selection: BTreeMap<SentenceCategory, String>,
}

pub fn default_richness_bins() -> Vec<f64> {
    (10..=20).map(|i| i as f64 / 10.0).collect()
}

pub fn default_english_bins() -> Vec<f64> {
    (0..=10).map(|i| i as f64 / 10.0).collect()
}

impl Default for ExperimentConfig {
    fn default() -> Self {
        ExperimentConfig {
            train_src: None,
            train_tgt: None,
            dev_src: None,
            dev_tgt: None,
            gold: None,
            fractions: vec![0.25, 0.5, 1.0],
            seed: 0,
            richness_bins: default_richness_bins(),
            english_bins: default_english_bins(),
            mcs_mode: McsMode::default(),
            pipelines: vec![("raw".into(), SegSpec::identity())],
            hyps: Vec::new(),
            selection: BTreeMap::new(),
        }
    }
}

fn numbers(line: usize, value: &str) -> Result<Vec<f64>> {
    value
        .split(',')
        .map(str::trim)
        .filter(|v| !v.is_empty())
        .map(|v| {
            v.parse::<f64>()
                .ok()
                .filter(|x| x.is_finite())
                .ok_or_else(|| Error::Config(format!("line {line}: bad number {v:?}")))
        })
        .collect()
}

fn strictly_increasing(xs: &[f64]) -> bool {
    xs.windows(2).all(|w| w[0] < w[1])
}

impl ExperimentConfig {
    pub fn parse(text: &str, base: &Path) -> Result<ExperimentConfig> {
        let mut cfg = ExperimentConfig::default();
        let mut raw_declared = false;
        for (i, line) in text.lines().enumerate() {
            let no = i + 1;
            let line = line.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let (key, value) = line
                .split_once('=')
                .ok_or_else(|| Error::Config(format!("line {no}: expected `key = value`")))?;
            let (key, value) = (key.trim(), value.trim());
            let words: Vec<&str> = key.split_whitespace().collect();
            let path = || -> Result<PathBuf> {
                if value.is_empty() {
                    Err(Error::Config(format!("line {no}: empty path")))
                } else {
                    Ok(base.join(value))
                }
            };
            match words.as_slice() {
                ["train_src"] => cfg.train_src = Some(path()?),
                ["train_tgt"] => cfg.train_tgt = Some(path()?),
                ["dev_src"] => cfg.dev_src = Some(path()?),
                ["dev_tgt"] => cfg.dev_tgt = Some(path()?),
                ["gold"] => cfg.gold = Some(path()?),
                ["fractions"] => cfg.fractions = numbers(no, value)?,
                ["seed"] => {
                    cfg.seed = value
                        .parse()
                        .map_err(|_| Error::Config(format!("line {no}: bad seed {value:?}")))?
                }
                ["richness_bins"] => cfg.richness_bins = numbers(no, value)?,
                ["english_bins"] => cfg.english_bins = numbers(no, value)?,
                ["mcs_mode"] => {
                    cfg.mcs_mode = McsMode::parse(value)
                        .map_err(|e| Error::Config(format!("line {no}: {e}")))?
                }
                ["pipeline", name] => {
                    let spec = parse_pipeline_expr(value, base)
                        .map_err(|e| Error::Config(format!("line {no}: {e}")))?;
                    if *name == "raw" && !raw_declared {
                        raw_declared = true;
                        cfg.pipelines[0].1 = spec;
                    } else if cfg.pipelines.iter().any(|(n, _)| n == name) {
                        return Err(Error::Config(format!("line {no}: duplicate pipeline {name:?}")));
                    } else {
                        cfg.pipelines.push((name.to_string(), spec));
                    }
                }
                ["hyp", fraction, name] => {
                    let fraction: f64 = fraction
                        .parse()
                        .map_err(|_| Error::Config(format!("line {no}: bad fraction {fraction:?}")))?;
                    cfg.hyps.push(HypFile {
                        fraction,
                        pipeline: name.to_string(),
                        path: path()?,
                    });
                }
                ["select", category] => {
                    let cat = SentenceCategory::parse(category).ok_or_else(|| {
                        Error::Config(format!("line {no}: unknown category {category:?}"))
                    })?;
                    cfg.selection.insert(cat, value.to_string());
                }
                _ => return Err(Error::Config(format!("line {no}: unknown setting {key:?}"))),
            }
        }
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn load(path: &Path) -> Result<ExperimentConfig> {
        let text = std::fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
        ExperimentConfig::parse(&text, path.parent().unwrap_or(Path::new(".")))
    }

    pub fn validate(&self) -> Result<()> {
        if self.fractions.is_empty()
            || !self.fractions.iter().all(|&f| f > 0.0 && f <= 1.0)
            || !strictly_increasing(&self.fractions)
        {
            return Err(Error::Config(format!(
                "fractions must be increasing values in (0, 1], got {:?}",
                self.fractions
            )));
        }
        for (name, bins) in [("richness_bins", &self.richness_bins), ("english_bins", &self.english_bins)] {
            if bins.is_empty() || !strictly_increasing(bins) {
                return Err(Error::Config(format!("{name} must be nonempty and increasing")));
            }
        }
        let known = |name: &str| self.pipelines.iter().any(|(n, _)| n == name);
        for h in &self.hyps {
            if !known(&h.pipeline) {
                return Err(Error::Config(format!("hyp file for unknown pipeline {:?}", h.pipeline)));
            }
            if !self.fractions.iter().any(|&f| (f - h.fraction).abs() < 1e-12) {
                return Err(Error::Config(format!("hyp file for unlisted fraction {}", h.fraction)));
            }
        }
        for (cat, name) in &self.selection {
            if !known(name) {
                return Err(Error::Config(format!("selection for {cat} names unknown pipeline {name:?}")));
            }
        }
        Ok(())
    }

    pub fn hyp_for(&self, fraction: f64, pipeline: &str) -> Option<&Path> {
        self.hyps
            .iter()
            .find(|h| h.pipeline == pipeline && (h.fraction - fraction).abs() < 1e-12)
            .map(|h| h.path.as_path())
    }
}
