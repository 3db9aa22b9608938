//! Out-of-vocabulary rate of segmented evaluation text.

use std::collections::BTreeSet;

use serde::Serialize;

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct OovReport {
    pub oov_tokens: usize,
    pub total_tokens: usize,
    /// Percentage in [0, 100].
    pub rate: f64,
}

/// Share of evaluation morph tokens missing from `train_vocab`.
pub fn oov_rate<'a>(
    train_vocab: &BTreeSet<String>,
    eval_morphs: impl IntoIterator<Item = &'a str>,
) -> Result<OovReport> {
    let (mut oov, mut total) = (0, 0);
    for m in eval_morphs {
        total += 1;
        if !train_vocab.contains(m) {
            oov += 1;
        }
    }
    if total == 0 {
        return Err(Error::EmptyInput("no evaluation morphs".into()));
    }
    Ok(OovReport {
        oov_tokens: oov,
        total_tokens: total,
        rate: 100.0 * oov as f64 / total as f64,
    })
}
