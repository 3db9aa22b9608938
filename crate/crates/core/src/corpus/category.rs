use std::fmt;

use serde::Serialize;

use super::script::Script;
use super::Sentence;
use crate::error::{Error, Result};
use crate::segment::ArRuleSet;

/// Code-switching category of a sentence. `Mcs` sentences are also
/// code-switched; use [`SentenceCategory::is_cs`] to select both.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum SentenceCategory {
    MonoEgy,
    MonoEn,
    Cs,
    Mcs,
    /// No Arabic or Latin letters at all.
    Undetermined,
}

impl SentenceCategory {
    pub fn is_cs(self) -> bool {
        matches!(self, SentenceCategory::Cs | SentenceCategory::Mcs)
    }

    pub fn name(self) -> &'static str {
        match self {
            SentenceCategory::MonoEgy => "EGY",
            SentenceCategory::MonoEn => "EN",
            SentenceCategory::Cs => "CS",
            SentenceCategory::Mcs => "MCS",
            SentenceCategory::Undetermined => "UNDETERMINED",
        }
    }

    pub fn parse(name: &str) -> Option<SentenceCategory> {
        Some(match name.to_ascii_lowercase().as_str() {
            "egy" | "mono-egy" | "monoegy" => SentenceCategory::MonoEgy,
            "en" | "mono-en" | "monoen" => SentenceCategory::MonoEn,
            "cs" => SentenceCategory::Cs,
            "mcs" => SentenceCategory::Mcs,
            "undetermined" => SentenceCategory::Undetermined,
            _ => return None,
        })
    }
}

impl fmt::Display for SentenceCategory {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize)]
pub enum McsMode {
    /// A token containing both Arabic and Latin letters.
    #[default]
    MixedScript,
    /// An Arabic clitic token written apart from the Latin word it attaches
    /// to: a proclitic right before a Latin token, or an enclitic right after.
    CliticAdjacent,
}

impl McsMode {
    pub fn parse(name: &str) -> Result<McsMode> {
        match name {
            "mixed-script" => Ok(McsMode::MixedScript),
            "clitic-adjacent" => Ok(McsMode::CliticAdjacent),
            other => Err(Error::Argument(format!("unknown MCS mode {other:?}"))),
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            McsMode::MixedScript => "mixed-script",
            McsMode::CliticAdjacent => "clitic-adjacent",
        }
    }
}

/// MCS detector. The clitic-adjacent mode needs the clitic inventory.
#[derive(Debug, Clone)]
pub enum McsDetector {
    MixedScript,
    CliticAdjacent(ArRuleSet),
}

impl McsDetector {
    pub fn new(mode: McsMode) -> McsDetector {
        match mode {
            McsMode::MixedScript => McsDetector::MixedScript,
            McsMode::CliticAdjacent => McsDetector::CliticAdjacent(ArRuleSet::atb()),
        }
    }

    fn fires(&self, sentence: &Sentence) -> bool {
        let tokens = &sentence.tokens;
        // a mixed-script token is morphological code-switching under either mode
        if tokens.iter().any(|t| t.script() == Script::Mixed) {
            return true;
        }
        let McsDetector::CliticAdjacent(rules) = self else {
            return false;
        };
        tokens.iter().enumerate().any(|(i, t)| {
            if t.script() != Script::Arabic {
                return false;
            }
            let next_latin = tokens.get(i + 1).is_some_and(|n| n.script() == Script::Latin);
            let prev_latin = i > 0 && tokens[i - 1].script() == Script::Latin;
            (next_latin && rules.is_proclitic_token(t.surface()))
                || (prev_latin && rules.is_enclitic_token(t.surface()))
        })
    }
}

pub fn categorize(sentence: &Sentence, detector: &McsDetector) -> SentenceCategory {
    let mut arabic = false;
    let mut latin = false;
    for t in &sentence.tokens {
        match t.script() {
            Script::Arabic => arabic = true,
            Script::Latin => latin = true,
            Script::Mixed => {
                arabic = true;
                latin = true;
            }
            _ => {}
        }
    }
    match (arabic, latin) {
        (false, false) => SentenceCategory::Undetermined,
        (true, false) => SentenceCategory::MonoEgy,
        (false, true) => SentenceCategory::MonoEn,
        (true, true) if detector.fires(sentence) => SentenceCategory::Mcs,
        (true, true) => SentenceCategory::Cs,
    }
}

/// Share of Latin tokens among tokens with Arabic or Latin letters. Mixed
/// tokens count in the denominator only; `None` when there are no such tokens.
pub fn english_percentage(sentence: &Sentence) -> Option<f64> {
    let mut letters = 0usize;
    let mut latin = 0usize;
    for t in &sentence.tokens {
        match t.script() {
            Script::Latin => {
                latin += 1;
                letters += 1;
            }
            Script::Arabic | Script::Mixed => letters += 1,
            _ => {}
        }
    }
    (letters > 0).then(|| latin as f64 / letters as f64)
}

/// Morph tokens per original token.
pub fn morphological_richness(original: &Sentence, segmented: &[String]) -> Result<f64> {
    if original.tokens.is_empty() {
        return Err(Error::EmptyInput("sentence has no tokens".into()));
    }
    Ok(segmented.len() as f64 / original.tokens.len() as f64)
}
