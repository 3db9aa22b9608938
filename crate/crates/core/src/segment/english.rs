//! Rule-based English segmentation.
//!
//! Rules run in a fixed order and the first one that applies wins:
//! the irregular-forms lexicon (modified stems such as `monki#es`, and words
//! that must stay whole such as `went`), then `es` after a sibilant stem
//! ending, then one regular suffix. Matching is case-insensitive and the
//! output keeps the input's casing.

use std::collections::BTreeMap;

use super::Analysis;
use crate::corpus::split_escaped;
use crate::corpus::{classify_script, Script};
use crate::error::{Error, Result};

pub const EN_RULES_HEADER: &str = "en-rules v1";

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EnRuleSet {
    /// Lowercased word → lowercased analysis.
    pub irregular_forms: BTreeMap<String, Analysis>,
    /// Stem endings that take `es` rather than `s`.
    pub es_stems: Vec<String>,
    pub suffixes: Vec<String>,
    pub min_stem_len: usize,
    /// A final `s` after one of these letters is not split off (`class`,
    /// `bus`, `this`).
    pub no_s_after: Vec<char>,
}

const SHIPPED_IRREGULAR: &[(&str, &str)] = &[
    // modified stems
    ("monkies", "monki#es"),
    ("caring", "car#ing"),
    ("making", "mak#ing"),
    ("taking", "tak#ing"),
    ("having", "hav#ing"),
    ("living", "liv#ing"),
    ("giving", "giv#ing"),
    ("coming", "com#ing"),
    ("using", "us#ing"),
    ("goes", "go#es"),
    ("does", "do#es"),
    ("stories", "stori#es"),
    ("studies", "studi#es"),
    ("cities", "citi#es"),
    ("parties", "parti#es"),
    ("babies", "babi#es"),
    ("countries", "countri#es"),
    ("companies", "compani#es"),
    ("families", "famili#es"),
    ("stopped", "stopp#ed"),
    ("planned", "plann#ed"),
    ("running", "runn#ing"),
    ("getting", "gett#ing"),
    ("shopping", "shopp#ing"),
    // irregular forms that stay whole
    ("went", "went"),
    ("gone", "gone"),
    ("was", "was"),
    ("were", "were"),
    ("has", "has"),
    ("is", "is"),
    ("his", "his"),
    ("this", "this"),
    ("its", "its"),
    ("yes", "yes"),
    ("news", "news"),
    ("series", "series"),
    ("always", "always"),
    ("seven", "seven"),
    ("eleven", "eleven"),
    ("even", "even"),
    ("often", "often"),
    ("open", "open"),
    ("happen", "happen"),
    ("kitchen", "kitchen"),
    ("garden", "garden"),
    ("women", "women"),
    ("men", "men"),
    ("children", "children"),
    ("chicken", "chicken"),
    ("listen", "listen"),
    ("seen", "seen"),
    ("been", "been"),
    ("between", "between"),
    ("screen", "screen"),
    ("green", "green"),
    ("need", "need"),
    ("speed", "speed"),
    ("indeed", "indeed"),
    ("bed", "bed"),
    ("red", "red"),
    ("thing", "thing"),
    ("nothing", "nothing"),
    ("something", "something"),
    ("anything", "anything"),
    ("everything", "everything"),
    ("morning", "morning"),
    ("evening", "evening"),
    ("during", "during"),
    ("king", "king"),
    ("ring", "ring"),
    ("spring", "spring"),
    ("string", "string"),
    ("bring", "bring"),
    ("sing", "sing"),
    ("wing", "wing"),
    ("building", "building"),
    ("meeting", "meeting"),
    ("wedding", "wedding"),
    ("feeling", "feeling"),
];

impl Default for EnRuleSet {
    fn default() -> Self {
        let irregular_forms = SHIPPED_IRREGULAR
            .iter()
            .map(|&(w, a)| {
                let morphs = a.split('#').map(str::to_string).collect();
                (w.to_string(), Analysis::new(morphs).expect("valid shipped entry"))
            })
            .collect();
        EnRuleSet {
            irregular_forms,
            es_stems: ["s", "x", "z", "ch", "sh"].map(String::from).to_vec(),
            suffixes: ["s", "ed", "ing", "en"].map(String::from).to_vec(),
            min_stem_len: 3,
            no_s_after: vec!['s', 'u', 'i'],
        }
    }
}

impl EnRuleSet {
    /// The built-in rules with no irregular forms at all.
    pub fn without_lexicon() -> EnRuleSet {
        EnRuleSet {
            irregular_forms: BTreeMap::new(),
            ..EnRuleSet::default()
        }
    }

    pub fn segment(&self, token: &str) -> Analysis {
        if classify_script(token) != Script::Latin {
            return Analysis::whole(token);
        }
        let lower = token.to_lowercase();
        let lower_chars: Vec<char> = lower.chars().collect();
        // casing can only be carried over when lowercasing keeps the length
        if lower_chars.len() != token.chars().count() {
            return Analysis::whole(token);
        }
        let lengths = self.split_lengths(&lower, &lower_chars);
        let mut morphs = Vec::with_capacity(lengths.len());
        let mut rest = token;
        for len in lengths {
            let at = rest.char_indices().nth(len).map_or(rest.len(), |(i, _)| i);
            morphs.push(rest[..at].to_string());
            rest = &rest[at..];
        }
        Analysis::new(morphs).unwrap_or_else(|| Analysis::whole(token))
    }

    /// Morph lengths in characters for a lowercased word.
    fn split_lengths(&self, lower: &str, chars: &[char]) -> Vec<usize> {
        let n = chars.len();
        if let Some(a) = self.irregular_forms.get(lower) {
            return a.morphs().iter().map(|m| m.chars().count()).collect();
        }
        if let Some(stem) = lower.strip_suffix("es") {
            let stem_len = n - 2;
            if stem_len >= self.min_stem_len && self.es_stems.iter().any(|e| stem.ends_with(e.as_str())) {
                return vec![stem_len, 2];
            }
        }
        for suffix in &self.suffixes {
            let Some(stem) = lower.strip_suffix(suffix.as_str()) else {
                continue;
            };
            let suffix_len = suffix.chars().count();
            let stem_len = n - suffix_len;
            if stem_len < self.min_stem_len {
                continue;
            }
            if suffix == "s" && stem.chars().last().is_some_and(|c| self.no_s_after.contains(&c)) {
                continue;
            }
            return vec![stem_len, suffix_len];
        }
        vec![n]
    }

    pub fn parse(text: &str) -> Result<EnRuleSet> {
        let mut lines = text.lines().enumerate().map(|(i, l)| (i + 1, l));
        match lines.next() {
            Some((_, h)) if h.trim_end() == EN_RULES_HEADER => {}
            Some((_, h)) if h.starts_with("en-rules ") => {
                return Err(Error::Version(format!("unsupported rule file header {h:?}")))
            }
            _ => return Err(Error::format(1, format!("expected header {EN_RULES_HEADER:?}"))),
        }
        let mut rules = EnRuleSet::without_lexicon();
        for (no, line) in lines {
            let line = line.trim_end_matches('\r');
            if line.trim().is_empty() || line.starts_with('#') || line.starts_with("crc32=") {
                continue;
            }
            if let Some((word, seg)) = line.split_once('\t') {
                let morphs = split_escaped(seg, '#');
                let analysis = Analysis::new(morphs)
                    .ok_or_else(|| Error::format(no, "empty morph in analysis"))?;
                let word = word.to_lowercase();
                if analysis.surface().to_lowercase() != word {
                    return Err(Error::validation(
                        no,
                        format!("analysis {analysis} does not spell {word:?}"),
                    ));
                }
                rules.irregular_forms.insert(word, lowercase_analysis(&analysis));
                continue;
            }
            let (key, value) = line
                .split_once('=')
                .ok_or_else(|| Error::format(no, format!("expected key=value or word<TAB>analysis, got {line:?}")))?;
            let list = || -> Vec<String> {
                value.split(',').map(str::trim).filter(|s| !s.is_empty()).map(String::from).collect()
            };
            match key.trim() {
                "min_stem_len" => {
                    rules.min_stem_len = value
                        .trim()
                        .parse()
                        .map_err(|_| Error::format(no, format!("bad min_stem_len {value:?}")))?
                }
                "es_stems" => rules.es_stems = list(),
                "suffixes" => rules.suffixes = list(),
                "no_s_after" => {
                    rules.no_s_after = list()
                        .iter()
                        .map(|s| {
                            let mut cs = s.chars();
                            match (cs.next(), cs.next()) {
                                (Some(c), None) => Ok(c),
                                _ => Err(Error::format(no, format!("expected single letters, got {s:?}"))),
                            }
                        })
                        .collect::<Result<_>>()?
                }
                other => return Err(Error::format(no, format!("unknown setting {other:?}"))),
            }
        }
        Ok(rules)
    }

    pub fn render(&self) -> String {
        let mut out = format!("{EN_RULES_HEADER}\n");
        out.push_str(&format!("min_stem_len={}\n", self.min_stem_len));
        out.push_str(&format!("es_stems={}\n", self.es_stems.join(",")));
        out.push_str(&format!("suffixes={}\n", self.suffixes.join(",")));
        let no_s: Vec<String> = self.no_s_after.iter().map(|c| c.to_string()).collect();
        out.push_str(&format!("no_s_after={}\n", no_s.join(",")));
        for (word, analysis) in &self.irregular_forms {
            out.push_str(&format!("{word}\t{analysis}\n"));
        }
        out
    }
}

fn lowercase_analysis(a: &Analysis) -> Analysis {
    Analysis::new(a.morphs().iter().map(|m| m.to_lowercase()).collect()).expect("nonempty")
}
