//! Rule-based Arabic clitic segmentation approximating the ATB and D3
//! tokenization schemes.
//!
//! Proclitics are stripped greedily from the left (each one must come later
//! in the list than the previous), D3 then strips the definite article, and
//! finally enclitics are stripped from the right, longest first. A strip is
//! only taken when the remaining stem keeps at least `min_stem_len`
//! characters, so short clitic-shaped words stay whole.

use std::fmt;

use super::Analysis;
use crate::corpus::{classify_script, ArabicNorm, Script};
use crate::error::{Error, Result};
use crate::translit::from_buckwalter;

pub const AR_RULES_HEADER: &str = "ar-rules v1";

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum ArScheme {
    #[default]
    Atb,
    D3,
}

impl ArScheme {
    pub fn parse(s: &str) -> Result<ArScheme> {
        match s.to_ascii_lowercase().as_str() {
            "atb" => Ok(ArScheme::Atb),
            "d3" => Ok(ArScheme::D3),
            _ => Err(Error::Argument(format!("unknown scheme {s:?}"))),
        }
    }
}

impl fmt::Display for ArScheme {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            ArScheme::Atb => "atb",
            ArScheme::D3 => "d3",
        })
    }
}

// Buckwalter spellings of the shipped inventories.
const PROCLITICS: &[&str] = &["w", "f", "b", "l", "k", "s"];
const ENCLITICS: &[&str] = &[
    "hmA", "kmA", "lhA", "lnA", "lkm", "lhm", "hm", "hn", "hA", "km", "kn", "nA", "ny", "ly", "lk",
    "lh", "h", "k", "y",
];
const ARTICLE: &str = "Al";

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ArRuleSet {
    /// In attachment order, outermost first.
    pub proclitics: Vec<String>,
    /// Tried longest first.
    pub enclitics: Vec<String>,
    pub article: String,
    pub scheme: ArScheme,
    pub min_stem_len: usize,
    pub max_proclitics: usize,
    pub max_enclitics: usize,
    pub normalize: ArabicNorm,
}

impl ArRuleSet {
    pub fn new(scheme: ArScheme) -> ArRuleSet {
        ArRuleSet {
            proclitics: PROCLITICS.iter().map(|p| from_buckwalter(p)).collect(),
            enclitics: ENCLITICS.iter().map(|e| from_buckwalter(e)).collect(),
            article: from_buckwalter(ARTICLE),
            scheme,
            min_stem_len: 2,
            max_proclitics: 2,
            max_enclitics: 1,
            normalize: ArabicNorm::ALL,
        }
    }

    pub fn atb() -> ArRuleSet {
        ArRuleSet::new(ArScheme::Atb)
    }

    pub fn d3() -> ArRuleSet {
        ArRuleSet::new(ArScheme::D3)
    }

    /// Letter normalization applied before splitting. Only Arabic-script
    /// tokens are touched, matching what [`Self::segment`] leaves whole.
    pub fn normalize(&self, token: &str) -> String {
        if classify_script(token) == Script::Arabic {
            self.normalize.apply(token)
        } else {
            token.to_string()
        }
    }

    pub fn segment(&self, token: &str) -> Analysis {
        if classify_script(token) != Script::Arabic {
            return Analysis::whole(token);
        }
        let word: Vec<char> = self.normalize(token).chars().collect();
        let (mut start, mut end) = (0, word.len());
        let mut morphs: Vec<String> = Vec::new();
        let strip_ok = |len: usize, start: usize, end: usize| end - start >= len + self.min_stem_len;

        let mut next_slot = 0;
        while morphs.len() < self.max_proclitics {
            let found = self.proclitics[next_slot.min(self.proclitics.len())..]
                .iter()
                .enumerate()
                .find(|(_, p)| {
                    let len = p.chars().count();
                    strip_ok(len, start, end) && starts_with(&word[start..end], p)
                });
            let Some((offset, p)) = found else { break };
            morphs.push(p.clone());
            start += p.chars().count();
            next_slot += offset + 1;
        }
        if self.scheme == ArScheme::D3 {
            let len = self.article.chars().count();
            if len > 0 && strip_ok(len, start, end) && starts_with(&word[start..end], &self.article) {
                morphs.push(self.article.clone());
                start += len;
            }
        }
        let mut suffixes: Vec<String> = Vec::new();
        let mut by_length: Vec<&String> = self.enclitics.iter().collect();
        by_length.sort_by_key(|e| std::cmp::Reverse(e.chars().count()));
        while suffixes.len() < self.max_enclitics {
            let found = by_length.iter().find(|e| {
                let len = e.chars().count();
                strip_ok(len, start, end) && ends_with(&word[start..end], e)
            });
            let Some(e) = found else { break };
            suffixes.push((*e).clone());
            end -= e.chars().count();
        }
        morphs.push(word[start..end].iter().collect());
        morphs.extend(suffixes.into_iter().rev());
        Analysis::new(morphs).expect("stems are never empty")
    }

    /// Whether `token` is written like a bare proclitic sequence, optionally
    /// ending in the article (`b`, `wAl`, `Al`), regardless of scheme.
    pub fn is_proclitic_token(&self, token: &str) -> bool {
        let word: Vec<char> = self.normalize(token).chars().collect();
        !word.is_empty() && self.proclitic_chain(&word, 0, 0)
    }

    fn proclitic_chain(&self, rest: &[char], slot: usize, used: usize) -> bool {
        if rest.is_empty() {
            return true;
        }
        if !self.article.is_empty() && rest.iter().copied().eq(self.article.chars()) {
            return true;
        }
        if used >= self.max_proclitics {
            return false;
        }
        self.proclitics.iter().enumerate().skip(slot).any(|(i, p)| {
            starts_with(rest, p) && self.proclitic_chain(&rest[p.chars().count()..], i + 1, used + 1)
        })
    }

    pub fn is_enclitic_token(&self, token: &str) -> bool {
        let word = self.normalize(token);
        self.enclitics.contains(&word)
    }

    pub fn parse(text: &str) -> Result<ArRuleSet> {
        let mut lines = text.lines().enumerate().map(|(i, l)| (i + 1, l));
        match lines.next() {
            Some((_, h)) if h.trim_end() == AR_RULES_HEADER => {}
            Some((_, h)) if h.starts_with("ar-rules ") => {
                return Err(Error::Version(format!("unsupported rule file header {h:?}")))
            }
            _ => return Err(Error::format(1, format!("expected header {AR_RULES_HEADER:?}"))),
        }
        let mut rules = ArRuleSet {
            proclitics: Vec::new(),
            enclitics: Vec::new(),
            ..ArRuleSet::atb()
        };
        for (no, line) in lines {
            let line = line.trim();
            if line.is_empty() || line.starts_with('#') || line.starts_with("crc32=") {
                continue;
            }
            let entry = |v: &str| -> Result<String> {
                let v = v.trim();
                if v.is_empty() || v.chars().any(char::is_whitespace) {
                    Err(Error::format(no, format!("bad clitic {v:?}")))
                } else {
                    Ok(v.to_string())
                }
            };
            if let Some(v) = line.strip_prefix("pro:") {
                rules.proclitics.push(entry(v)?);
            } else if let Some(v) = line.strip_prefix("enc:") {
                rules.enclitics.push(entry(v)?);
            } else if let Some(v) = line.strip_prefix("art:") {
                rules.article = entry(v)?;
            } else if let Some((key, value)) = line.split_once('=') {
                let value = value.trim();
                let count = || -> Result<usize> {
                    value
                        .parse()
                        .map_err(|_| Error::format(no, format!("bad {key} value {value:?}")))
                };
                match key.trim() {
                    "scheme" => {
                        rules.scheme =
                            ArScheme::parse(value).map_err(|e| Error::format(no, e.to_string()))?
                    }
                    "min_stem_len" => rules.min_stem_len = count()?,
                    "max_proclitics" => rules.max_proclitics = count()?,
                    "max_enclitics" => rules.max_enclitics = count()?,
                    "normalize" => {
                        rules.normalize =
                            ArabicNorm::parse(value).map_err(|e| Error::format(no, e.to_string()))?
                    }
                    other => return Err(Error::format(no, format!("unknown setting {other:?}"))),
                }
            } else {
                return Err(Error::format(no, format!("unrecognized line {line:?}")));
            }
        }
        if rules.min_stem_len == 0 {
            return Err(Error::Validation {
                line: 0,
                msg: "min_stem_len must be at least 1".into(),
            });
        }
        Ok(rules)
    }

    pub fn render(&self) -> String {
        let mut out = format!("{AR_RULES_HEADER}\n");
        out.push_str(&format!("scheme={}\n", self.scheme));
        out.push_str(&format!("min_stem_len={}\n", self.min_stem_len));
        out.push_str(&format!("max_proclitics={}\n", self.max_proclitics));
        out.push_str(&format!("max_enclitics={}\n", self.max_enclitics));
        out.push_str(&format!("normalize={}\n", self.normalize.render()));
        out.push_str(&format!("art:{}\n", self.article));
        for p in &self.proclitics {
            out.push_str(&format!("pro:{p}\n"));
        }
        for e in &self.enclitics {
            out.push_str(&format!("enc:{e}\n"));
        }
        out
    }
}

fn starts_with(word: &[char], prefix: &str) -> bool {
    let p: Vec<char> = prefix.chars().collect();
    word.len() >= p.len() && word[..p.len()] == p[..]
}

fn ends_with(word: &[char], suffix: &str) -> bool {
    let s: Vec<char> = suffix.chars().collect();
    word.len() >= s.len() && word[word.len() - s.len()..] == s[..]
}
