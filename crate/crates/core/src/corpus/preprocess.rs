//! Line-level cleaning and tokenization.
//!
//! Steps, in order: markup removal, URL and emoticon/emoji removal, trimming,
//! letter/digit/punctuation run splitting, optional Arabic letter
//! normalization and escaping of the reserved delimiter characters.
//!
//! This is a deliberately simple stand-in for the Moses tokenizer: every
//! maximal run of letters, of digits, or of punctuation becomes a token.
//! It is not bit-compatible with Moses.

use std::sync::OnceLock;

use regex::Regex;
use unicode_normalization::char::is_combining_mark;
use unicode_normalization::UnicodeNormalization;

use super::script::{is_letter, Token};
use super::Sentence;
use crate::error::{Error, Result};

/// Characters with a meaning in segmented output (`#` joins morphs, `@@`
/// marks continuation, `\` escapes). Preprocessing writes them as `\#`, `\@`
/// and `\\`.
pub const RESERVED: [char; 3] = ['#', '@', '\\'];

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct ArabicNorm {
    /// أ إ آ → ا
    pub alif: bool,
    /// ى → ي
    pub ya: bool,
}

impl ArabicNorm {
    pub const NONE: ArabicNorm = ArabicNorm {
        alif: false,
        ya: false,
    };
    pub const ALL: ArabicNorm = ArabicNorm {
        alif: true,
        ya: true,
    };

    pub fn is_identity(self) -> bool {
        !self.alif && !self.ya
    }

    pub fn map_char(self, c: char) -> char {
        match c {
            '\u{0623}' | '\u{0625}' | '\u{0622}' if self.alif => '\u{0627}',
            '\u{0649}' if self.ya => '\u{064A}',
            c => c,
        }
    }

    pub fn apply(self, text: &str) -> String {
        if self.is_identity() {
            return text.to_string();
        }
        text.chars().map(|c| self.map_char(c)).collect()
    }

    /// Parses a comma separated flag list such as `alif,ya`, or `none`.
    pub fn parse(spec: &str) -> Result<ArabicNorm> {
        let mut norm = ArabicNorm::NONE;
        for flag in spec.split(',').map(str::trim).filter(|f| !f.is_empty()) {
            match flag {
                "alif" => norm.alif = true,
                "ya" => norm.ya = true,
                "none" => {}
                other => {
                    return Err(Error::Argument(format!(
                        "unknown normalization flag {other:?}"
                    )))
                }
            }
        }
        Ok(norm)
    }

    pub fn render(self) -> &'static str {
        match (self.alif, self.ya) {
            (true, true) => "alif,ya",
            (true, false) => "alif",
            (false, true) => "ya",
            (false, false) => "none",
        }
    }
}

#[derive(Debug, Clone)]
pub struct PreprocessOptions {
    /// Corpus annotation markup, removed before anything else.
    pub markup: Vec<Regex>,
    pub remove_urls: bool,
    pub remove_emoticons: bool,
    pub split_digits: bool,
    pub normalize: ArabicNorm,
}

impl Default for PreprocessOptions {
    fn default() -> Self {
        PreprocessOptions {
            markup: default_markup(),
            remove_urls: true,
            remove_emoticons: true,
            split_digits: true,
            normalize: ArabicNorm::ALL,
        }
    }
}

/// XML-style tags and bracketed transcription annotations such as `[noise]`.
pub fn default_markup() -> Vec<Regex> {
    vec![
        Regex::new(r"</?[A-Za-z][^<>]*>").unwrap(),
        Regex::new(r"\[[^\[\]]*\]").unwrap(),
    ]
}

fn url_re() -> &'static Regex {
    static RE: OnceLock<Regex> = OnceLock::new();
    RE.get_or_init(|| Regex::new(r"(?i)\b(?:https?://|ftp://|www\.)\S+").unwrap())
}

fn emoticon_re() -> &'static Regex {
    static RE: OnceLock<Regex> = OnceLock::new();
    RE.get_or_init(|| {
        let faces = [
            r"[:;=][\-o\*']?[\)\]\(\[dDpP/\\|@3\*]+",
            r"[\)\]\(\[/\\|@][\-o\*']?[:;=]",
            r"</?3+",
            r"[xX][dD]+",
            r"\^[_\-.]?\^",
            r"-_+-",
            r"[oO]_[oO]",
        ];
        Regex::new(&format!(r"(?:^|\s)(?:{})(?:\s|$)", faces.join("|"))).unwrap()
    })
}

fn is_emoji(c: char) -> bool {
    matches!(c,
        '\u{1F000}'..='\u{1FAFF}'
        | '\u{2600}'..='\u{27BF}'
        | '\u{2300}'..='\u{23FF}'
        | '\u{2B50}'
        | '\u{2B55}'
        | '\u{3030}'
        | '\u{303D}'
        | '\u{FE0F}'
        | '\u{200D}'
        | '\u{E0020}'..='\u{E007F}')
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum Run {
    Word,
    Digit,
    Punct,
}

fn remove_noise(line: &str, opts: &PreprocessOptions) -> String {
    let mut text = line.to_string();
    // removal can expose new matches, so iterate to a fixpoint
    loop {
        let before = text.len();
        for re in &opts.markup {
            text = re.replace_all(&text, " ").into_owned();
        }
        if opts.remove_urls {
            text = url_re().replace_all(&text, " ").into_owned();
        }
        if opts.remove_emoticons {
            // matches share their whitespace boundary; a second sweep catches neighbours
            for _ in 0..2 {
                text = emoticon_re().replace_all(&text, " ").into_owned();
            }
            text.retain(|c| !is_emoji(c));
        }
        if text.len() == before {
            return text;
        }
    }
}

fn tokenize(text: &str, split_digits: bool) -> Vec<String> {
    let mut tokens = Vec::new();
    for chunk in text.split_whitespace() {
        let chars: Vec<char> = chunk.chars().collect();
        let mut current = String::new();
        let mut run: Option<Run> = None;
        let mut i = 0;
        while i < chars.len() {
            let c = chars[i];
            let (class, unit): (Run, String) = if c == '\\' {
                match chars.get(i + 1) {
                    Some(&next) if RESERVED.contains(&next) => {
                        i += 1;
                        (Run::Punct, format!("\\{next}"))
                    }
                    _ => (Run::Punct, "\\\\".to_string()),
                }
            } else if RESERVED.contains(&c) {
                (Run::Punct, format!("\\{c}"))
            } else if is_combining_mark(c) {
                (run.unwrap_or(Run::Punct), c.to_string())
            } else if is_letter(c) {
                (Run::Word, c.to_string())
            } else if c.is_numeric() {
                (if split_digits { Run::Digit } else { Run::Word }, c.to_string())
            } else {
                (Run::Punct, c.to_string())
            };
            if run.is_some_and(|r| r != class) {
                tokens.push(std::mem::take(&mut current));
            }
            current.push_str(&unit);
            run = Some(class);
            i += 1;
        }
        if !current.is_empty() {
            tokens.push(current);
        }
    }
    tokens
}

fn single_pass(line: &str, opts: &PreprocessOptions) -> Vec<String> {
    let nfc: String = line.nfc().collect();
    let cleaned = remove_noise(&nfc, opts);
    let normalized = opts.normalize.apply(cleaned.trim());
    tokenize(&normalized, opts.split_digits)
}

/// Cleans and tokenizes one line. `None` means the line is empty after
/// cleaning and should be dropped.
pub fn preprocess_tokens(line: &str, opts: &PreprocessOptions) -> Option<Vec<Token>> {
    let mut tokens = single_pass(line, opts);
    // splitting can expose removable material (e.g. an emoticon glued to a
    // word); iterate until stable so preprocessing is idempotent
    for _ in 0..8 {
        let again = single_pass(&tokens.join(" "), opts);
        if again == tokens {
            break;
        }
        tokens = again;
    }
    if tokens.is_empty() {
        return None;
    }
    Some(
        tokens
            .iter()
            .map(|t| Token::new(t).expect("tokenizer yields nonempty whitespace-free tokens"))
            .collect(),
    )
}

pub fn preprocess(id: usize, line: &str, opts: &PreprocessOptions) -> Option<Sentence> {
    preprocess_tokens(line, opts).map(|tokens| Sentence { id, tokens })
}

/// Decodes raw bytes as UTF-8 lines, reporting the 1-based number of the
/// first undecodable line. A trailing `\r` is dropped.
pub fn decode_lines(bytes: &[u8]) -> Result<Vec<String>> {
    let mut lines = Vec::new();
    if bytes.is_empty() {
        return Ok(lines);
    }
    let body = bytes.strip_suffix(b"\n").unwrap_or(bytes);
    for (i, raw) in body.split(|&b| b == b'\n').enumerate() {
        let raw = raw.strip_suffix(b"\r").unwrap_or(raw);
        let line = std::str::from_utf8(raw).map_err(|_| Error::Decode { line: i + 1 })?;
        lines.push(line.to_string());
    }
    Ok(lines)
}

pub fn read_lines(path: &std::path::Path) -> Result<Vec<String>> {
    let bytes = std::fs::read(path).map_err(|e| Error::io(path, e))?;
    decode_lines(&bytes)
}

/// Preprocesses a monolingual corpus; sentence ids are 0-based line indices.
pub fn preprocess_corpus(lines: &[String], opts: &PreprocessOptions) -> Vec<Sentence> {
    lines
        .iter()
        .enumerate()
        .filter_map(|(i, line)| preprocess(i, line, opts))
        .collect()
}

/// Preprocesses aligned corpora (e.g. source and target) together, dropping a
/// line index from every side when any side is empty after cleaning.
pub fn preprocess_parallel(
    sides: &[Vec<String>],
    opts: &PreprocessOptions,
) -> Result<Vec<Vec<Sentence>>> {
    let Some(first) = sides.first() else {
        return Ok(Vec::new());
    };
    if let Some(bad) = sides.iter().find(|s| s.len() != first.len()) {
        return Err(Error::Alignment(format!(
            "parallel sides have {} and {} lines",
            first.len(),
            bad.len()
        )));
    }
    let mut out = vec![Vec::new(); sides.len()];
    for i in 0..first.len() {
        let processed: Vec<Option<Sentence>> = sides
            .iter()
            .map(|side| preprocess(i, &side[i], opts))
            .collect();
        if processed.iter().all(Option::is_some) {
            for (side, s) in out.iter_mut().zip(processed) {
                side.push(s.unwrap());
            }
        }
    }
    Ok(out)
}
