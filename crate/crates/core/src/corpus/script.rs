use std::fmt;

use serde::Serialize;
use unicode_normalization::char::is_combining_mark;
use unicode_normalization::UnicodeNormalization;

use crate::error::{Error, Result};

/// Script class of a whitespace-free token.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum Script {
    Arabic,
    Latin,
    Numeric,
    Punct,
    /// Letters from both the Arabic and the Latin blocks.
    Mixed,
    /// Letters only from scripts other than Arabic and Latin.
    Other,
}

impl Script {
    pub fn has_letters(self) -> bool {
        !matches!(self, Script::Numeric | Script::Punct)
    }

    pub fn name(self) -> &'static str {
        match self {
            Script::Arabic => "arabic",
            Script::Latin => "latin",
            Script::Numeric => "numeric",
            Script::Punct => "punct",
            Script::Mixed => "mixed",
            Script::Other => "other",
        }
    }

    pub fn parse(name: &str) -> Option<Script> {
        Some(match name {
            "arabic" => Script::Arabic,
            "latin" => Script::Latin,
            "numeric" => Script::Numeric,
            "punct" => Script::Punct,
            "mixed" => Script::Mixed,
            "other" => Script::Other,
            _ => return None,
        })
    }
}

impl fmt::Display for Script {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Language a word is reported under. Mixed-script words belong to the matrix
/// language (Egyptian Arabic).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum Lang {
    Egy,
    En,
    Neutral,
}

impl Lang {
    pub fn of(script: Script) -> Lang {
        match script {
            Script::Arabic | Script::Mixed => Lang::Egy,
            Script::Latin => Lang::En,
            _ => Lang::Neutral,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Lang::Egy => "EGY",
            Lang::En => "EN",
            Lang::Neutral => "NEUTRAL",
        }
    }
}

pub fn is_arabic_char(c: char) -> bool {
    matches!(c,
        '\u{0600}'..='\u{06FF}'
        | '\u{0750}'..='\u{077F}'
        | '\u{08A0}'..='\u{08FF}'
        | '\u{FB50}'..='\u{FDFF}'
        | '\u{FE70}'..='\u{FEFF}')
}

pub fn is_latin_char(c: char) -> bool {
    matches!(c,
        'A'..='Z'
        | 'a'..='z'
        | '\u{00AA}'
        | '\u{00BA}'
        | '\u{00C0}'..='\u{00D6}'
        | '\u{00D8}'..='\u{00F6}'
        | '\u{00F8}'..='\u{024F}'
        | '\u{1E00}'..='\u{1EFF}'
        | '\u{2C60}'..='\u{2C7F}'
        | '\u{A720}'..='\u{A7FF}'
        | '\u{AB30}'..='\u{AB6F}'
        | '\u{FF21}'..='\u{FF3A}'
        | '\u{FF41}'..='\u{FF5A}')
}

/// A letter for classification purposes. Combining marks are excluded: they
/// belong to whatever base character precedes them.
pub fn is_letter(c: char) -> bool {
    c.is_alphabetic() && !is_combining_mark(c)
}

pub fn classify_script(token: &str) -> Script {
    let (mut arabic, mut latin, mut other, mut digit) = (false, false, false, false);
    for c in token.chars() {
        if is_letter(c) {
            if is_arabic_char(c) {
                arabic = true;
            } else if is_latin_char(c) {
                latin = true;
            } else {
                other = true;
            }
        } else if c.is_numeric() {
            digit = true;
        }
    }
    match (arabic, latin, other) {
        (true, true, _) => Script::Mixed,
        (true, false, false) => Script::Arabic,
        (false, true, false) => Script::Latin,
        (false, false, false) if digit => Script::Numeric,
        (false, false, false) => Script::Punct,
        _ => Script::Other,
    }
}

/// A surface word with its script class.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub struct Token {
    surface: String,
    script: Script,
}

impl Token {
    /// NFC-normalizes `surface` and classifies it.
    pub fn new(surface: &str) -> Result<Token> {
        if surface.is_empty() {
            return Err(Error::Argument("empty token".into()));
        }
        if surface.chars().any(char::is_whitespace) {
            return Err(Error::Argument(format!(
                "token contains whitespace: {surface:?}"
            )));
        }
        let surface: String = surface.nfc().collect();
        let script = classify_script(&surface);
        Ok(Token { surface, script })
    }

    pub fn surface(&self) -> &str {
        &self.surface
    }

    pub fn script(&self) -> Script {
        self.script
    }

    pub fn lang(&self) -> Lang {
        Lang::of(self.script)
    }
}

impl fmt::Display for Token {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.surface)
    }
}
