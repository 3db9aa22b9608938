//! Gold segmentation files.
//!
//! ```text
//! #delim=#
//! #columns=word,seg
//! #normalize=alif,ya
//! it	it
//! depends	depend#s
//!
//! went	went
//! ```
//!
//! One word per line, a blank line ends a sentence. Directive lines start with
//! `#key=value`; any other line starting with `#` is a comment (a literal `#`
//! in text is always escaped as `\#`). Extra columns are ignored.

use std::path::Path;

use serde::Serialize;
use unicode_normalization::UnicodeNormalization;

use super::preprocess::{decode_lines, ArabicNorm};
use super::script::Token;
use super::Sentence;
use crate::error::{Error, Result};
use crate::segment::Analysis;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct GoldEntry {
    pub word: Token,
    pub morphs: Analysis,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct GoldSentence {
    pub sentence: Sentence,
    pub entries: Vec<GoldEntry>,
}

#[derive(Debug, Clone, Copy)]
struct Header {
    delim: char,
    seg_first: bool,
    normalize: ArabicNorm,
}

/// Splits on unescaped `delim`. Escape sequences (`\x`) are kept verbatim.
pub(crate) fn split_escaped(text: &str, delim: char) -> Vec<String> {
    let mut parts = vec![String::new()];
    let mut chars = text.chars();
    while let Some(c) = chars.next() {
        if c == '\\' {
            let last = parts.last_mut().unwrap();
            last.push(c);
            if let Some(next) = chars.next() {
                last.push(next);
            }
        } else if c == delim {
            parts.push(String::new());
        } else {
            parts.last_mut().unwrap().push(c);
        }
    }
    parts
}

fn apply_directive(header: &mut Header, line_no: usize, key: &str, value: &str) -> Result<()> {
    match key {
        "delim" => {
            let mut chars = value.chars();
            match (chars.next(), chars.next()) {
                (Some(c), None) if c != '\\' && !c.is_whitespace() => header.delim = c,
                _ => return Err(Error::format(line_no, format!("bad delimiter {value:?}"))),
            }
        }
        "columns" => {
            header.seg_first = match value {
                "word,seg" => false,
                "seg,word" => true,
                _ => return Err(Error::format(line_no, format!("bad column order {value:?}"))),
            }
        }
        "normalize" => {
            header.normalize =
                ArabicNorm::parse(value).map_err(|e| Error::format(line_no, e.to_string()))?
        }
        _ => return Err(Error::format(line_no, format!("unknown directive {key:?}"))),
    }
    Ok(())
}

pub fn parse_gold(text: &str) -> Result<Vec<GoldSentence>> {
    let mut header = Header {
        delim: '#',
        seg_first: false,
        normalize: ArabicNorm::NONE,
    };
    let mut seen_data = false;
    let mut out = Vec::new();
    let mut entries: Vec<GoldEntry> = Vec::new();

    let flush = |entries: &mut Vec<GoldEntry>, out: &mut Vec<GoldSentence>| {
        if !entries.is_empty() {
            let tokens = entries.iter().map(|e| e.word.clone()).collect();
            out.push(GoldSentence {
                sentence: Sentence {
                    id: out.len(),
                    tokens,
                },
                entries: std::mem::take(entries),
            });
        }
    };

    for (i, line) in text.lines().enumerate() {
        let line_no = i + 1;
        let line = line.strip_suffix('\r').unwrap_or(line);
        if line.trim().is_empty() {
            flush(&mut entries, &mut out);
            continue;
        }
        if let Some(rest) = line.strip_prefix('#') {
            if let Some((key, value)) = rest.split_once('=') {
                if !key.is_empty() && key.chars().all(|c| c.is_ascii_alphanumeric() || c == '_') {
                    if seen_data {
                        return Err(Error::format(line_no, "directive after data"));
                    }
                    apply_directive(&mut header, line_no, key, value.trim())?;
                }
            }
            continue;
        }
        seen_data = true;
        let cols: Vec<&str> = line.split('\t').collect();
        if cols.len() < 2 {
            return Err(Error::format(line_no, "expected word<TAB>segmentation"));
        }
        let (word_col, seg_col) = if header.seg_first {
            (cols[1], cols[0])
        } else {
            (cols[0], cols[1])
        };
        let word_text: String = header.normalize.apply(word_col.trim()).nfc().collect();
        if word_text.is_empty() {
            return Err(Error::format(line_no, "empty word column"));
        }
        let word = Token::new(&word_text).map_err(|e| Error::format(line_no, e.to_string()))?;
        let morphs: Vec<String> = split_escaped(seg_col.trim(), header.delim)
            .into_iter()
            .map(|m| header.normalize.apply(&m).nfc().collect())
            .collect();
        if morphs.iter().any(String::is_empty) {
            return Err(Error::validation(
                line_no,
                format!("empty morph in segmentation {seg_col:?}"),
            ));
        }
        let joined: String = morphs.concat();
        if joined != word.surface() {
            return Err(Error::validation(
                line_no,
                format!(
                    "morphs {:?} do not concatenate to {:?}",
                    morphs,
                    word.surface()
                ),
            ));
        }
        let morphs = Analysis::new(morphs).expect("checked nonempty above");
        entries.push(GoldEntry { word, morphs });
    }
    flush(&mut entries, &mut out);
    Ok(out)
}

pub fn load_gold(path: &Path) -> Result<Vec<GoldSentence>> {
    let bytes = std::fs::read(path).map_err(|e| Error::io(path, e))?;
    let lines = decode_lines(&bytes)?;
    parse_gold(&lines.join("\n"))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn morphs(g: &[GoldSentence], s: usize, w: usize) -> Vec<String> {
        g[s].entries[w].morphs.morphs().to_vec()
    }

    #[test]
    fn segmented_entries() {
        let gold = parse_gold("depends\tdepend#s\nwent\twent\n").unwrap();
        assert_eq!(gold.len(), 1);
        assert_eq!(morphs(&gold, 0, 0), ["depend", "s"]);
        assert_eq!(morphs(&gold, 0, 1), ["went"]);
        assert_eq!(gold[0].sentence.render(), "depends went");
    }

    #[test]
    fn mismatch_is_validation_error() {
        match parse_gold("ok\tok\ncat\tdo#g\n") {
            Err(Error::Validation { line, .. }) => assert_eq!(line, 2),
            other => panic!("unexpected {other:?}"),
        }
        assert!(matches!(
            parse_gold("a\ta##\n"),
            Err(Error::Validation { .. })
        ));
    }

    #[test]
    fn missing_column_is_format_error() {
        assert!(matches!(
            parse_gold("lonely\n"),
            Err(Error::Format { line: 1, .. })
        ));
    }

    #[test]
    fn blank_lines_split_sentences() {
        let gold = parse_gold("a\ta\n\n\nb\tb\nc\tc\n").unwrap();
        assert_eq!(gold.len(), 2);
        assert_eq!(gold[1].sentence.id, 1);
        assert_eq!(gold[1].entries.len(), 2);
    }

    #[test]
    fn header_directives() {
        let text = "#delim=+\n#columns=seg,word\n# a comment\ncar+s\tcars\n";
        let gold = parse_gold(text).unwrap();
        assert_eq!(morphs(&gold, 0, 0), ["car", "s"]);
        assert!(matches!(
            parse_gold("a\ta\n#delim=+\n"),
            Err(Error::Format { line: 2, .. })
        ));
        assert!(parse_gold("#bogus=1\n").is_err());
    }

    #[test]
    fn escaped_delimiter_stays_in_morph() {
        let gold = parse_gold("\\#\t\\#\n").unwrap();
        assert_eq!(morphs(&gold, 0, 0), ["\\#"]);
    }

    #[test]
    fn declared_normalization_applies_to_both_columns() {
        // word written with alif-maqsura, segmentation with ya
        let text = "#normalize=alif,ya\nعلى\tعلي\n";
        let gold = parse_gold(text).unwrap();
        assert_eq!(gold[0].entries[0].word.surface(), "علي");
        assert!(parse_gold("على\tعلي\n").is_err());
    }
}
