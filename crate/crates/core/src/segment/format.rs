//! Text formats for segmented output.
//!
//! - `hash`: morphs of a word joined by `#`, words separated by spaces
//!   (`it depend#s b#SrAHp`).
//! - `marker`: a flat stream where every non-final morph carries a trailing
//!   `@@` (`it depend@@ s b@@ SrAHp`).
//!
//! Both rely on the input being preprocessed: literal `#`, `@` and `\`
//! appear only as the escapes `\#`, `\@` and `\\`, so an unescaped `#` or a
//! trailing `@@` is always structure.

use std::fmt;

use super::Analysis;
use crate::corpus::split_escaped;
use crate::error::{Error, Result};

pub const CONTINUATION: &str = "@@";

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum OutputFormat {
    #[default]
    Hash,
    Marker,
}

impl OutputFormat {
    pub fn parse(s: &str) -> Result<OutputFormat> {
        match s {
            "hash" => Ok(OutputFormat::Hash),
            "marker" => Ok(OutputFormat::Marker),
            _ => Err(Error::Argument(format!("unknown format {s:?}"))),
        }
    }
}

impl fmt::Display for OutputFormat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            OutputFormat::Hash => "hash",
            OutputFormat::Marker => "marker",
        })
    }
}

pub fn render(analyses: &[Analysis], format: OutputFormat) -> String {
    let mut words = Vec::with_capacity(analyses.len());
    for a in analyses {
        match format {
            OutputFormat::Hash => words.push(a.join("#")),
            OutputFormat::Marker => {
                let n = a.len();
                for (i, m) in a.morphs().iter().enumerate() {
                    if i + 1 < n {
                        words.push(format!("{m}{CONTINUATION}"));
                    } else {
                        words.push(m.clone());
                    }
                }
            }
        }
    }
    words.join(" ")
}

/// Reads one line back into per-word analyses.
pub fn parse_line(line: &str, format: OutputFormat) -> Result<Vec<Analysis>> {
    let mut out = Vec::new();
    match format {
        OutputFormat::Hash => {
            for w in line.split_whitespace() {
                let morphs = split_escaped(w, '#');
                out.push(
                    Analysis::new(morphs)
                        .ok_or_else(|| Error::format(0, format!("empty morph in {w:?}")))?,
                );
            }
        }
        OutputFormat::Marker => {
            let mut pending: Vec<String> = Vec::new();
            for t in line.split_whitespace() {
                match t.strip_suffix(CONTINUATION) {
                    Some(m) if !m.is_empty() && !ends_in_escape(m) => pending.push(m.to_string()),
                    _ => {
                        pending.push(t.to_string());
                        out.push(Analysis::new(std::mem::take(&mut pending)).expect("nonempty"));
                    }
                }
            }
            if !pending.is_empty() {
                return Err(Error::format(0, "line ends inside a word (dangling @@)"));
            }
        }
    }
    Ok(out)
}

/// Whether `s` ends with an unfinished escape, in which case a following
/// `@` belongs to it rather than to a continuation marker.
fn ends_in_escape(s: &str) -> bool {
    let backslashes = s.chars().rev().take_while(|&c| c == '\\').count();
    backslashes % 2 == 1
}

/// Joins morphs back into the space-separated word line.
pub fn desegment(line: &str, format: OutputFormat) -> Result<String> {
    Ok(parse_line(line, format)?
        .iter()
        .map(Analysis::surface)
        .collect::<Vec<_>>()
        .join(" "))
}
