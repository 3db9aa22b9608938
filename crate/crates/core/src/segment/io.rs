//! Model files.
//!
//! Every file starts with a `<kind> v1` header and ends with a
//! `crc32=<hex>` line covering all bytes before it. The trailer is mandatory
//! for trained models; hand-written rule files may omit it.

use std::collections::BTreeMap;
use std::fs;
use std::path::Path;

use super::arabic::AR_RULES_HEADER;
use super::english::EN_RULES_HEADER;
use super::mdl::{Alphabet, WEIGHT_SCALE};
use super::{ArRuleSet, BpeModel, Dampening, EnRuleSet, MdlAlgorithm, MdlModel, MdlParams, SegmenterModel};
use crate::error::{Error, Result};

const IDENTITY_HEADER: &str = "identity v1";

pub fn save_model(model: &SegmenterModel, path: &Path) -> Result<()> {
    fs::write(path, model_to_string(model)).map_err(|e| Error::io(path, e))
}

pub fn load_model(path: &Path) -> Result<SegmenterModel> {
    let bytes = fs::read(path).map_err(|e| Error::io(path, e))?;
    let text = String::from_utf8(bytes).map_err(|e| {
        let line = e.as_bytes()[..e.utf8_error().valid_up_to()]
            .iter()
            .filter(|&&b| b == b'\n')
            .count();
        Error::Decode { line: line + 1 }
    })?;
    model_from_str(&text)
}

pub fn model_to_string(model: &SegmenterModel) -> String {
    let body = match model {
        SegmenterModel::Identity => format!("{IDENTITY_HEADER}\n"),
        SegmenterModel::Bpe(m) => render_bpe(m),
        SegmenterModel::Mdl(m) => render_mdl(m),
        SegmenterModel::English(r) => r.render(),
        SegmenterModel::Arabic(r) => r.render(),
    };
    let crc = crc32fast::hash(body.as_bytes());
    format!("{body}crc32={crc:08x}\n")
}

/// Splits off and verifies the trailer. Returns the body.
fn check_crc(text: &str, required: bool) -> Result<&str> {
    let trimmed = text.strip_suffix('\n').unwrap_or(text);
    let (body_len, last) = match trimmed.rfind('\n') {
        Some(i) => (i + 1, &trimmed[i + 1..]),
        None => (0, trimmed),
    };
    let Some(hex) = last.strip_prefix("crc32=") else {
        return if required {
            Err(Error::Checksum("missing crc32 trailer (truncated file?)".into()))
        } else {
            Ok(text)
        };
    };
    let expected = u32::from_str_radix(hex.trim(), 16)
        .map_err(|_| Error::Checksum(format!("unreadable checksum {hex:?}")))?;
    let body = &text[..body_len];
    let actual = crc32fast::hash(body.as_bytes());
    if actual != expected {
        return Err(Error::Checksum(format!(
            "checksum mismatch: file says {expected:08x}, content is {actual:08x}"
        )));
    }
    Ok(body)
}

pub fn model_from_str(text: &str) -> Result<SegmenterModel> {
    let header = text.lines().next().unwrap_or("");
    let kind = header.split_whitespace().next().unwrap_or("");
    let version = header.split_whitespace().nth(1).unwrap_or("");
    match kind {
        "identity" | "bpe" | "mdl" | "en-rules" | "ar-rules" if version != "v1" => {
            return Err(Error::Version(format!(
                "{kind} model version {version:?} is not supported (expected v1)"
            )))
        }
        _ => {}
    }
    match kind {
        "identity" => {
            check_crc(text, false)?;
            Ok(SegmenterModel::Identity)
        }
        "bpe" => parse_bpe(check_crc(text, true)?).map(SegmenterModel::Bpe),
        "mdl" => parse_mdl(check_crc(text, true)?).map(SegmenterModel::Mdl),
        "en-rules" => EnRuleSet::parse(check_crc(text, false)?).map(SegmenterModel::English),
        "ar-rules" => ArRuleSet::parse(check_crc(text, false)?).map(SegmenterModel::Arabic),
        _ => Err(Error::format(
            1,
            format!(
                "unknown model header {header:?}; expected bpe, mdl, {EN_RULES_HEADER:?}, {AR_RULES_HEADER:?} or {IDENTITY_HEADER:?}"
            ),
        )),
    }
}

fn render_bpe(m: &BpeModel) -> String {
    let mut out = format!("bpe v1 vocab={} marker={}\n", m.vocab_size(), m.marker());
    for sym in m.alphabet() {
        out.push_str(sym);
        out.push('\n');
    }
    for (l, r) in m.merges() {
        out.push_str(&format!("{l} {r}\n"));
    }
    out
}

fn header_fields(header: &str) -> BTreeMap<&str, &str> {
    header
        .split_whitespace()
        .skip(2)
        .filter_map(|f| f.split_once('='))
        .collect()
}

fn field<'a>(fields: &BTreeMap<&str, &'a str>, key: &str) -> Result<&'a str> {
    fields
        .get(key)
        .copied()
        .ok_or_else(|| Error::format(1, format!("header lacks {key}=")))
}

fn parse_bpe(body: &str) -> Result<BpeModel> {
    let mut lines = body.lines();
    let fields = header_fields(lines.next().unwrap_or(""));
    let vocab: usize = field(&fields, "vocab")?
        .parse()
        .map_err(|_| Error::format(1, "bad vocab"))?;
    let mut mchars = field(&fields, "marker")?.chars();
    let marker = match (mchars.next(), mchars.next()) {
        (Some(c), None) => c,
        _ => return Err(Error::format(1, "marker must be one character")),
    };
    let mut alphabet = Vec::new();
    let mut merges = Vec::new();
    for (i, line) in lines.enumerate() {
        let no = i + 2;
        let parts: Vec<&str> = line.split(' ').collect();
        match parts.as_slice() {
            [sym] if merges.is_empty() && !sym.is_empty() => alphabet.push(sym.to_string()),
            [l, r] if !l.is_empty() && !r.is_empty() => merges.push((l.to_string(), r.to_string())),
            _ => return Err(Error::format(no, format!("bad bpe line {line:?}"))),
        }
    }
    let model =
        BpeModel::from_parts(alphabet, merges, marker).map_err(|e| Error::format(0, e.to_string()))?;
    if model.vocab_size() != vocab {
        return Err(Error::format(
            1,
            format!("header vocab {vocab} but merges give {}", model.vocab_size()),
        ));
    }
    Ok(model)
}

fn render_mdl(m: &MdlModel) -> String {
    let p = m.params();
    let cap = p.lexicon_cap.map_or("none".to_string(), |c| c.to_string());
    let mut out = format!(
        "mdl v1 F={} d={} a={} seed={} epochs={} cap={} scale={}\n",
        p.finish_threshold, p.dampening, p.algorithm, p.seed, p.max_epochs, cap, WEIGHT_SCALE
    );
    for (morph, units) in m.lexicon() {
        out.push_str(&format!("{morph}\t{units}\n"));
    }
    out.push_str("%alphabet\n");
    for (c, w) in &m.alphabet.chars {
        out.push_str(&format!("{c}\t{w}\n"));
    }
    out.push_str(&format!("%end\t{}\n", m.alphabet.end));
    out
}

fn parse_mdl(body: &str) -> Result<MdlModel> {
    let mut lines = body.lines().enumerate().map(|(i, l)| (i + 1, l));
    let fields = header_fields(lines.next().map_or("", |(_, l)| l));
    let num = |key: &str| -> Result<&str> { field(&fields, key) };
    let bad = |key: &str| Error::format(1, format!("bad {key} value"));
    if num("scale")?.parse::<u64>().map_err(|_| bad("scale"))? != WEIGHT_SCALE {
        return Err(Error::Version(format!("unsupported count scale {}", num("scale")?)));
    }
    let params = MdlParams {
        finish_threshold: num("F")?.parse().map_err(|_| bad("F"))?,
        dampening: Dampening::parse(num("d")?).map_err(|_| bad("d"))?,
        algorithm: MdlAlgorithm::parse(num("a")?).map_err(|_| bad("a"))?,
        seed: num("seed")?.parse().map_err(|_| bad("seed"))?,
        max_epochs: num("epochs")?.parse().map_err(|_| bad("epochs"))?,
        lexicon_cap: match num("cap")? {
            "none" => None,
            c => Some(c.parse().map_err(|_| bad("cap"))?),
        },
    };
    let mut lexicon = BTreeMap::new();
    let mut chars = BTreeMap::new();
    let mut end = None;
    let mut in_alphabet = false;
    for (no, line) in lines {
        if line == "%alphabet" {
            in_alphabet = true;
            continue;
        }
        let (key, value) = line
            .split_once('\t')
            .ok_or_else(|| Error::format(no, format!("expected two tab-separated fields, got {line:?}")))?;
        let value: u64 = value
            .parse()
            .map_err(|_| Error::format(no, format!("bad count {value:?}")))?;
        if !in_alphabet {
            if key.is_empty() || value < WEIGHT_SCALE {
                return Err(Error::format(no, "morphs must be nonempty with count at least 1"));
            }
            lexicon.insert(key.to_string(), value);
        } else if key == "%end" {
            end = Some(value);
        } else {
            let mut cs = key.chars();
            match (cs.next(), cs.next()) {
                (Some(c), None) => {
                    chars.insert(c, value);
                }
                _ => return Err(Error::format(no, format!("bad alphabet entry {key:?}"))),
            }
        }
    }
    let end = end.ok_or_else(|| Error::format(0, "missing %end line"))?;
    if lexicon.is_empty() || end == 0 {
        return Err(Error::format(0, "empty mdl model"));
    }
    Ok(MdlModel::from_parts(params, lexicon, Alphabet::new(chars, end)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::segment::{train_bpe, train_mdl, word_freqs, DEFAULT_MARKER};

    fn models() -> Vec<SegmenterModel> {
        let f = word_freqs("walking talking walked talked walks car cars".split(' '));
        vec![
            SegmenterModel::Identity,
            SegmenterModel::Bpe(train_bpe(&f, 30, DEFAULT_MARKER).unwrap()),
            SegmenterModel::Mdl(train_mdl(&f, &MdlParams::default()).unwrap()),
            SegmenterModel::Mdl(
                train_mdl(
                    &f,
                    &MdlParams {
                        lexicon_cap: Some(12),
                        dampening: Dampening::None,
                        ..Default::default()
                    },
                )
                .unwrap(),
            ),
            SegmenterModel::English(EnRuleSet::default()),
            SegmenterModel::Arabic(ArRuleSet::d3()),
        ]
    }

    #[test]
    fn round_trip_is_exact() {
        for m in models() {
            let text = model_to_string(&m);
            let back = model_from_str(&text).unwrap();
            assert_eq!(back, m, "{}", m.kind());
            assert_eq!(model_to_string(&back), text);
        }
    }

    #[test]
    fn truncation_and_corruption() {
        for m in models().into_iter().filter(|m| matches!(m, SegmenterModel::Bpe(_) | SegmenterModel::Mdl(_))) {
            let text = model_to_string(&m);
            let cut = &text[..text.len() / 2];
            assert!(matches!(model_from_str(cut), Err(Error::Checksum(_))), "{}", m.kind());
            let corrupted = text.replacen('\n', "\nx\n", 1);
            assert!(matches!(model_from_str(&corrupted), Err(Error::Checksum(_))));
        }
    }

    #[test]
    fn version_and_format_errors() {
        assert!(matches!(model_from_str("bpe v2 vocab=1 marker=_\n"), Err(Error::Version(_))));
        assert!(matches!(model_from_str("what is this\n"), Err(Error::Format { .. })));
        let body = "bpe v1 vocab=5 marker=_\na\nb\n";
        let text = format!("{body}crc32={:08x}\n", crc32fast::hash(body.as_bytes()));
        assert!(matches!(model_from_str(&text), Err(Error::Format { .. })));
    }

    #[test]
    fn rule_files_without_trailer_load() {
        let m = model_from_str("en-rules v1\nmin_stem_len=3\n").unwrap();
        assert_eq!(m.kind(), "en-rules");
    }
}
