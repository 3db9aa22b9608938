//! Declarative pipeline descriptions.
//!
//! Expression grammar (stages chained with `>`):
//!
//! ```text
//! expr   := stage ( '>' stage )*
//! stage  := identity | atb | d3 | en
//!         | file(PATH)
//!         | bpe(vocab=N, data=SIDE)
//!         | mdl(F=X, d=log|ones|none, a=recursive|viterbi, data=SIDE, cap=N, epochs=N)
//!         | route(arabic=expr, latin=expr, mixed=expr, numeric=expr, other=expr, default=expr)
//! SIDE   := src | tgt | joint | src-egy
//! ```
//!
//! A manifest file holds one `stage EXPR` per line; `#` starts a comment.
//! Relative paths resolve against the manifest's directory. `bpe` and `mdl`
//! stages are trained on demand: stage k sees the training words as segmented
//! by stages 1..k-1.

use std::collections::BTreeMap;
use std::fmt;
use std::path::{Path, PathBuf};

use super::{
    load_model, train_bpe, train_mdl, ArRuleSet, Dampening, EnRuleSet, MdlAlgorithm, MdlParams,
    Pipeline, Router, SegmenterModel, Stage, WordFreqs, DEFAULT_MARKER,
};
use crate::corpus::{classify_script, Lang, Script};
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Builtin {
    Identity,
    Atb,
    D3,
    En,
}

impl Builtin {
    pub fn model(self) -> SegmenterModel {
        match self {
            Builtin::Identity => SegmenterModel::Identity,
            Builtin::Atb => SegmenterModel::Arabic(ArRuleSet::atb()),
            Builtin::D3 => SegmenterModel::Arabic(ArRuleSet::d3()),
            Builtin::En => SegmenterModel::English(EnRuleSet::default()),
        }
    }

    fn name(self) -> &'static str {
        match self {
            Builtin::Identity => "identity",
            Builtin::Atb => "atb",
            Builtin::D3 => "d3",
            Builtin::En => "en",
        }
    }
}

/// Which side of the parallel training corpus a trainable stage learns from.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum DataSide {
    Src,
    Tgt,
    #[default]
    Joint,
    /// Arabic-script words of the source side.
    SrcEgy,
}

impl DataSide {
    pub fn parse(s: &str) -> Result<DataSide> {
        match s {
            "src" => Ok(DataSide::Src),
            "tgt" => Ok(DataSide::Tgt),
            "joint" => Ok(DataSide::Joint),
            "src-egy" => Ok(DataSide::SrcEgy),
            _ => Err(Error::Config(format!("unknown data side {s:?}"))),
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            DataSide::Src => "src",
            DataSide::Tgt => "tgt",
            DataSide::Joint => "joint",
            DataSide::SrcEgy => "src-egy",
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum StageSpec {
    Builtin(Builtin),
    File(PathBuf),
    Bpe { vocab: usize, data: DataSide },
    Mdl { params: MdlParams, data: DataSide },
    Route { routes: BTreeMap<Script, SegSpec>, default: Option<Box<SegSpec>> },
}

impl StageSpec {
    fn is_trainable(&self) -> bool {
        match self {
            StageSpec::Bpe { .. } | StageSpec::Mdl { .. } => true,
            StageSpec::Route { routes, default } => {
                routes.values().any(SegSpec::is_trainable)
                    || default.as_ref().is_some_and(|d| d.is_trainable())
            }
            _ => false,
        }
    }
}

/// A parsed, not yet built, pipeline.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct SegSpec {
    pub stages: Vec<StageSpec>,
}

/// Word frequencies of the two sides of a training corpus.
#[derive(Debug, Clone, Default)]
pub struct TrainData {
    pub src: WordFreqs,
    pub tgt: WordFreqs,
}

impl TrainData {
    /// Frequencies for one side, without tokens holding escapes (which
    /// pipelines never split).
    pub fn freqs(&self, side: DataSide) -> WordFreqs {
        let mut out = WordFreqs::new();
        let mut add = |freqs: &WordFreqs, keep: &dyn Fn(Script) -> bool| {
            for (w, &c) in freqs {
                if !w.contains('\\') && keep(classify_script(w)) {
                    *out.entry(w.clone()).or_insert(0) += c;
                }
            }
        };
        match side {
            DataSide::Src => add(&self.src, &|_| true),
            DataSide::Tgt => add(&self.tgt, &|_| true),
            DataSide::Joint => {
                add(&self.src, &|_| true);
                add(&self.tgt, &|_| true);
            }
            DataSide::SrcEgy => add(&self.src, &|s| Lang::of(s) == Lang::Egy),
        }
        out
    }
}

type Source<'a> = dyn Fn(DataSide) -> WordFreqs + 'a;

fn resegment(pipeline: &Pipeline, freqs: &WordFreqs) -> WordFreqs {
    let mut out = WordFreqs::new();
    for (w, &c) in freqs {
        for m in pipeline.segment(w).into_morphs() {
            *out.entry(m).or_insert(0) += c;
        }
    }
    out
}

impl SegSpec {
    pub fn identity() -> SegSpec {
        SegSpec::default()
    }

    pub fn is_trainable(&self) -> bool {
        self.stages.iter().any(StageSpec::is_trainable)
    }

    /// Builds a pipeline with no trainable stages.
    pub fn build(&self) -> Result<Pipeline> {
        if self.is_trainable() {
            return Err(Error::Config(format!(
                "pipeline {self} has trainable stages and needs training data"
            )));
        }
        self.train(&TrainData::default(), 0)
    }

    /// Builds the pipeline, training `bpe` and `mdl` stages on `data`.
    pub fn train(&self, data: &TrainData, seed: u64) -> Result<Pipeline> {
        self.train_chain(&|side| data.freqs(side), seed)
    }

    fn train_chain(&self, source: &Source<'_>, seed: u64) -> Result<Pipeline> {
        let mut built = Pipeline::identity();
        for spec in &self.stages {
            let stage = {
                let prefix = &built;
                let input = |side: DataSide| resegment(prefix, &source(side));
                train_stage(spec, &input, seed)?
            };
            built.stages.push(stage);
        }
        Ok(built)
    }
}

fn train_stage(spec: &StageSpec, input: &Source<'_>, seed: u64) -> Result<Stage> {
    Ok(match spec {
        StageSpec::Builtin(b) => Stage::model(b.model()),
        StageSpec::File(path) => Stage::model(load_model(path)?),
        StageSpec::Bpe { vocab, data } => {
            let freqs = input(*data);
            if freqs.is_empty() {
                return Err(Error::EmptyInput(format!("no {} training words for bpe", data.name())));
            }
            Stage::model(SegmenterModel::Bpe(train_bpe(&freqs, *vocab, DEFAULT_MARKER)?))
        }
        StageSpec::Mdl { params, data } => {
            let params = MdlParams {
                seed,
                ..params.clone()
            };
            Stage::model(SegmenterModel::Mdl(train_mdl(&input(*data), &params)?))
        }
        StageSpec::Route { routes, default } => {
            let keys: Vec<Script> = routes.keys().copied().collect();
            let mut router = Router::new();
            for (&script, sub) in routes {
                let filtered = |side: DataSide| -> WordFreqs {
                    input(side)
                        .into_iter()
                        .filter(|(w, _)| classify_script(w) == script)
                        .collect()
                };
                router.routes.insert(script, sub.train_chain(&filtered, seed)?);
            }
            if let Some(sub) = default {
                let rest = |side: DataSide| -> WordFreqs {
                    input(side)
                        .into_iter()
                        .filter(|(w, _)| !keys.contains(&classify_script(w)))
                        .collect()
                };
                router.default = sub.train_chain(&rest, seed)?;
            }
            Stage::Route(router)
        }
    })
}

impl fmt::Display for StageSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            StageSpec::Builtin(b) => f.write_str(b.name()),
            StageSpec::File(p) => write!(f, "file({})", p.display()),
            StageSpec::Bpe { vocab, data } => write!(f, "bpe(vocab={vocab}, data={})", data.name()),
            StageSpec::Mdl { params, data } => {
                write!(
                    f,
                    "mdl(F={}, d={}, a={}, data={}",
                    params.finish_threshold,
                    params.dampening,
                    params.algorithm,
                    data.name()
                )?;
                if let Some(cap) = params.lexicon_cap {
                    write!(f, ", cap={cap}")?;
                }
                write!(f, ")")
            }
            StageSpec::Route { routes, default } => {
                let mut parts: Vec<String> =
                    routes.iter().map(|(s, p)| format!("{}={p}", s.name())).collect();
                if let Some(d) = default {
                    parts.push(format!("default={d}"));
                }
                write!(f, "route({})", parts.join(", "))
            }
        }
    }
}

impl fmt::Display for SegSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.stages.is_empty() {
            return f.write_str("identity");
        }
        let parts: Vec<String> = self.stages.iter().map(|s| s.to_string()).collect();
        f.write_str(&parts.join(" > "))
    }
}

struct Parser<'a> {
    chars: Vec<char>,
    pos: usize,
    base: &'a Path,
}

impl Parser<'_> {
    fn err(&self, msg: impl fmt::Display) -> Error {
        let text: String = self.chars.iter().collect();
        Error::Config(format!("{msg} at column {} of {text:?}", self.pos + 1))
    }

    fn skip_ws(&mut self) {
        while self.chars.get(self.pos).is_some_and(|c| c.is_whitespace()) {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<char> {
        self.skip_ws();
        self.chars.get(self.pos).copied()
    }

    fn expect(&mut self, c: char) -> Result<()> {
        if self.peek() == Some(c) {
            self.pos += 1;
            Ok(())
        } else {
            Err(self.err(format!("expected {c:?}")))
        }
    }

    fn ident(&mut self) -> Result<String> {
        self.skip_ws();
        let start = self.pos;
        while self
            .chars
            .get(self.pos)
            .is_some_and(|c| c.is_alphanumeric() || matches!(c, '_' | '-' | '.'))
        {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.err("expected a name"));
        }
        Ok(self.chars[start..self.pos].iter().collect())
    }

    /// Raw text up to the next `,` or `)`.
    fn raw_value(&mut self) -> Result<String> {
        self.skip_ws();
        let start = self.pos;
        while self.chars.get(self.pos).is_some_and(|&c| c != ',' && c != ')') {
            self.pos += 1;
        }
        let v: String = self.chars[start..self.pos].iter().collect();
        let v = v.trim().to_string();
        if v.is_empty() {
            return Err(self.err("expected a value"));
        }
        Ok(v)
    }

    fn chain(&mut self) -> Result<SegSpec> {
        let mut stages = vec![self.stage()?];
        while self.peek() == Some('>') {
            self.pos += 1;
            stages.push(self.stage()?);
        }
        Ok(SegSpec { stages })
    }

    fn stage(&mut self) -> Result<StageSpec> {
        let name = self.ident()?;
        let builtin = match name.as_str() {
            "identity" => Some(Builtin::Identity),
            "atb" => Some(Builtin::Atb),
            "d3" => Some(Builtin::D3),
            "en" => Some(Builtin::En),
            _ => None,
        };
        if let Some(b) = builtin {
            return Ok(StageSpec::Builtin(b));
        }
        self.expect('(')?;
        let stage = match name.as_str() {
            "file" => {
                self.skip_ws();
                let start = self.pos;
                while self.chars.get(self.pos).is_some_and(|&c| c != ')') {
                    self.pos += 1;
                }
                let raw: String = self.chars[start..self.pos].iter().collect();
                let raw = raw.trim();
                if raw.is_empty() {
                    return Err(self.err("file() needs a path"));
                }
                StageSpec::File(self.base.join(raw))
            }
            "route" => {
                let mut routes = BTreeMap::new();
                let mut default = None;
                for (key, spec) in self.route_args()? {
                    if key == "default" {
                        default = Some(Box::new(spec));
                    } else {
                        let script = Script::parse(&key)
                            .filter(|s| *s != Script::Punct)
                            .ok_or_else(|| self.err(format!("unknown route key {key:?}")))?;
                        if routes.insert(script, spec).is_some() {
                            return Err(self.err(format!("duplicate route {key:?}")));
                        }
                    }
                }
                StageSpec::Route { routes, default }
            }
            "bpe" => {
                let mut vocab = 8000;
                let mut data = DataSide::Joint;
                for (key, value) in self.kv_args()? {
                    match key.as_str() {
                        "vocab" => vocab = value.parse().map_err(|_| self.err("bad vocab"))?,
                        "data" => data = DataSide::parse(&value)?,
                        _ => return Err(self.err(format!("unknown bpe option {key:?}"))),
                    }
                }
                StageSpec::Bpe { vocab, data }
            }
            "mdl" => {
                let mut params = MdlParams::default();
                let mut data = DataSide::Joint;
                for (key, value) in self.kv_args()? {
                    let bad = |p: &Parser| p.err(format!("bad value {value:?} for {key}"));
                    match key.as_str() {
                        "F" => params.finish_threshold = value.parse().map_err(|_| bad(self))?,
                        "d" => params.dampening = Dampening::parse(&value).map_err(|_| bad(self))?,
                        "a" => params.algorithm = MdlAlgorithm::parse(&value).map_err(|_| bad(self))?,
                        "cap" => params.lexicon_cap = Some(value.parse().map_err(|_| bad(self))?),
                        "epochs" => params.max_epochs = value.parse().map_err(|_| bad(self))?,
                        "data" => data = DataSide::parse(&value)?,
                        _ => return Err(self.err(format!("unknown mdl option {key:?}"))),
                    }
                }
                StageSpec::Mdl { params, data }
            }
            _ => return Err(self.err(format!("unknown stage {name:?}"))),
        };
        self.expect(')')?;
        Ok(stage)
    }

    fn route_args(&mut self) -> Result<Vec<(String, SegSpec)>> {
        let mut out = Vec::new();
        if self.peek() == Some(')') {
            return Ok(out);
        }
        loop {
            let key = self.ident()?;
            self.expect('=')?;
            out.push((key, self.chain()?));
            if self.peek() != Some(',') {
                return Ok(out);
            }
            self.pos += 1;
        }
    }

    fn kv_args(&mut self) -> Result<Vec<(String, String)>> {
        let mut out = Vec::new();
        if self.peek() == Some(')') {
            return Ok(out);
        }
        loop {
            let key = self.ident()?;
            self.expect('=')?;
            out.push((key, self.raw_value()?));
            if self.peek() != Some(',') {
                return Ok(out);
            }
            self.pos += 1;
        }
    }
}

/// Parses one pipeline expression; `file()` paths resolve against `base`.
pub fn parse_pipeline_expr(text: &str, base: &Path) -> Result<SegSpec> {
    let mut p = Parser {
        chars: text.chars().collect(),
        pos: 0,
        base,
    };
    let spec = p.chain()?;
    if p.peek().is_some() {
        return Err(p.err("unexpected trailing text"));
    }
    Ok(spec)
}

/// Parses a manifest: `stage EXPR` lines, concatenated in order.
pub fn parse_manifest(text: &str, base: &Path) -> Result<SegSpec> {
    let mut spec = SegSpec::default();
    for (i, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let expr = line
            .strip_prefix("stage")
            .filter(|rest| rest.starts_with(char::is_whitespace))
            .ok_or_else(|| Error::Config(format!("line {}: expected `stage EXPR`", i + 1)))?;
        let parsed = parse_pipeline_expr(expr, base)
            .map_err(|e| Error::Config(format!("line {}: {e}", i + 1)))?;
        spec.stages.extend(parsed.stages);
    }
    if spec.stages.is_empty() {
        return Err(Error::Config("manifest declares no stages".into()));
    }
    Ok(spec)
}

/// Reads a manifest file and builds its (untrainable) pipeline.
pub fn load_pipeline(path: &Path) -> Result<Pipeline> {
    let text = std::fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
    let base = path.parent().unwrap_or(Path::new("."));
    parse_manifest(&text, base)?.build()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::segment::word_freqs;
    use crate::translit::from_buckwalter;

    fn parse(text: &str) -> Result<SegSpec> {
        parse_pipeline_expr(text, Path::new("/models"))
    }

    #[test]
    fn parses_chains_and_routes() {
        let spec = parse("atb > bpe(vocab=100, data=src)").unwrap();
        assert_eq!(
            spec.stages,
            vec![
                StageSpec::Builtin(Builtin::Atb),
                StageSpec::Bpe { vocab: 100, data: DataSide::Src }
            ]
        );
        let spec = parse("route(arabic=atb > file(m/a.bpe), latin=en, default=identity)").unwrap();
        let StageSpec::Route { routes, default } = &spec.stages[0] else {
            panic!("expected a route")
        };
        assert_eq!(routes[&Script::Arabic].stages[1], StageSpec::File("/models/m/a.bpe".into()));
        assert_eq!(routes[&Script::Latin].stages, vec![StageSpec::Builtin(Builtin::En)]);
        assert!(default.is_some());
    }

    #[test]
    fn display_round_trips() {
        for text in [
            "identity",
            "atb > bpe(vocab=100, data=joint)",
            "mdl(F=0.005, d=ones, a=viterbi, data=src-egy, cap=50)",
            "route(arabic=d3, latin=en > bpe(vocab=10, data=tgt), default=identity)",
        ] {
            let spec = parse(text).unwrap();
            assert_eq!(parse(&spec.to_string()).unwrap(), spec, "{text}");
        }
    }

    #[test]
    fn rejects_bad_input() {
        for text in ["", "nope", "bpe(vocab=x)", "route(punct=en)", "atb >", "atb en", "mdl(q=1)"] {
            assert!(matches!(parse(text), Err(Error::Config(_))), "{text}");
        }
    }

    #[test]
    fn manifest_lines() {
        let spec = parse_manifest("# comment\nstage atb\n\nstage en\n", Path::new(".")).unwrap();
        assert_eq!(spec.stages.len(), 2);
        assert!(parse_manifest("atb\n", Path::new(".")).is_err());
        assert!(parse_manifest("# nothing\n", Path::new(".")).is_err());
    }

    #[test]
    fn builds_and_trains() {
        let p = parse("atb").unwrap().build().unwrap();
        assert_eq!(p.segment(&from_buckwalter("bSrAHp")).len(), 2);
        assert!(parse("bpe(vocab=50)").unwrap().build().is_err());

        let data = TrainData {
            src: word_freqs(["walking", "talking", "walked"]),
            tgt: word_freqs(["cars", "car"]),
        };
        let spec = parse("en > bpe(vocab=20, data=tgt)").unwrap();
        let p = spec.train(&data, 1).unwrap();
        let bpe = match p.models()[1] {
            SegmenterModel::Bpe(m) => m.clone(),
            other => panic!("unexpected {other:?}"),
        };
        // the bpe stage saw the english-segmented target side: car, car, s
        let expect = train_bpe(&word_freqs(["car", "car", "s"]), 20, DEFAULT_MARKER).unwrap();
        assert_eq!(bpe, expect);
    }
}
