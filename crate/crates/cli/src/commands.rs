use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::fs;
use std::io::{self, Read, Write};
use std::path::{Path, PathBuf};

use rayon::prelude::*;
use regex::Regex;

use csseg::analysis::{self, ExperimentConfig};
use csseg::corpus::{
    self, categorize, corpus_stats, decode_lines, read_lines, ArabicNorm, McsDetector, McsMode,
    PreprocessOptions, Sentence, SentenceCategory,
};
use csseg::metrics::{
    emma, report_from_stats, seg_diagnostics, sentence_stats, ChrfConfig, ChrfMode, ChrfStats,
    DiagCounts, PrfScores,
};
use csseg::segment::format::{self, OutputFormat};
use csseg::segment::{
    load_model, load_pipeline, save_model, train_bpe, train_mdl_with_report, word_freqs,
    Analysis, ArRuleSet, ArScheme, Dampening, DataSide, EnRuleSet, MdlAlgorithm, MdlParams,
    Pipeline, SegmenterModel, TrainData,
};
use csseg::{Error, Result};

use crate::{
    AnalyzeArgs, DesegmentArgs, EvalMtArgs, EvalSegArgs, Method, PreprocessArgs, SegmentArgs,
    StatsArgs, SubsampleArgs, TrainArgs, Translit,
};

fn read_input(path: Option<&Path>) -> Result<Vec<String>> {
    match path {
        Some(p) => read_lines(p),
        None => {
            let mut bytes = Vec::new();
            io::stdin()
                .read_to_end(&mut bytes)
                .map_err(|e| Error::io("<stdin>", e))?;
            decode_lines(&bytes)
        }
    }
}

/// Writes lines, each terminated by `\n`.
fn write_lines(path: Option<&Path>, lines: &[String]) -> Result<()> {
    let mut text = String::with_capacity(lines.iter().map(|l| l.len() + 1).sum());
    for l in lines {
        text.push_str(l);
        text.push('\n');
    }
    write_output(path, text.as_bytes())
}

fn write_output(path: Option<&Path>, bytes: &[u8]) -> Result<()> {
    match path {
        Some(p) => fs::write(p, bytes).map_err(|e| Error::io(p, e)),
        None => {
            let mut out = io::stdout().lock();
            out.write_all(bytes)
                .and_then(|_| out.flush())
                .map_err(|e| Error::io("<stdout>", e))
        }
    }
}

fn print(text: &str) -> Result<()> {
    write_output(None, text.as_bytes())
}

fn same_count(what: &str, inputs: &[PathBuf], outputs: &[PathBuf]) -> Result<()> {
    if inputs.len() != outputs.len() {
        return Err(Error::Argument(format!(
            "{what}: {} --in but {} --out",
            inputs.len(),
            outputs.len()
        )));
    }
    Ok(())
}

fn thread_pool(threads: usize) -> Result<rayon::ThreadPool> {
    if threads == 0 {
        return Err(Error::Argument("--threads must be at least 1".into()));
    }
    rayon::ThreadPoolBuilder::new()
        .num_threads(threads)
        .build()
        .map_err(|e| Error::Argument(format!("thread pool: {e}")))
}

pub fn preprocess(a: PreprocessArgs) -> Result<()> {
    same_count("preprocess", &a.input, &a.output)?;
    let markup = if a.markup.is_empty() {
        corpus::default_markup()
    } else {
        a.markup
            .iter()
            .map(|m| Regex::new(m).map_err(|e| Error::Argument(format!("--markup {m:?}: {e}"))))
            .collect::<Result<_>>()?
    };
    let opts = PreprocessOptions {
        markup,
        remove_urls: !a.keep_urls,
        remove_emoticons: !a.keep_emoticons,
        split_digits: !a.no_digit_split,
        normalize: ArabicNorm::parse(&a.normalize)?,
    };
    let sides: Vec<Vec<String>> = a.input.iter().map(|p| read_lines(p)).collect::<Result<_>>()?;
    let cleaned = corpus::preprocess_parallel(&sides, &opts)?;
    for ((side, out), raw) in cleaned.iter().zip(&a.output).zip(&sides) {
        log::info!("{}: kept {} of {} lines", out.display(), side.len(), raw.len());
        let lines: Vec<String> = side.iter().map(Sentence::render).collect();
        write_lines(Some(out), &lines)?;
    }
    Ok(())
}

pub fn train(a: TrainArgs) -> Result<()> {
    let model = match a.method {
        Method::Bpe | Method::Mdl => {
            if a.input.is_empty() {
                return Err(Error::Argument(
                    "--in is required for bpe and mdl training".into(),
                ));
            }
            let mut lines = Vec::new();
            for p in &a.input {
                lines.extend(read_lines(p)?);
            }
            let data = TrainData {
                src: word_freqs(lines.iter().flat_map(|l| l.split_whitespace())),
                tgt: Default::default(),
            };
            let freqs = data.freqs(DataSide::Src);
            if a.method == Method::Bpe {
                SegmenterModel::Bpe(train_bpe(&freqs, a.vocab, a.marker)?)
            } else {
                let params = MdlParams {
                    finish_threshold: a.finish_threshold,
                    dampening: Dampening::parse(&a.dampening)?,
                    algorithm: MdlAlgorithm::parse(&a.algorithm)?,
                    seed: a.seed,
                    max_epochs: a.epochs,
                    lexicon_cap: a.cap,
                };
                let (model, report) = train_mdl_with_report(&freqs, &params)?;
                log::info!("baseline cost {:.3} bits", report.baseline_cost);
                for (i, c) in report.epoch_costs.iter().enumerate() {
                    log::info!("epoch {}: cost {c:.3} bits", i + 1);
                }
                SegmenterModel::Mdl(model)
            }
        }
        Method::ArRules => {
            let scheme = ArScheme::parse(&a.scheme)?;
            let mut rules = match &a.rules {
                Some(p) => ArRuleSet::parse(&read_text(p)?)?,
                None => ArRuleSet::new(scheme),
            };
            rules.scheme = scheme;
            SegmenterModel::Arabic(rules)
        }
        Method::EnRules => SegmenterModel::English(match &a.rules {
            Some(p) => EnRuleSet::parse(&read_text(p)?)?,
            None => EnRuleSet::default(),
        }),
    };
    save_model(&model, &a.output)
}

fn read_text(path: &Path) -> Result<String> {
    Ok(read_lines(path)?.join("\n"))
}

fn load_segmenter(model: Option<&Path>, pipeline: Option<&Path>) -> Result<Pipeline> {
    match (model, pipeline) {
        (Some(m), None) => Ok(Pipeline::single(load_model(m)?)),
        (None, Some(p)) => load_pipeline(p),
        (None, None) => Err(Error::Argument("one of --model or --pipeline is required".into())),
        (Some(_), Some(_)) => Err(Error::Argument(
            "--model and --pipeline are mutually exclusive".into(),
        )),
    }
}

pub fn segment(a: SegmentArgs) -> Result<()> {
    let pipeline = load_segmenter(a.source.model.as_deref(), a.source.pipeline.as_deref())?;
    let lines = read_input(a.input.as_deref())?;
    let fmt = OutputFormat::from(a.format);
    let translit = a.translit;
    let one = |line: &String| -> String {
        let Some(sentence) = Sentence::from_tokenized(0, line) else {
            return String::new();
        };
        let out = format::render(&pipeline.segment_sentence(&sentence), fmt);
        match translit {
            Translit::None => out,
            Translit::Bw => csseg::translit::to_buckwalter(&out),
        }
    };
    let out: Vec<String> = match a.threads {
        0 => return Err(Error::Argument("--threads must be at least 1".into())),
        1 => lines.iter().map(one).collect(),
        n => thread_pool(n)?.install(|| lines.par_iter().map(one).collect()),
    };
    write_lines(a.output.as_deref(), &out)
}

pub fn desegment(a: DesegmentArgs) -> Result<()> {
    let fmt = OutputFormat::from(a.format);
    let out = read_input(a.input.as_deref())?
        .iter()
        .enumerate()
        .map(|(i, l)| {
            format::desegment(l, fmt).map_err(|e| match e {
                Error::Format { msg, .. } => Error::format(i + 1, msg),
                other => other,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    write_lines(a.output.as_deref(), &out)
}

/// Reads `hash`-format predictions, one line per gold sentence, and checks
/// each word against the gold surface.
fn read_predictions(path: &Path, gold: &[corpus::GoldSentence]) -> Result<Vec<Analysis>> {
    let mut lines = read_lines(path)?;
    while lines.last().is_some_and(|l| l.trim().is_empty()) {
        lines.pop();
    }
    if lines.len() != gold.len() {
        return Err(Error::Alignment(format!(
            "{} has {} lines but the gold file has {} sentences",
            path.display(),
            lines.len(),
            gold.len()
        )));
    }
    let mut out = Vec::new();
    for (i, (line, g)) in lines.iter().zip(gold).enumerate() {
        let words = format::parse_line(line, OutputFormat::Hash).map_err(|e| match e {
            Error::Format { msg, .. } => Error::format(i + 1, msg),
            other => other,
        })?;
        if words.len() != g.entries.len() {
            return Err(Error::Alignment(format!(
                "line {}: {} predicted words, {} gold words",
                i + 1,
                words.len(),
                g.entries.len()
            )));
        }
        for (w, e) in words.iter().zip(&g.entries) {
            if w.surface() != e.word.surface() {
                return Err(Error::Alignment(format!(
                    "line {}: predicted {:?} for gold word {:?}",
                    i + 1,
                    w.surface(),
                    e.word.surface()
                )));
            }
        }
        out.extend(words);
    }
    Ok(out)
}

fn prf_line(out: &mut String, row: &str, s: &PrfScores) {
    writeln!(
        out,
        "{row}\t{}\t{:.3}\t{:.3}\t{:.3}",
        s.words, s.precision, s.recall, s.f1
    )
    .unwrap();
}

fn diag_line(out: &mut String, row: &str, d: &DiagCounts) {
    writeln!(
        out,
        "{row}\t{}\t{}\t{}\t{}\t{}",
        d.under, d.over, d.correct_seg, d.correct_unseg, d.correct()
    )
    .unwrap();
}

pub fn eval_seg(a: EvalSegArgs) -> Result<()> {
    let gold = corpus::load_gold(&a.gold)?;
    let entries: Vec<&corpus::GoldEntry> = gold.iter().flat_map(|s| &s.entries).collect();
    let gold_analyses: Vec<Analysis> = entries.iter().map(|e| e.morphs.clone()).collect();
    let langs: Vec<_> = entries.iter().map(|e| e.word.lang()).collect();
    let pred = match &a.pred {
        Some(p) => read_predictions(p, &gold)?,
        None => {
            let pipeline = load_segmenter(a.model.as_deref(), a.pipeline.as_deref())?;
            entries.iter().map(|e| pipeline.segment(e.word.surface())).collect()
        }
    };
    let report = emma(&pred, &gold_analyses, &langs)?;
    let mut out = String::from("row\twords\tprecision\trecall\tF1\n");
    prf_line(&mut out, "All", &report.all);
    if a.by_lang {
        for (row, s) in [("EGY", &report.egy), ("EN", &report.en)] {
            match s {
                Some(s) => prf_line(&mut out, row, s),
                None => writeln!(out, "{row}\t0\t-\t-\t-").unwrap(),
            }
        }
    }
    if a.diagnostics {
        let d = seg_diagnostics(&pred, &gold_analyses, &langs)?;
        out.push_str("\nrow\tunder\tover\tcorrect_seg\tcorrect_unseg\tcorrect\n");
        diag_line(&mut out, "All", &d.all);
        diag_line(&mut out, "EGY", &d.egy);
        diag_line(&mut out, "EN", &d.en);
    }
    print(&out)
}

fn chrf_config(order_mean: bool) -> ChrfConfig {
    ChrfConfig {
        mode: if order_mean {
            ChrfMode::OrderMean
        } else {
            ChrfMode::Reference
        },
        ..ChrfConfig::default()
    }
}

fn categories_of(src: &Path, mode: &str, expected: usize) -> Result<Vec<SentenceCategory>> {
    let detector = McsDetector::new(McsMode::parse(mode)?);
    let lines = read_lines(src)?;
    if lines.len() != expected {
        return Err(Error::Alignment(format!(
            "{} has {} lines, the reference has {expected}",
            src.display(),
            lines.len()
        )));
    }
    Ok(lines
        .iter()
        .enumerate()
        .map(|(i, l)| {
            let s = Sentence::from_tokenized(i, l).unwrap_or(Sentence {
                id: i,
                tokens: Vec::new(),
            });
            categorize(&s, &detector)
        })
        .collect())
}

fn category_rows(out: &mut String, prefix: &str, rows: &[analysis::CategoryScore]) {
    for r in rows {
        let rank = r.rank.map_or_else(|| "-".to_string(), |k| k.to_string());
        writeln!(
            out,
            "{prefix}{}\t{}\t{}\t{rank}",
            r.row.name(),
            r.sentences,
            analysis::score1(r.score)
        )
        .unwrap();
    }
}

pub fn eval_mt(a: EvalMtArgs) -> Result<()> {
    let cfg = chrf_config(a.order_mean);
    let refs = read_lines(&a.reference)?;
    let pool = thread_pool(a.threads)?;
    let mut systems = Vec::with_capacity(a.hyp.len());
    for p in &a.hyp {
        systems.push((p.display().to_string(), read_lines(p)?));
    }
    let mut out = String::new();

    if !systems.is_empty() {
        out.push_str("system\tsentences\tchrF2++\n");
    }
    for (name, hyps) in &systems {
        if hyps.len() != refs.len() {
            return Err(Error::Alignment(format!(
                "{name} has {} lines, the reference has {}",
                hyps.len(),
                refs.len()
            )));
        }
        if refs.is_empty() {
            return Err(Error::EmptyInput("no reference sentences".into()));
        }
        let per_sentence: Vec<ChrfStats> = pool.install(|| {
            hyps.par_iter()
                .zip(refs.par_iter())
                .map(|(h, r)| sentence_stats(h, r, &cfg))
                .collect()
        });
        let mut total = ChrfStats::zeros(&cfg);
        for s in &per_sentence {
            total.add(s);
        }
        let report = report_from_stats(total, refs.len(), &cfg);
        writeln!(out, "{name}\t{}\t{}", report.sentences, analysis::score1(Some(report.score))).unwrap();
        if a.sentences {
            for (i, s) in per_sentence.iter().enumerate() {
                let score = csseg::metrics::score_stats(s, &cfg);
                writeln!(out, "{name}\t{}\t{score:.4}", i + 1).unwrap();
            }
        }
    }

    if a.by_category || !a.select.is_empty() {
        let src = a.src.as_deref().expect("clap enforces --src");
        let cats = categories_of(src, &a.mcs_mode, refs.len())?;
        if a.by_category && !systems.is_empty() {
            let scores = analysis::eval_by_category(&systems, &refs, &cats, &cfg)?;
            out.push_str("\nsystem\tcategory\tsentences\tchrF2++\trank\n");
            for s in &scores {
                category_rows(&mut out, &format!("{}\t", s.system), &s.rows);
            }
        }
        if !a.select.is_empty() {
            let mut routing = BTreeMap::new();
            for item in &a.select {
                let (cat, file) = item
                    .split_once('=')
                    .ok_or_else(|| Error::Argument(format!("--select {item:?}: expected CAT=FILE")))?;
                let cat = SentenceCategory::parse(cat.trim())
                    .ok_or_else(|| Error::Argument(format!("--select: unknown category {cat:?}")))?;
                let path = PathBuf::from(file.trim());
                let hyps = read_lines(&path)?;
                routing.insert(cat, (path.display().to_string(), hyps));
            }
            let sel = analysis::system_selection(&routing, &refs, &cats, &cfg)?;
            out.push_str("\ncategory\tsystem\n");
            for (cat, (name, _)) in &routing {
                writeln!(out, "{cat}\t{name}").unwrap();
            }
            writeln!(out, "selection\t{}\t{}", sel.report.sentences, analysis::score1(Some(sel.report.score))).unwrap();
            out.push_str("\ncategory\tsentences\tchrF2++\trank\n");
            category_rows(&mut out, "", &sel.categories);
        }
    }
    print(&out)
}

pub fn analyze(a: AnalyzeArgs) -> Result<()> {
    let mut cfg = ExperimentConfig::load(&a.config)?;
    if let Some(seed) = a.seed {
        cfg.seed = seed;
    }
    let report = analysis::run_experiment(&cfg)?;
    let written = analysis::write_reports(&report, &a.output)?;
    for p in &written {
        log::info!("wrote {}", p.display());
    }
    print(&analysis::summary_text(&report))
}

pub fn stats(a: StatsArgs) -> Result<()> {
    let gold = corpus::load_gold(&a.gold)?;
    let entries: Vec<corpus::GoldEntry> = gold.into_iter().flat_map(|s| s.entries).collect();
    print(&corpus_stats(&entries)?.to_tsv())
}

/// Raw lines including their terminators, so a full sample is a byte copy.
fn raw_lines(bytes: &[u8]) -> Vec<&[u8]> {
    bytes.split_inclusive(|&b| b == b'\n').collect()
}

pub fn subsample(a: SubsampleArgs) -> Result<()> {
    same_count("subsample", &a.input, &a.output)?;
    let data: Vec<Vec<u8>> = a
        .input
        .iter()
        .map(|p| fs::read(p).map_err(|e| Error::io(p, e)))
        .collect::<Result<_>>()?;
    let sides: Vec<Vec<&[u8]>> = data.iter().map(|d| raw_lines(d)).collect();
    let n = sides[0].len();
    if let Some((i, s)) = sides.iter().enumerate().find(|(_, s)| s.len() != n) {
        return Err(Error::Alignment(format!(
            "{} has {} lines, {} has {n}",
            a.input[i].display(),
            s.len(),
            a.input[0].display()
        )));
    }
    let picked = corpus::subsample_indices(n, a.fraction, a.seed)?;
    log::info!("kept {} of {n} lines", picked.len());
    for (side, out) in sides.iter().zip(&a.output) {
        let bytes: Vec<u8> = picked.iter().flat_map(|&i| side[i].iter().copied()).collect();
        write_output(Some(out), &bytes)?;
    }
    Ok(())
}
