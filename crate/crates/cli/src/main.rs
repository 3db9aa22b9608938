//! `csseg`: segmentation and evaluation toolkit for code-switched text.
//!
//! Exit codes: 0 success, 1 validation or format problem, 2 bad arguments,
//! 3 I/O failure. Diagnostics go to stderr, data to stdout or `--out`.

mod commands;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use csseg::Error;

#[derive(Parser, Debug)]
#[command(name = "csseg", version, about = "Subword segmentation and evaluation for code-switched text")]
struct Cli {
    /// More log output (repeatable).
    #[arg(short, long, action = clap::ArgAction::Count, global = true)]
    verbose: u8,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Clean raw text: strip markup, URLs and emoticons, split digits and
    /// punctuation, normalize Arabic letters, escape reserved characters.
    Preprocess(PreprocessArgs),
    /// Train a segmentation model, or write a rule set to a model file.
    Train(TrainArgs),
    /// Segment tokenized text with a model or pipeline manifest.
    Segment(SegmentArgs),
    /// Undo `segment`: join morphs back into words.
    Desegment(DesegmentArgs),
    /// Score predicted segmentations against gold (EMMA).
    EvalSeg(EvalSegArgs),
    /// Score translation hypotheses with chrF2++.
    EvalMt(EvalMtArgs),
    /// Run an experiment config and write its reports.
    Analyze(AnalyzeArgs),
    /// Corpus statistics of a gold file.
    Stats(StatsArgs),
    /// Seeded, order-preserving sample of aligned files.
    Subsample(SubsampleArgs),
}

#[derive(Args, Debug)]
struct PreprocessArgs {
    /// Input file; give several (with as many --out) for aligned corpora,
    /// where a line empty on any side is dropped from all.
    #[arg(long = "in", required = true)]
    input: Vec<PathBuf>,
    #[arg(long = "out", required = true)]
    output: Vec<PathBuf>,
    /// Arabic letter normalization: `alif,ya`, `alif`, `ya` or `none`.
    #[arg(long, default_value = "alif,ya")]
    normalize: String,
    #[arg(long)]
    keep_urls: bool,
    #[arg(long)]
    keep_emoticons: bool,
    /// Leave digits attached to letters.
    #[arg(long)]
    no_digit_split: bool,
    /// Markup regex to strip (repeatable; replaces the built-in patterns).
    #[arg(long)]
    markup: Vec<String>,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
enum Method {
    Bpe,
    Mdl,
    ArRules,
    EnRules,
}

#[derive(Args, Debug)]
struct TrainArgs {
    #[arg(long, value_enum)]
    method: Method,
    /// Training text, one tokenized sentence per line (repeatable; all
    /// files are pooled, e.g. both sides for joint BPE).
    #[arg(long = "in")]
    input: Vec<PathBuf>,
    #[arg(long = "out")]
    output: PathBuf,
    /// BPE vocabulary size.
    #[arg(long, default_value_t = 8000)]
    vocab: usize,
    /// BPE end-of-word marker.
    #[arg(long, default_value_t = csseg::segment::DEFAULT_MARKER)]
    marker: char,
    /// MDL finish threshold (bits per word type).
    #[arg(long = "F", default_value_t = 0.003)]
    finish_threshold: f64,
    /// MDL dampening: log, ones or none.
    #[arg(long = "d", default_value = "log")]
    dampening: String,
    /// MDL search: recursive or viterbi.
    #[arg(long = "a", default_value = "recursive")]
    algorithm: String,
    /// MDL: approximate cap on the number of morph types.
    #[arg(long)]
    cap: Option<usize>,
    #[arg(long, default_value_t = 25)]
    epochs: usize,
    /// Arabic rules scheme: atb or d3.
    #[arg(long, default_value = "atb")]
    scheme: String,
    /// Start from this rule file instead of the shipped rules.
    #[arg(long)]
    rules: Option<PathBuf>,
    #[arg(long, default_value_t = 0)]
    seed: u64,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
enum Format {
    Hash,
    Marker,
}

impl From<Format> for csseg::segment::format::OutputFormat {
    fn from(f: Format) -> Self {
        match f {
            Format::Hash => Self::Hash,
            Format::Marker => Self::Marker,
        }
    }
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
enum Translit {
    None,
    Bw,
}

#[derive(Args, Debug)]
#[group(id = "segmenter", required = true, multiple = false)]
struct SegmenterSource {
    /// A model file written by `train`.
    #[arg(long, group = "segmenter")]
    model: Option<PathBuf>,
    /// A pipeline manifest (`stage EXPR` lines).
    #[arg(long, group = "segmenter")]
    pipeline: Option<PathBuf>,
}

#[derive(Args, Debug)]
struct SegmentArgs {
    #[command(flatten)]
    source: SegmenterSource,
    /// Input (default: stdin).
    #[arg(long = "in")]
    input: Option<PathBuf>,
    /// Output (default: stdout).
    #[arg(long = "out")]
    output: Option<PathBuf>,
    #[arg(long, value_enum, default_value = "hash")]
    format: Format,
    /// Show Arabic output in Buckwalter transliteration.
    #[arg(long, value_enum, default_value = "none")]
    translit: Translit,
    /// Worker threads; output order is unchanged.
    #[arg(long, default_value_t = 1)]
    threads: usize,
}

#[derive(Args, Debug)]
struct DesegmentArgs {
    #[arg(long = "in")]
    input: Option<PathBuf>,
    #[arg(long = "out")]
    output: Option<PathBuf>,
    #[arg(long, value_enum, default_value = "marker")]
    format: Format,
}

#[derive(Args, Debug)]
struct EvalSegArgs {
    #[arg(long)]
    gold: PathBuf,
    /// Predictions in `hash` format, one gold sentence per line.
    #[arg(long, conflicts_with_all = ["model", "pipeline"])]
    pred: Option<PathBuf>,
    /// Segment the gold words with this model instead of reading --pred.
    #[arg(long, conflicts_with = "pipeline")]
    model: Option<PathBuf>,
    #[arg(long)]
    pipeline: Option<PathBuf>,
    /// Add EGY and EN rows.
    #[arg(long)]
    by_lang: bool,
    /// Add over/under-segmentation counts.
    #[arg(long)]
    diagnostics: bool,
}

#[derive(Args, Debug)]
struct EvalMtArgs {
    /// Hypothesis file (repeatable to compare and rank systems).
    #[arg(long, required_unless_present = "select")]
    hyp: Vec<PathBuf>,
    #[arg(long = "ref")]
    reference: PathBuf,
    /// Source side, needed for --by-category and --select.
    #[arg(long)]
    src: Option<PathBuf>,
    #[arg(long, requires = "src")]
    by_category: bool,
    /// Route a category to a hypothesis file, e.g. `CS=a.txt` (repeatable).
    #[arg(long, requires = "src", value_name = "CAT=FILE")]
    select: Vec<String>,
    #[arg(long, default_value = "mixed-script")]
    mcs_mode: String,
    /// Average one F-score per n-gram order instead of the reference
    /// scorer's averaged precision and recall.
    #[arg(long)]
    order_mean: bool,
    /// Print one sentence-level score per line.
    #[arg(long)]
    sentences: bool,
    #[arg(long, default_value_t = 1)]
    threads: usize,
}

#[derive(Args, Debug)]
struct AnalyzeArgs {
    #[arg(long)]
    config: PathBuf,
    /// Report directory.
    #[arg(long = "out", default_value = "reports")]
    output: PathBuf,
    /// Override the config's seed.
    #[arg(long)]
    seed: Option<u64>,
}

#[derive(Args, Debug)]
struct StatsArgs {
    #[arg(long)]
    gold: PathBuf,
}

#[derive(Args, Debug)]
struct SubsampleArgs {
    /// Input file (repeatable for aligned corpora; all must have the same
    /// number of lines).
    #[arg(long = "in", required = true)]
    input: Vec<PathBuf>,
    #[arg(long = "out", required = true)]
    output: Vec<PathBuf>,
    #[arg(long)]
    fraction: f64,
    #[arg(long, default_value_t = 0)]
    seed: u64,
}

fn exit_code(err: &Error) -> u8 {
    match err {
        Error::Io { .. } => 3,
        Error::Argument(_) => 2,
        _ => 1,
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let level = match cli.verbose {
        0 => "warn",
        1 => "info",
        _ => "debug",
    };
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or(level))
        .format_timestamp(None)
        .init();
    let result = match cli.command {
        Command::Preprocess(a) => commands::preprocess(a),
        Command::Train(a) => commands::train(a),
        Command::Segment(a) => commands::segment(a),
        Command::Desegment(a) => commands::desegment(a),
        Command::EvalSeg(a) => commands::eval_seg(a),
        Command::EvalMt(a) => commands::eval_mt(a),
        Command::Analyze(a) => commands::analyze(a),
        Command::Stats(a) => commands::stats(a),
        Command::Subsample(a) => commands::subsample(a),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("csseg: {e}");
            ExitCode::from(exit_code(&e))
        }
    }
}
