//! Report rendering. Scores and percentages print with one decimal, ratios
//! with three; a missing value prints as `-`.

use std::fmt::Write;
use std::path::{Path, PathBuf};

use super::harness::ExperimentReport;
use super::scoring::{Bin, CategoryScore};
use crate::error::{Error, Result};
use crate::metrics::PrfScores;

pub fn score1(x: Option<f64>) -> String {
    x.map_or("-".into(), |v| format!("{v:.1}"))
}

pub fn ratio3(x: Option<f64>) -> String {
    x.map_or("-".into(), |v| format!("{v:.3}"))
}

fn edge(x: f64) -> String {
    if x.is_infinite() {
        if x > 0.0 { "inf".into() } else { "-inf".into() }
    } else {
        format!("{x:.3}")
    }
}

fn f1(s: &Option<PrfScores>) -> String {
    ratio3(s.map(|s| s.f1))
}

pub fn segmentation_tsv(r: &ExperimentReport) -> Option<String> {
    let rows = r.segmentation.as_ref()?;
    let mut out = String::from("system\tEGY\tEN\tAll\tprecision\trecall\n");
    for row in rows {
        let e = &row.emma;
        writeln!(
            out,
            "{}\t{}\t{}\t{}\t{}\t{}",
            row.name,
            f1(&e.egy),
            f1(&e.en),
            ratio3(Some(e.all.f1)),
            ratio3(Some(e.all.precision)),
            ratio3(Some(e.all.recall))
        )
        .unwrap();
    }
    Some(out)
}

pub fn diagnostics_tsv(r: &ExperimentReport) -> Option<String> {
    let rows = r.segmentation.as_ref()?;
    let mut out = String::from("system\tlang\tunder\tover\tcorrect\tcorrect_seg\tcorrect_unseg\n");
    for row in rows {
        let d = &row.diagnostics;
        for (lang, c) in [("EGY", &d.egy), ("EN", &d.en), ("All", &d.all)] {
            writeln!(
                out,
                "{}\t{lang}\t{}\t{}\t{}\t{}\t{}",
                row.name,
                c.under,
                c.over,
                c.correct(),
                c.correct_seg,
                c.correct_unseg
            )
            .unwrap();
        }
    }
    Some(out)
}

pub fn curve_tsv(r: &ExperimentReport) -> Option<String> {
    if r.curve.is_empty() {
        return None;
    }
    let mut out = String::from(
        "fraction\tpipeline\ttrain_sentences\toov_src_pct\toov_tgt_pct\trichness\tmorphs_per_word_src\tmorphs_per_word_tgt\tsrc_len\ttgt_len\n",
    );
    for c in &r.curve {
        writeln!(
            out,
            "{}\t{}\t{}\t{}\t{}\t{}\t{}\t{}\t{}\t{}",
            c.fraction,
            c.pipeline,
            c.train_sentences,
            score1(c.oov_src.map(|o| o.rate)),
            score1(c.oov_tgt.map(|o| o.rate)),
            ratio3(c.richness),
            ratio3(c.morphs_per_word_src),
            ratio3(c.morphs_per_word_tgt),
            score1(c.src_len),
            score1(c.tgt_len)
        )
        .unwrap();
    }
    Some(out)
}

fn category_lines(out: &mut String, prefix: &str, rows: &[CategoryScore]) {
    for c in rows {
        writeln!(
            out,
            "{prefix}{}\t{}\t{}\t{}",
            c.row.name(),
            c.sentences,
            score1(c.score),
            c.rank.map_or("-".into(), |r| r.to_string())
        )
        .unwrap();
    }
}

pub fn categories_tsv(r: &ExperimentReport) -> Option<String> {
    if r.categories.is_empty() {
        return None;
    }
    let mut out = String::from("fraction\tsystem\tcategory\tsentences\tchrF2++\trank\n");
    for f in &r.categories {
        for s in &f.systems {
            category_lines(&mut out, &format!("{}\t{}\t", f.fraction, s.system), &s.rows);
        }
    }
    Some(out)
}

fn bin_line(out: &mut String, prefix: &str, b: &Bin) {
    writeln!(out, "{prefix}{}\t{}\t{}\t{}", edge(b.lo), edge(b.hi), b.sentences, score1(b.mean)).unwrap();
}

pub fn bins_tsv(r: &ExperimentReport) -> Option<String> {
    if r.bins.is_empty() {
        return None;
    }
    let mut out = String::from(
        "# mean sentence-level chrF2++ per half-open bin [lo, hi)\nfraction\tsystem\tfeature\tlo\thi\tsentences\tmean_chrF2++\n",
    );
    for set in &r.bins {
        for b in &set.bins {
            bin_line(&mut out, &format!("{}\t{}\t{}\t", set.fraction, set.system, set.feature), b);
        }
    }
    Some(out)
}

pub fn selection_tsv(r: &ExperimentReport) -> Option<String> {
    let s = r.selection.as_ref()?;
    let mut out = String::from("category\tsystem\n");
    for (cat, sys) in &s.routes {
        writeln!(out, "{cat}\t{sys}").unwrap();
    }
    out.push_str("\ncategory\tsentences\tchrF2++\trank\n");
    category_lines(&mut out, "", &s.categories);
    Some(out)
}

pub fn summary_text(r: &ExperimentReport) -> String {
    let mut out = String::new();
    writeln!(out, "seed {} fractions {:?} mcs-mode {}", r.seed, r.fractions, r.mcs_mode).unwrap();
    if let Some(rows) = &r.segmentation {
        for row in rows {
            writeln!(
                out,
                "EMMA {}: EGY {} EN {} All {}",
                row.name,
                f1(&row.emma.egy),
                f1(&row.emma.en),
                ratio3(Some(row.emma.all.f1))
            )
            .unwrap();
        }
    }
    for c in &r.curve {
        writeln!(
            out,
            "curve {} {}: OOV src {}% richness {}",
            c.fraction,
            c.pipeline,
            score1(c.oov_src.map(|o| o.rate)),
            ratio3(c.richness)
        )
        .unwrap();
    }
    for f in &r.categories {
        for s in &f.systems {
            let all = s.rows.first().and_then(|c| c.score);
            writeln!(out, "chrF2++ {} {}: All {}", f.fraction, s.system, score1(all)).unwrap();
        }
    }
    if let Some(s) = &r.selection {
        writeln!(out, "system selection: chrF2++ {}", score1(Some(s.report.score))).unwrap();
    }
    for n in &r.notes {
        writeln!(out, "note: {n}").unwrap();
    }
    out
}

pub fn summary_json(r: &ExperimentReport) -> String {
    let mut s = serde_json::to_string_pretty(r).expect("report serializes");
    s.push('\n');
    s
}

/// Writes every available report into `dir` and returns the written paths.
pub fn write_reports(r: &ExperimentReport, dir: &Path) -> Result<Vec<PathBuf>> {
    std::fs::create_dir_all(dir).map_err(|e| Error::io(dir, e))?;
    let files: Vec<(&str, Option<String>)> = vec![
        ("segmentation.tsv", segmentation_tsv(r)),
        ("diagnostics.tsv", diagnostics_tsv(r)),
        ("learning_curve.tsv", curve_tsv(r)),
        ("categories.tsv", categories_tsv(r)),
        ("bins.tsv", bins_tsv(r)),
        ("selection.tsv", selection_tsv(r)),
        ("summary.txt", Some(summary_text(r))),
        ("summary.json", Some(summary_json(r))),
    ];
    let mut written = Vec::new();
    for (name, body) in files {
        if let Some(body) = body {
            let path = dir.join(name);
            std::fs::write(&path, body).map_err(|e| Error::io(&path, e))?;
            written.push(path);
        }
    }
    Ok(written)
}
