use std::fs;
use std::io::Write;
use std::path::Path;
use std::process::{Command, Output, Stdio};

use tempfile::TempDir;

fn csseg(args: &[&str], dir: &Path) -> Output {
    Command::new(env!("CARGO_BIN_EXE_csseg"))
        .args(args)
        .current_dir(dir)
        .output()
        .expect("binary runs")
}

fn csseg_stdin(args: &[&str], dir: &Path, input: &[u8]) -> Output {
    let mut child = Command::new(env!("CARGO_BIN_EXE_csseg"))
        .args(args)
        .current_dir(dir)
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .expect("binary runs");
    child.stdin.take().unwrap().write_all(input).unwrap();
    child.wait_with_output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn ok(o: &Output) {
    assert_eq!(
        o.status.code(),
        Some(0),
        "stderr: {}",
        String::from_utf8_lossy(&o.stderr)
    );
}

const RAW: &str = "بصراحة it depends\n<b>Cars</b> went :) http://example.com 12abc\n\nوالكتب walking #1\n";
const ROUTED: &str = "stage route(arabic=atb, latin=en, default=identity)\n";

fn setup() -> TempDir {
    let dir = TempDir::new().unwrap();
    fs::write(dir.path().join("raw.txt"), RAW).unwrap();
    fs::write(dir.path().join("routed.manifest"), ROUTED).unwrap();
    fs::write(dir.path().join("atb.manifest"), "stage atb\n").unwrap();
    dir
}

#[test]
fn atb_pipeline_on_the_running_example() {
    let dir = setup();
    let o = csseg_stdin(
        &["segment", "--pipeline", "atb.manifest", "--format", "hash", "--translit", "bw"],
        dir.path(),
        "بصراحة\n".as_bytes(),
    );
    ok(&o);
    assert_eq!(stdout(&o), "b#SrAHp\n");
}

#[test]
fn marker_round_trip_is_byte_exact() {
    let dir = setup();
    ok(&csseg(&["preprocess", "--in", "raw.txt", "--out", "pp.txt"], dir.path()));
    let pp = fs::read(dir.path().join("pp.txt")).unwrap();
    assert!(!pp.is_empty());
    ok(&csseg(
        &["segment", "--pipeline", "routed.manifest", "--in", "pp.txt", "--out", "seg.txt", "--format", "marker"],
        dir.path(),
    ));
    let seg = fs::read_to_string(dir.path().join("seg.txt")).unwrap();
    assert!(seg.contains("@@"), "{seg}");
    ok(&csseg(
        &["desegment", "--in", "seg.txt", "--out", "back.txt", "--format", "marker"],
        dir.path(),
    ));
    assert_eq!(fs::read(dir.path().join("back.txt")).unwrap(), pp);
}

#[test]
fn threads_do_not_change_output() {
    let dir = setup();
    let lines: String = (0..200).map(|i| format!("cars {i} والكتب walking\n")).collect();
    fs::write(dir.path().join("many.txt"), lines).unwrap();
    let run = |threads: &str| {
        let o = csseg(
            &["segment", "--pipeline", "routed.manifest", "--in", "many.txt", "--threads", threads],
            dir.path(),
        );
        ok(&o);
        o.stdout
    };
    assert_eq!(run("1"), run("4"));
}

#[test]
fn eval_seg_perfect_prediction() {
    let dir = setup();
    let gold = "depends\tdepend#s\nwent\twent\n\nبصراحة\tب#صراحة\n";
    fs::write(dir.path().join("gold.tsv"), gold).unwrap();
    fs::write(dir.path().join("pred.txt"), "depend#s went\nب#صراحة\n").unwrap();
    let o = csseg(&["eval-seg", "--gold", "gold.tsv", "--pred", "pred.txt", "--by-lang"], dir.path());
    ok(&o);
    let out = stdout(&o);
    assert!(out.lines().any(|l| l.starts_with("All\t") && l.ends_with("\t1.000")), "{out}");
    assert_eq!(out.lines().count(), 4);
}

#[test]
fn eval_seg_misaligned_prediction_fails() {
    let dir = setup();
    fs::write(dir.path().join("gold.tsv"), "cats\tcat#s\n").unwrap();
    fs::write(dir.path().join("pred.txt"), "cat#s dogs\n").unwrap();
    let o = csseg(&["eval-seg", "--gold", "gold.tsv", "--pred", "pred.txt"], dir.path());
    assert_eq!(o.status.code(), Some(1));
    assert!(o.stdout.is_empty());
}

#[test]
fn subsample_full_fraction_is_a_byte_copy() {
    let dir = setup();
    let data = b"one\r\ntwo\n\nfour without newline";
    fs::write(dir.path().join("in.txt"), data).unwrap();
    ok(&csseg(&["subsample", "--in", "in.txt", "--out", "out.txt", "--fraction", "1.0"], dir.path()));
    assert_eq!(fs::read(dir.path().join("out.txt")).unwrap(), data);
}

#[test]
fn subsample_keeps_sides_aligned() {
    let dir = setup();
    let src: String = (0..40).map(|i| format!("s{i}\n")).collect();
    let tgt: String = (0..40).map(|i| format!("t{i}\n")).collect();
    fs::write(dir.path().join("a"), src).unwrap();
    fs::write(dir.path().join("b"), tgt).unwrap();
    let args = ["subsample", "--in", "a", "--in", "b", "--out", "a1", "--out", "b1", "--fraction", "0.25", "--seed", "5"];
    ok(&csseg(&args, dir.path()));
    let a1 = fs::read_to_string(dir.path().join("a1")).unwrap();
    let b1 = fs::read_to_string(dir.path().join("b1")).unwrap();
    assert_eq!(a1.lines().count(), 10);
    for (x, y) in a1.lines().zip(b1.lines()) {
        assert_eq!(&x[1..], &y[1..]);
    }
    let first = a1.clone();
    ok(&csseg(&args, dir.path()));
    assert_eq!(fs::read_to_string(dir.path().join("a1")).unwrap(), first);
}

#[test]
fn bpe_training_is_deterministic() {
    let dir = setup();
    fs::write(dir.path().join("train.txt"), "lower lowest newer newest wider\nlow new wide\n").unwrap();
    for out in ["m1", "m2"] {
        ok(&csseg(&["train", "--method", "bpe", "--in", "train.txt", "--out", out, "--vocab", "30"], dir.path()));
    }
    let m1 = fs::read(dir.path().join("m1")).unwrap();
    assert_eq!(m1, fs::read(dir.path().join("m2")).unwrap());
    let o = csseg_stdin(&["segment", "--model", "m1", "--format", "marker"], dir.path(), b"lowest newer\n");
    ok(&o);
    let d = csseg_stdin(&["desegment"], dir.path(), &o.stdout);
    assert_eq!(stdout(&d), "lowest newer\n");
}

#[test]
fn mdl_training_finds_the_shared_suffix() {
    let dir = setup();
    fs::write(dir.path().join("train.txt"), "doing walking do walk\ndoing walking do walk\ndoing walking\n").unwrap();
    ok(&csseg(&["train", "--method", "mdl", "--in", "train.txt", "--out", "mdl.model", "--d", "ones"], dir.path()));
    let o = csseg_stdin(&["segment", "--model", "mdl.model"], dir.path(), b"doing walking\n");
    ok(&o);
    assert_eq!(stdout(&o), "do#ing walk#ing\n");
}

#[test]
fn english_rules_model_file() {
    let dir = setup();
    ok(&csseg(&["train", "--method", "en-rules", "--out", "en.model"], dir.path()));
    let o = csseg_stdin(&["segment", "--model", "en.model"], dir.path(), b"cars churches went caring monkies\n");
    ok(&o);
    assert_eq!(stdout(&o), "car#s church#es went car#ing monki#es\n");
}

#[test]
fn stats_prints_a_table() {
    let dir = setup();
    fs::write(dir.path().join("gold.tsv"), "cars\tcar#s\nwent\twent\n").unwrap();
    let o = csseg(&["stats", "--gold", "gold.tsv"], dir.path());
    ok(&o);
    let out = stdout(&o);
    assert!(out.contains("morphs_per_word\t-\t1.500\t1.500"), "{out}");
}

#[test]
fn eval_mt_identical_hypothesis_scores_100() {
    let dir = setup();
    fs::write(dir.path().join("ref.txt"), "the cat sat\nhello there\n").unwrap();
    fs::write(dir.path().join("src.txt"), "بصراحة cat\nhi\n").unwrap();
    let o = csseg(
        &["eval-mt", "--hyp", "ref.txt", "--ref", "ref.txt", "--by-category", "--src", "src.txt"],
        dir.path(),
    );
    ok(&o);
    let out = stdout(&o);
    assert!(out.contains("ref.txt\t2\t100.0"), "{out}");
    assert!(out.contains("ref.txt\tCS\t1\t100.0"), "{out}");
}

#[test]
fn eval_mt_selection_with_one_system_matches_plain_score() {
    let dir = setup();
    fs::write(dir.path().join("ref.txt"), "the cat sat\nhello there\nok\n").unwrap();
    fs::write(dir.path().join("hyp.txt"), "a cat sat\nhello\nok then\n").unwrap();
    fs::write(dir.path().join("src.txt"), "بصراحة cat\nhi\nوالله\n").unwrap();
    let mut args = vec!["eval-mt", "--hyp", "hyp.txt", "--ref", "ref.txt", "--src", "src.txt"];
    for sel in ["EGY=hyp.txt", "EN=hyp.txt", "CS=hyp.txt", "UNDETERMINED=hyp.txt"] {
        args.extend(["--select", sel]);
    }
    let o = csseg(&args, dir.path());
    ok(&o);
    let out = stdout(&o);
    let plain = out.lines().find(|l| l.starts_with("hyp.txt\t")).unwrap();
    let sel = out.lines().find(|l| l.starts_with("selection\t")).unwrap();
    assert_eq!(plain.split('\t').next_back(), sel.split('\t').next_back());
}

#[test]
fn analyze_writes_reports() {
    let dir = setup();
    let p = dir.path();
    fs::write(p.join("train.src"), "والكتب walking\nبصراحة cars\nالكتاب went\n").unwrap();
    fs::write(p.join("train.tgt"), "and the books walking\nhonestly cars\nthe book went\n").unwrap();
    fs::write(p.join("dev.src"), "الكتب cars\n").unwrap();
    fs::write(p.join("dev.tgt"), "the books cars\n").unwrap();
    fs::write(p.join("gold.tsv"), "cars\tcar#s\nالكتب\tال#كتب\n").unwrap();
    fs::write(
        p.join("exp.cfg"),
        "train_src = train.src\ntrain_tgt = train.tgt\ndev_src = dev.src\ndev_tgt = dev.tgt\n\
         gold = gold.tsv\nfractions = 0.5, 1.0\nseed = 3\npipeline d3 = d3\n\
         pipeline bpe = bpe(vocab=40, data=joint)\n",
    )
    .unwrap();
    let o = csseg(&["analyze", "--config", "exp.cfg", "--out", "reports"], p);
    ok(&o);
    for f in ["segmentation.tsv", "learning_curve.tsv", "summary.json"] {
        assert!(p.join("reports").join(f).exists(), "{f} missing");
    }
    let first = fs::read(p.join("reports/learning_curve.tsv")).unwrap();
    ok(&csseg(&["analyze", "--config", "exp.cfg", "--out", "again"], p));
    assert_eq!(fs::read(p.join("again/learning_curve.tsv")).unwrap(), first);
}

#[test]
fn exit_codes() {
    let dir = setup();
    let p = dir.path();
    assert_eq!(csseg(&["segment", "--no-such-flag"], p).status.code(), Some(2));
    assert_eq!(csseg(&["subsample", "--in", "raw.txt", "--out", "x", "--fraction", "1.5"], p).status.code(), Some(2));
    let missing = csseg(&["stats", "--gold", "nope.tsv"], p);
    assert_eq!(missing.status.code(), Some(3));
    assert!(missing.stdout.is_empty());
    assert!(!missing.stderr.is_empty());
    fs::write(p.join("bad.tsv"), "cat\tdo#g\n").unwrap();
    assert_eq!(csseg(&["stats", "--gold", "bad.tsv"], p).status.code(), Some(1));
    fs::write(p.join("bad.model"), "bpe v9\n").unwrap();
    assert_eq!(csseg_stdin(&["segment", "--model", "bad.model"], p, b"x\n").status.code(), Some(1));
    fs::write(p.join("bad.cfg"), "colour = blue\n").unwrap();
    assert_eq!(csseg(&["analyze", "--config", "bad.cfg"], p).status.code(), Some(1));
}
