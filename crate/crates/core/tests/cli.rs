use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, Stdio};

use silmbench::formal_lang::{parse_tokens, recognize, LanguageKind, LanguageSpec};
use silmbench::metrics::{MetricReport, Provenance, Structure};
use silmbench::structures::{trivial_constituency, trivial_dependency, Branching, DependencyBaseline, HeadMatrix};
use silmbench::workbench::cli::run_with;
use silmbench::workbench::io::{read_records, write_records};
use silmbench::workbench::{CorpusRecord, MatrixEncoding, PairRecord, ScoreRecord, StructureRecord};

struct Run {
    code: i32,
    stdout: String,
    stderr: String,
}

fn cli(args: &[&str]) -> Run {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let argv = std::iter::once("silmbench").chain(args.iter().copied());
    let code = run_with(argv, &mut out, &mut err);
    Run {
        code,
        stdout: String::from_utf8(out).unwrap(),
        stderr: String::from_utf8(err).unwrap(),
    }
}

fn p(path: &Path) -> &str {
    path.to_str().unwrap()
}

fn generate(dir: &Path, lang: &str, threads: &str) -> PathBuf {
    let out = dir.join(format!("{lang}-{threads}"));
    let r = cli(&[
        "generate", "--lang", lang, "--max-depth", "7", "--max-len", "96", "--tokens", "20000", "--validation",
        "4000", "--generalization", "4000", "--seed", "7", "--threads", threads, "--out-dir", p(&out),
    ]);
    assert_eq!(r.code, 0, "{}", r.stderr);
    out
}

fn files_equal(a: &Path, b: &Path) {
    for name in ["train.jsonl", "validation.jsonl", "generalization.jsonl", "config.json"] {
        assert_eq!(fs::read(a.join(name)).unwrap(), fs::read(b.join(name)).unwrap(), "{name}");
    }
}

#[test]
fn generate_is_reproducible_across_thread_counts() {
    let dir = tempfile::tempdir().unwrap();
    let a = generate(dir.path(), "dyck-u", "1");
    let b = generate(dir.path(), "dyck-u", "4");
    files_equal(&a, &b);
    let train: Vec<CorpusRecord> = read_records(&a.join("train.jsonl")).unwrap();
    let spec = LanguageSpec::standard(LanguageKind::DyckU);
    assert!(train.iter().all(|r| r.to_sequence(&spec).is_ok()));
    let val: Vec<CorpusRecord> = read_records(&a.join("validation.jsonl")).unwrap();
    let tokens: usize = val.iter().map(|r| r.tokens.len()).sum();
    assert!((3600..=4400).contains(&tokens), "{tokens}");
    let long: Vec<CorpusRecord> = read_records(&a.join("generalization.jsonl")).unwrap();
    assert!(long.iter().all(|r| r.tokens.len() > 96 && r.tokens.len() <= 192));
}

#[test]
fn dyck_k_needs_k() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("g");
    let r = cli(&["generate", "--lang", "dyck-k", "--tokens", "100", "--out-dir", p(&out)]);
    assert_eq!(r.code, 2);
    let r = cli(&[
        "generate", "--lang", "dyck-k", "--k", "3", "--tokens", "500", "--validation", "100", "--generalization", "0",
        "--out-dir", p(&out),
    ]);
    assert_eq!(r.code, 0, "{}", r.stderr);
    let recs: Vec<CorpusRecord> = read_records(&out.join("train.jsonl")).unwrap();
    let spec = LanguageSpec::standard(LanguageKind::DyckK { k: 3 });
    assert!(recs.iter().all(|r| r.to_sequence(&spec).is_ok()));
}

#[test]
fn usage_errors_exit_2() {
    assert_eq!(cli(&["generate", "--lang", "dyck-2", "--bogus"]).code, 2);
    assert_eq!(cli(&["frobnicate"]).code, 2);
    assert_eq!(cli(&["generate", "--lang", "dyck-zz", "--out-dir", "x"]).code, 2);
    let r = cli(&["score-mp", "--benchmark", "/nonexistent/pairs.jsonl", "--scores", "/nonexistent/s.jsonl"]);
    assert_eq!(r.code, 2);
    assert!(r.stderr.contains("cannot read"), "{}", r.stderr);
    assert_eq!(cli(&["--threads", "0", "validate", "--schema", "pair", "x"]).code, 2);
    assert_eq!(cli(&["--help"]).code, 0);
}

#[test]
fn typemismatch_refused_for_dyck_1() {
    let dir = tempfile::tempdir().unwrap();
    let corpus = generate(dir.path(), "dyck-1", "2");
    let r = cli(&[
        "perturb", "--lang", "dyck-1", "--corpus", p(&corpus.join("validation.jsonl")), "--out",
        p(&dir.path().join("pairs.jsonl")), "--subtasks", "typemismatch",
    ]);
    assert_eq!(r.code, 2);
    assert!(r.stderr.contains("typemismatch is not available for dyck-1"), "{}", r.stderr);

    let r = cli(&[
        "perturb", "--lang", "dyck-1", "--corpus", p(&corpus.join("validation.jsonl")), "--out",
        p(&dir.path().join("pairs.jsonl")),
    ]);
    assert_eq!(r.code, 0, "{}", r.stderr);
    let pairs: Vec<PairRecord> = read_records(&dir.path().join("pairs.jsonl")).unwrap();
    assert!(!pairs.is_empty());
    assert!(pairs.iter().all(|p| p.subtask != "typemismatch"));
}

fn oracle_scores(pairs: &[PairRecord]) -> Vec<ScoreRecord> {
    let spec = LanguageSpec::standard(LanguageKind::DyckK { k: 64 });
    let mut out = Vec::new();
    for p in pairs {
        for (variant, toks) in [("pos", &p.pos_tokens), ("neg", &p.neg_tokens)] {
            let tokens = parse_tokens(&toks.join(" ")).unwrap();
            let score = if recognize(&spec, &tokens).is_accept() { 2.5 } else { 7.25 };
            out.push(serde_json::from_value(serde_json::json!({ "id": p.id, "variant": variant, "score": score })).unwrap());
        }
    }
    out
}

#[test]
fn benchmark_pipeline() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path();
    let corpus = generate(d, "dyck-64", "3");
    let mut pairs_files = Vec::new();
    for threads in ["1", "4"] {
        let out = d.join(format!("pairs-{threads}.jsonl"));
        let r = cli(&[
            "--threads", threads, "--seed", "5", "perturb", "--lang", "dyck-64", "--corpus",
            p(&corpus.join("train.jsonl")), "--out", p(&out), "--pairs-per-subtask", "200",
        ]);
        assert_eq!(r.code, 0, "{}", r.stderr);
        assert!(r.stdout.contains("600 pairs"), "{}", r.stdout);
        pairs_files.push(out);
    }
    assert_eq!(fs::read(&pairs_files[0]).unwrap(), fs::read(&pairs_files[1]).unwrap());

    let r = cli(&["--strict", "validate", "--schema", "pair", p(&pairs_files[0])]);
    assert_eq!(r.code, 0, "{}", r.stdout);

    let pairs: Vec<PairRecord> = read_records(&pairs_files[0]).unwrap();
    let scores = d.join("scores.jsonl");
    write_records(&scores, &oracle_scores(&pairs)).unwrap();
    let report_path = d.join("mp.json");
    let r = cli(&[
        "--json", "score-mp", "--benchmark", p(&pairs_files[0]), "--scores", p(&scores), "--out", p(&report_path),
    ]);
    assert_eq!(r.code, 0, "{}", r.stderr);
    let report: MetricReport = serde_json::from_str(&r.stdout).unwrap();
    assert_eq!(report.score("overall"), Some(100.0));
    assert!(report.scores.iter().all(|s| s.value == 100.0));
    assert_eq!(report.count("pairs"), Some(600));
    assert_eq!(report.config_hash.len(), 64);

    // missing scores are a runtime failure
    let partial = d.join("partial.jsonl");
    write_records(&partial, &oracle_scores(&pairs)[..10]).unwrap();
    let r = cli(&["score-mp", "--benchmark", p(&pairs_files[0]), "--scores", p(&partial)]);
    assert_eq!(r.code, 1);
    assert!(r.stderr.contains("missing scores"));

    let charts = d.join("charts");
    let r = cli(&["plot", "--reports", p(&report_path), "--out-dir", p(&charts)]);
    assert_eq!(r.code, 0, "{}", r.stderr);
    let csv = fs::read_to_string(charts.join("reports.csv")).unwrap();
    assert!(csv.contains("minimal_pairs,score,overall,100"));
    assert!(fs::read_to_string(charts.join("00_minimal_pairs.svg")).unwrap().starts_with("<svg"));
}

#[test]
fn strict_validation_exit_codes() {
    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("bad.jsonl");
    fs::write(&bad, "{\"id\":\"a\",\"variant\":\"pos\",\"score\":1}\n{\"id\":\"a\",\"variant\":\"neg\",\"sc").unwrap();
    let r = cli(&["validate", "--schema", "score", p(&bad)]);
    assert_eq!(r.code, 0);
    assert!(r.stdout.contains(":line 2:"), "{}", r.stdout);
    assert!(r.stdout.contains("1 of 2 records valid"));
    let r = cli(&["--strict", "validate", "--schema", "score", p(&bad)]);
    assert_eq!(r.code, 1);
    assert_eq!(cli(&["validate", "--schema", "nonsense", p(&bad)]).code, 2);

    // strict mode also fails commands that read malformed inputs
    let pairs = dir.path().join("pairs.jsonl");
    fs::write(&pairs, "{\"id\":\"p\",\"subtask\":\"x\",\"distance\":2,\"pos_tokens\":[\"a\"],\"neg_tokens\":[\"b\"]}\n").unwrap();
    let r = cli(&["--strict", "score-mp", "--benchmark", p(&pairs), "--scores", p(&bad)]);
    assert_eq!(r.code, 1);
    let r = cli(&["score-mp", "--benchmark", p(&pairs), "--scores", p(&bad)]);
    assert_eq!(r.code, 1, "neg score for p is missing once the bad line is skipped");
    assert!(r.stderr.contains("warning: skipping"));
}

fn write_structures(dir: &Path) -> (PathBuf, PathBuf, PathBuf) {
    let mut heads = Vec::new();
    let mut trees = Vec::new();
    let mut mats = Vec::new();
    for (model, shift) in [("a", 0usize), ("b", 1)] {
        for step in [1000u64, 2000, 3000] {
            let prov = Provenance::new(model, step);
            for i in 0..12 {
                let n = 4 + i % 5;
                let kind = DependencyBaseline::ALL[(i + shift + step as usize / 1000) % 4];
                let dep = trivial_dependency(n, kind);
                heads.push(StructureRecord::from_head_list(format!("s{i}"), &dep, true, true, &prov));
                let branch = Branching::ALL[(i + shift) % 2];
                let tree = trivial_constituency(n, branch).unwrap();
                trees.push(StructureRecord::from_structure(format!("s{i}"), &Structure::Tree(tree), &prov, MatrixEncoding::Dense));
            }
        }
    }
    for i in 0..5 {
        let n = 6;
        let rows = (0..n)
            .map(|r| (0..n).map(|c| if r == c { 0.0 } else { ((r * 7 + c * 3 + i) % 5) as f64 }).collect())
            .collect();
        let h = HeadMatrix::from_rows(rows, false, false).unwrap();
        mats.push(StructureRecord::from_structure(
            format!("s{i}"),
            &Structure::HeadMatrix(h),
            &Provenance::new("m", 0),
            MatrixEncoding::TopM(3),
        ));
    }
    let paths = (dir.join("heads.jsonl"), dir.join("trees.jsonl.gz"), dir.join("mats.jsonl"));
    write_records(&paths.0, &heads).unwrap();
    write_records(&paths.1, &trees).unwrap();
    write_records(&paths.2, &mats).unwrap();
    (paths.0, paths.1, paths.2)
}

#[test]
fn structure_metrics() {
    let dir = tempfile::tempdir().unwrap();
    let (heads, trees, mats) = write_structures(dir.path());
    for f in [&heads, &trees, &mats] {
        let r = cli(&["--strict", "validate", "--schema", "structure", p(f)]);
        assert_eq!(r.code, 0, "{}", r.stdout);
    }

    let mut outputs = Vec::new();
    for threads in ["1", "3"] {
        let mut all = String::new();
        for metric in ["consistency", "triviality", "evolution"] {
            for f in [&heads, &trees] {
                let r = cli(&["--json", "--threads", threads, "eval-struct", "--metric", metric, "--structures", p(f)]);
                assert_eq!(r.code, 0, "{metric}: {}", r.stderr);
                all.push_str(&r.stdout);
            }
        }
        outputs.push(all);
    }
    assert_eq!(outputs[0], outputs[1]);

    let r = cli(&["--json", "eval-struct", "--metric", "triviality", "--structures", p(&heads)]);
    let reports: Vec<MetricReport> = serde_json::from_str(&r.stdout).unwrap();
    assert_eq!(reports.len(), 6);
    assert!(reports.iter().all(|r| r.metric == "triviality" && r.score("first").is_some()));

    let out = dir.path().join("evo.json");
    let r = cli(&["eval-struct", "--metric", "evolution", "--structures", p(&trees), "--out", p(&out)]);
    assert_eq!(r.code, 0);
    let reports: Vec<MetricReport> = serde_json::from_str(&fs::read_to_string(&out).unwrap()).unwrap();
    assert_eq!(reports.len(), 2);
    assert_eq!(reports[0].count("checkpoints"), Some(3));

    let r = cli(&["eval-struct", "--metric", "consistency", "--structures", p(&mats)]);
    assert_eq!(r.code, 2, "a single model cannot be compared");
    let r = cli(&["eval-struct", "--metric", "gold", "--structures", p(&heads)]);
    assert_eq!(r.code, 2);

    let r = cli(&["--json", "diagnose", "--structures", p(&mats)]);
    assert_eq!(r.code, 0, "{}", r.stderr);
    let report: MetricReport = serde_json::from_str(&r.stdout).unwrap();
    assert_eq!(report.count("matrices"), Some(5));
}

#[test]
fn gold_similarity_against_corpus() {
    let dir = tempfile::tempdir().unwrap();
    let corpus = generate(dir.path(), "dyck-2", "2");
    let recs: Vec<CorpusRecord> = read_records(&corpus.join("validation.jsonl")).unwrap();
    let prov = Provenance::new("gold-copy", 0);
    let mut structures = Vec::new();
    for r in &recs {
        let seq = r.to_gold_sequence().unwrap();
        structures.push(StructureRecord::from_structure(&r.id, &Structure::Tree(seq.gold_tree), &prov, MatrixEncoding::Dense));
    }
    let path = dir.path().join("gold-trees.jsonl");
    write_records(&path, &structures).unwrap();
    let r = cli(&[
        "--json", "eval-struct", "--metric", "gold", "--structures", p(&path), "--corpus",
        p(&corpus.join("validation.jsonl")),
    ]);
    assert_eq!(r.code, 0, "{}", r.stderr);
    let report: MetricReport = serde_json::from_str(&r.stdout).unwrap();
    assert_eq!(report.score("f"), Some(100.0));
}

#[test]
fn binary_exit_codes() {
    let bin = env!("CARGO_BIN_EXE_silmbench");
    let status = Command::new(bin).args(["validate", "--schema", "pair", "/nonexistent.jsonl"]).stderr(Stdio::null()).status().unwrap();
    assert_eq!(status.code(), Some(2));
    let status = Command::new(bin).arg("--version").stdout(Stdio::null()).status().unwrap();
    assert_eq!(status.code(), Some(0));
}
